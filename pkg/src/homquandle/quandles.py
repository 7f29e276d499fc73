"""Finite quandles as operation tables, and the triplet construction.

``op[x, y]`` is ``x * y``; the right translation ``S_y`` is column ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import (
    HomQuandleError,
    InvariantBreach,
    NotAQuandle,
    NotHomogeneous,
    StabilizerNotFixed,
    TooLarge,
    TripletInvalid,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    CosetSpace,
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    automorphism_from_conjugation,
    fix_subgroup,
    group_from_permutations,
    right_cosets,
    trivial_subgroup,
)

AUT_CAP = 16
# constructors re-run the full axiom check up to this order
AXIOM_CHECK_LIMIT = 256


@dataclass
class AxiomReport:
    """Every violation of the three quandle axioms, with witnesses.

    ``idempotence``: x with x*x != x.  ``bijectivity``: (y, x1, x2) where
    column y sends x1 and x2 to the same element (least such pair).
    ``distributivity``: (x, y, z) with (x*y)*z != (x*z)*(y*z).
    """

    order: int
    idempotence: list = field(default_factory=list)
    bijectivity: list = field(default_factory=list)
    distributivity: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.idempotence or self.bijectivity or self.distributivity)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid quandle"
        parts = []
        if self.idempotence:
            parts.append(f"{len(self.idempotence)} idempotence (first x={self.idempotence[0]})")
        if self.bijectivity:
            parts.append(f"{len(self.bijectivity)} non-bijective columns "
                         f"(first {self.bijectivity[0]})")
        if self.distributivity:
            parts.append(f"{len(self.distributivity)} distributivity "
                         f"(first {self.distributivity[0]})")
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "order": self.order,
            "idempotence": [int(x) for x in self.idempotence],
            "bijectivity": [[int(v) for v in t] for t in self.bijectivity],
            "distributivity": [[int(v) for v in t] for t in self.distributivity],
        }


def _check_table(table) -> np.ndarray:
    op = np.asarray(table)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] == 0:
        raise HomQuandleError("operation table must be a non-empty square array")
    op = op.astype(np.int64)
    if op.min() < 0 or op.max() >= op.shape[0]:
        raise HomQuandleError(f"table entries must lie in 0..{op.shape[0] - 1}")
    return op


def check_quandle_axioms(table) -> AxiomReport:
    op = _check_table(table)
    n = op.shape[0]
    ar = np.arange(n)
    rep = AxiomReport(n)
    rep.idempotence = np.flatnonzero(op[ar, ar] != ar).tolist()
    for y in range(n):
        col = op[:, y]
        if len(np.unique(col)) != n:
            first = {}
            for x in range(n):
                v = int(col[x])
                if v in first:
                    rep.bijectivity.append((y, first[v], x))
                    break
                first[v] = x
    # (x*y)*z vs (x*z)*(y*z), chunked over x
    block = max(1, 4_000_000 // (n * n))
    for start in range(0, n, block):
        xs = np.arange(start, min(n, start + block))
        lhs = op[op[xs][:, :, None], ar[None, None, :]]
        rhs = op[op[xs][:, None, :], op[None, :, :]]
        for i, y, z in np.argwhere(lhs != rhs):
            rep.distributivity.append((int(xs[i]), int(y), int(z)))
    return rep


@dataclass(frozen=True, eq=False)
class FiniteQuandle:
    op: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.op.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{self.name or 'FiniteQuandle'} of order {self.order}>"

    def __call__(self, x: int, y: int) -> int:
        return int(self.op[x, y])

    def __eq__(self, other) -> bool:
        # table equality under the identity labeling
        return isinstance(other, FiniteQuandle) and np.array_equal(self.op, other.op)

    __hash__ = object.__hash__

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def right_translation(self, y: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.op[:, y])


def make_quandle(table, labels=None, name: str = "", validate: bool | None = None) -> FiniteQuandle:
    """Wrap an operation table, checking the axioms (always, unless ``validate=False``).

    ``validate=None`` checks only up to ``AXIOM_CHECK_LIMIT``; used by the
    constructors whose outputs are quandles by construction.
    """
    op = _check_table(table)
    if validate is None:
        validate = op.shape[0] <= AXIOM_CHECK_LIMIT
    if validate:
        report = check_quandle_axioms(op)
        if not report.ok:
            raise NotAQuandle(report)
    op.setflags(write=False)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
    return FiniteQuandle(op, labels, name)


def trivial_quandle(n: int) -> FiniteQuandle:
    return make_quandle(np.tile(np.arange(n)[:, None], (1, n)), name=f"T{n}")


def dihedral_quandle(n: int) -> FiniteQuandle:
    """``R_n``: ``a * b = 2b - a mod n``."""
    ar = np.arange(n)
    return make_quandle((2 * ar[None, :] - ar[:, None]) % n, name=f"R{n}")


def conj_quandle(G: FiniteGroup, validate: bool | None = None) -> FiniteQuandle:
    """``g * h = h^-1 g h``."""
    op = G.mul[G.inv[None, :], G.mul]
    return make_quandle(op, labels=G.labels, name=f"Conj({G.name or 'G'})", validate=validate)


def core_quandle(G: FiniteGroup) -> FiniteQuandle:
    """``g * h = h g^-1 h``."""
    ar = np.arange(G.order)
    h_ginv = G.mul[ar[None, :], G.inv[:, None]]
    return make_quandle(G.mul[h_ginv, ar[None, :]], labels=G.labels,
                        name=f"Core({G.name or 'G'})")


def subquandle(X: FiniteQuandle, elements) -> tuple[FiniteQuandle, tuple[int, ...]]:
    """Restrict X to a subset closed under ``*``; returns the quandle and the
    inclusion (new index -> old index)."""
    elems = tuple(sorted(set(int(e) for e in elements)))
    pos = {e: i for i, e in enumerate(elems)}
    sub = X.op[np.ix_(elems, elems)]
    try:
        table = [[pos[int(v)] for v in row] for row in sub]
    except KeyError:
        raise HomQuandleError("subset is not closed under the quandle operation") from None
    labels = [X.label(e) for e in elems] if X.labels is not None else None
    return make_quandle(table, labels=labels, name=f"sub({X.name})"), elems


# ---------------------------------------------------------------------------
# triplets

@dataclass(frozen=True, eq=False)
class QuandleTriplet:
    """``(G, H, sigma)`` with ``H`` inside ``Fix(sigma)``."""

    G: FiniteGroup
    H: Subgroup
    sigma: GroupAutomorphism

    def __post_init__(self):
        if self.H.group is not self.G or self.sigma.group is not self.G:
            raise TripletInvalid("subgroup and automorphism must belong to G")
        moved = [h for h in self.H.members if self.sigma(h) != h]
        if moved:
            raise TripletInvalid(f"H is not contained in Fix(sigma): sigma moves {moved[0]}")

    def fix(self) -> Subgroup:
        return fix_subgroup(self.sigma)

    def fix_equals_h(self) -> bool:
        return self.fix().members == self.H.members


def triplet_quandle(T: QuandleTriplet) -> tuple[FiniteQuandle, CosetSpace]:
    """``Hg * Hk = H sigma(g k^-1) k`` on the right cosets."""
    G, sigma = T.G, T.sigma.image
    cs = right_cosets(G, T.H)
    # full G x G table, then check it only depends on the cosets
    full = cs.coset_of[G.mul[sigma[G.mul[:, G.inv]], np.arange(G.order)[None, :]]]
    reps = np.array(cs.reps)
    op = full[np.ix_(reps, reps)]
    if not np.array_equal(full, op[cs.coset_of[:, None], cs.coset_of[None, :]]):
        raise InvariantBreach("triplet operation depends on coset representatives")
    labels = [cs.label(c) for c in range(len(cs))]
    Q = make_quandle(op, labels=labels, name=f"Q({G.name or 'G'},H,sigma)")
    return Q, cs


def alexander_quandle(G: FiniteGroup, sigma: GroupAutomorphism) -> FiniteQuandle:
    """``g * h = sigma(g h^-1) h``, i.e. the triplet quandle with trivial H."""
    Q, _ = triplet_quandle(QuandleTriplet(G, trivial_subgroup(G), sigma))
    return make_quandle(Q.op, labels=G.labels, name=f"Alex({G.name or 'G'})", validate=False)


# ---------------------------------------------------------------------------
# maps

@dataclass(frozen=True, eq=False)
class QuandleMap:
    source: FiniteQuandle
    target: FiniteQuandle
    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int64)
        if img.shape != (self.source.order,):
            raise HomQuandleError("map must assign an image to every source element")
        if img.size and (img.min() < 0 or img.max() >= self.target.order):
            raise HomQuandleError("map image out of range")
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, x: int) -> int:
        return int(self.image[x])


@dataclass(frozen=True)
class MapCheck:
    """Outcome of a map check.  ``kind`` is None when ``ok``, otherwise
    ``"not_homomorphism"`` (pair (x, y) with f(x*y) != f(x)*f(y)) or
    ``"collision"`` (pair i < j with f(i) == f(j))."""

    ok: bool
    kind: str | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def homomorphism_counterexample(f: QuandleMap):
    img = f.image
    lhs = img[f.source.op]
    rhs = f.target.op[img[:, None], img[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return None


def least_collision(image) -> tuple[int, int] | None:
    """Lexicographically least ``(i, j)``, ``i < j``, with equal images."""
    first = {}
    best = None
    for j, v in enumerate(np.asarray(image).tolist()):
        if v in first:
            i = first[v]
            if best is None or (i, j) < best:
                best = (i, j)
        else:
            first[v] = j
    return best


def is_homomorphism(f: QuandleMap) -> MapCheck:
    bad = homomorphism_counterexample(f)
    if bad is not None:
        return MapCheck(False, "not_homomorphism", bad)
    return MapCheck(True)


def is_embedding(f: QuandleMap) -> MapCheck:
    hom = is_homomorphism(f)
    if not hom:
        return hom
    pair = least_collision(f.image)
    if pair is not None:
        return MapCheck(False, "collision", pair)
    return MapCheck(True)


def is_isomorphism(f: QuandleMap) -> MapCheck:
    check = is_embedding(f)
    if check and f.source.order != f.target.order:
        return MapCheck(False, "not_surjective", None)
    return check


# ---------------------------------------------------------------------------
# automorphisms and isomorphisms

def _column_profile(X: FiniteQuandle) -> list:
    # isomorphisms conjugate S_y to S_f(y): cycle type is an invariant
    n = X.order
    prof = []
    for y in range(n):
        col = X.op[:, y]
        seen, lengths = [False] * n, []
        for s in range(n):
            if not seen[s]:
                k, x = 0, s
                while not seen[x]:
                    seen[x] = True
                    x = int(col[x])
                    k += 1
                lengths.append(k)
        row_fixed = int(np.sum(X.op[y, :] == y))
        prof.append((tuple(sorted(lengths)), row_fixed))
    return prof


def iter_isomorphisms(X: FiniteQuandle, Y: FiniteQuandle, cap: int = AUT_CAP) -> Iterator[tuple]:
    """All quandle isomorphisms X -> Y as image tuples, lexicographic order.

    Backtracking on the least unassigned element; every assignment is
    propagated through ``f(a*b) = f(a)*f(b)`` before branching further.
    """
    n = X.order
    if max(n, Y.order) > cap:
        raise TooLarge(f"quandle order {max(n, Y.order)} exceeds the search cap {cap}")
    if Y.order != n:
        return
    xo, yo = X.op.tolist(), Y.op.tolist()
    px, py = _column_profile(X), _column_profile(Y)
    if sorted(px) != sorted(py):
        return
    f, finv = [-1] * n, [-1] * n
    trail: list[int] = []

    def propagate(a0, b0) -> bool:
        stack = [(a0, b0)]
        while stack:
            a, b = stack.pop()
            if f[a] >= 0:
                if f[a] != b:
                    return False
                continue
            if finv[b] >= 0 or px[a] != py[b]:
                return False
            f[a], finv[b] = b, a
            trail.append(a)
            for c in trail:
                fc = f[c]
                stack.append((xo[a][c], yo[b][fc]))
                stack.append((xo[c][a], yo[fc][b]))
        return True

    def undo(mark):
        while len(trail) > mark:
            a = trail.pop()
            finv[f[a]] = -1
            f[a] = -1

    def search():
        try:
            x = f.index(-1)
        except ValueError:
            yield tuple(f)
            return
        for v in range(n):
            if finv[v] >= 0:
                continue
            mark = len(trail)
            if propagate(x, v):
                yield from search()
            undo(mark)

    yield from search()


def find_isomorphism(X: FiniteQuandle, Y: FiniteQuandle, cap: int = AUT_CAP) -> QuandleMap | None:
    for img in iter_isomorphisms(X, Y, cap):
        return QuandleMap(X, Y, np.array(img))
    return None


def automorphisms(X: FiniteQuandle, cap: int = AUT_CAP,
                  group_cap: int = DEFAULT_ORDER_CAP) -> list[tuple]:
    out = []
    for img in iter_isomorphisms(X, X, cap):
        out.append(img)
        if len(out) > group_cap:
            raise TooLarge(f"Aut(X) has more than {group_cap} elements")
    return out


def _generating_subset(perms: list[tuple]) -> list[tuple]:
    gens: list[tuple] = []
    closure = {tuple(range(len(perms[0])))} if perms else set()
    for p in perms:
        if p in closure:
            continue
        gens.append(p)
        frontier = list(closure)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[i] for i in x)
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def automorphism_group(X: FiniteQuandle, cap: int = AUT_CAP,
                       group_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``Aut(X, *)`` as a permutation group on the elements of X."""
    perms = automorphisms(X, cap, group_cap)
    G = group_from_permutations(X.order, _generating_subset(perms), cap=group_cap,
                                name=f"Aut({X.name or 'X'})")
    if G.order != len(perms):
        raise InvariantBreach("automorphism closure disagrees with the enumeration")
    return G


def inner_group(X: FiniteQuandle) -> FiniteGroup:
    """Group generated by the right translations ``S_y``."""
    gens = []
    for y in range(X.order):
        s = X.right_translation(y)
        if s not in gens:
            gens.append(s)
    return group_from_permutations(X.order, gens, name=f"Inn({X.name or 'X'})")


def _orbits(n: int, perms) -> list[tuple[int, ...]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for x in range(n):
            ra, rb = find(x), find(p[x])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(g) for g in groups.values())


@dataclass(frozen=True)
class Homogeneity:
    homogeneous: bool
    orbits: list

    def __bool__(self) -> bool:
        return self.homogeneous


def is_homogeneous(X: FiniteQuandle, cap: int = AUT_CAP) -> Homogeneity:
    perms = automorphisms(X, cap)
    orbits = _orbits(X.order, perms)
    return Homogeneity(len(orbits) == 1, orbits)


def joyce_triplet(X: FiniteQuandle, x0: int = 0, cap: int = AUT_CAP) -> tuple[QuandleTriplet, QuandleMap]:
    """Realize a homogeneous X as ``Q(Aut(X), Stab(x0), Ad(S_x0))``.

    Returns the triplet and the isomorphism ``Hg -> x0 . g`` from the
    triplet quandle onto X (checked to be a bijective homomorphism).
    """
    if not 0 <= x0 < X.order:
        raise IndexError(f"basepoint {x0} out of range")
    A = automorphism_group(X, cap)
    if len(_orbits(X.order, A.coords)) != 1:
        raise NotHomogeneous("Aut(X) does not act transitively")
    perms = A.coords
    H = Subgroup(A, tuple(i for i, p in enumerate(perms) if p[x0] == x0))
    s = A.index(X.right_translation(x0))
    sigma = automorphism_from_conjugation(A, s)
    try:
        T = QuandleTriplet(A, H, sigma)
    except TripletInvalid as exc:
        raise StabilizerNotFixed(str(exc)) from exc
    Q, cs = triplet_quandle(T)
    f = QuandleMap(Q, X, np.array([perms[g][x0] for g in cs.reps]))
    if not is_isomorphism(f):
        raise InvariantBreach("Joyce map is not a quandle isomorphism")
    return T, f
