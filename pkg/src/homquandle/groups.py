"""Finite groups as dense multiplication tables.

Elements are the indices ``0..order-1``.  Everything downstream (cosets,
quandle tables, embedding checks) works on these indices, so tables are
plain integer numpy arrays and most checks are vectorized.

Permutation groups use the "left to right" product: ``(a*b)[x] = b[a[x]]``,
i.e. apply ``a`` first.  That is the convention under which ``x0 . g``
(the image of a point under ``g``) is a right action, matching the right
cosets ``Hg`` used throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadModulus,
    ClosureTooLarge,
    HomQuandleError,
    NoIdentity,
    NoInverse,
    NotABijection,
    NotAnAutomorphism,
    NotASubgroup,
    NotAssociative,
)

DEFAULT_ORDER_CAP = 10080
# exhaustive associativity re-check for internally built groups up to this order
ASSOC_CHECK_LIMIT = 200


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``coords`` optionally carries a structured name for every element (a
    permutation tuple, a pair ``(g, t)`` for semidirect products, ...);
    ``labels`` are the printable versions.
    """

    mul: np.ndarray
    identity: int
    inv: np.ndarray
    labels: tuple[str, ...] | None = None
    coords: tuple | None = None
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        name = self.name or "FiniteGroup"
        return f"<{name} of order {self.order}>"

    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def product(self, *elems: int) -> int:
        out = self.identity
        for x in elems:
            out = int(self.mul[out, x])
        return out

    def conj(self, g: int, h: int) -> int:
        """``h^-1 g h``."""
        return int(self.mul[self.inv[h], self.mul[g, h]])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @cached_property
    def _coord_index(self) -> dict:
        if self.coords is None:
            return {}
        return {c: i for i, c in enumerate(self.coords)}

    def index(self, coord) -> int:
        """Element index for a structured coordinate (or a label)."""
        if isinstance(coord, list):
            coord = tuple(coord)
        if coord in self._coord_index:
            return self._coord_index[coord]
        if self.labels is not None and coord in self.labels:
            return self.labels.index(coord)
        raise KeyError(f"no element {coord!r} in {self!r}")

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.mul[x, a])
            k += 1
        return k


def _check_square(table) -> np.ndarray:
    mul = np.asarray(table)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise HomQuandleError("multiplication table must be a non-empty square array")
    if not np.issubdtype(mul.dtype, np.integer):
        if not np.all(np.equal(np.mod(mul, 1), 0)):
            raise HomQuandleError("multiplication table entries must be integers")
    mul = mul.astype(np.int64)
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise HomQuandleError(f"table entries must lie in 0..{n - 1}")
    return mul


def find_associativity_violation(mul: np.ndarray):
    """First ``(a, b, c)`` in lexicographic order with ``(ab)c != a(bc)``, or None."""
    n = mul.shape[0]
    block = max(1, 4_000_000 // (n * n))
    for start in range(0, n, block):
        rows = np.arange(start, min(n, start + block))
        lhs = mul[mul[rows]]
        rhs = mul[rows[:, None, None], mul[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, b, c = bad[0]
            return int(rows[i]), int(b), int(c)
    return None


def _identity_and_inverse(mul: np.ndarray, identity_hint: int | None = None):
    n = mul.shape[0]
    ar = np.arange(n)
    candidates = range(n) if identity_hint is None else [identity_hint]
    identity = None
    for e in candidates:
        if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar):
            identity = e
            break
    if identity is None:
        if identity_hint is None:
            raise NoIdentity("no two-sided identity element in table")
        raise NoIdentity(f"hinted identity {identity_hint} is not a two-sided identity")
    hits = mul == identity
    inv = np.argmax(hits, axis=1)
    ok = hits[ar, inv] & (mul[inv, ar] == identity)
    if not ok.all():
        raise NoInverse(int(np.argmin(ok)))
    return int(identity), inv


def _build(mul, *, labels=None, coords=None, name="", identity_hint=None,
           check_associativity=None) -> FiniteGroup:
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    if check_associativity is None:
        check_associativity = mul.shape[0] <= ASSOC_CHECK_LIMIT
    if check_associativity:
        bad = find_associativity_violation(mul)
        if bad is not None:
            raise NotAssociative(*bad)
    identity, inv = _identity_and_inverse(mul, identity_hint)
    mul.setflags(write=False)
    inv = np.ascontiguousarray(inv, dtype=np.int64)
    inv.setflags(write=False)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != mul.shape[0]:
            raise HomQuandleError("labels must have one entry per element")
    return FiniteGroup(mul, identity, inv, labels, coords, name)


def group_from_cayley(table, identity_hint: int | None = None, labels=None,
                      name: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a group.

    Associativity is always checked exhaustively here, since the table
    comes from outside.
    """
    mul = _check_square(table)
    return _build(mul, labels=labels, name=name, identity_hint=identity_hint,
                  check_associativity=True)


def _perm_label(p) -> str:
    return "[" + " ".join(map(str, p)) + "]"


def _compose(a, b):
    # a first, then b
    return tuple(b[x] for x in a)


def _perm_table(perms: np.ndarray) -> np.ndarray:
    """Multiplication table of a closed list of permutations."""
    n, d = perms.shape
    mul = np.empty((n, n), dtype=np.int64)
    if d <= 15:
        weights = np.array([d ** k for k in range(d)], dtype=np.int64)
        codes = perms @ weights
        if d ** d <= 1 << 23:
            dense = np.full(d ** d, -1, dtype=np.int64)
            dense[codes] = np.arange(n)
            lookup = dense.__getitem__
        else:
            order = np.argsort(codes)
            sorted_codes = codes[order]

            def lookup(c):
                return order[np.searchsorted(sorted_codes, c)]
        block = max(1, 2_000_000 // (n * d))
        for start in range(0, n, block):
            rows = slice(start, min(n, start + block))
            prod_codes = perms[:, perms[rows]] @ weights  # (j, i)
            mul[rows] = lookup(prod_codes.T)
    else:
        index = {p.tobytes(): i for i, p in enumerate(perms)}
        for i in range(n):
            prods = perms[:, perms[i]]
            mul[i] = [index[row.tobytes()] for row in prods]
    # row i holds p_j[p_i[.]] = p_i * p_j at column j
    return mul


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            cap: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    """Close a set of permutations of ``{0..degree-1}`` under composition.

    Elements are ordered breadth-first from the identity, trying generators
    in the given order, so the indexing is reproducible.
    """
    if degree < 1:
        raise HomQuandleError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise NotABijection(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                seen[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                queue.append(y)
    perms = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    mul = _perm_table(perms)
    return _build(mul, labels=[_perm_label(p) for p in elems], coords=tuple(elems),
                  name=name or f"PermGroup(deg={degree})")


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True, eq=False)
class GroupAutomorphism:
    group: FiniteGroup
    image: np.ndarray

    def __post_init__(self):
        G = self.group
        img = np.asarray(self.image, dtype=np.int64)
        if img.shape != (G.order,) or sorted(img.tolist()) != list(range(G.order)):
            raise NotAnAutomorphism("image is not a bijection of the group elements")
        # f(ab) == f(a) f(b)
        if not np.array_equal(img[G.mul], G.mul[img[:, None], img[None, :]]):
            bad = np.argwhere(img[G.mul] != G.mul[img[:, None], img[None, :]])[0]
            raise NotAnAutomorphism(f"f(a*b) != f(a)*f(b) at a={bad[0]}, b={bad[1]}")
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __call__(self, g: int) -> int:
        return int(self.image[g])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupAutomorphism) and other.group is self.group
                and np.array_equal(self.image, other.image))

    def __hash__(self):
        return hash((id(self.group), self.image.tobytes()))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.image, np.arange(self.group.order)))

    def then(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """Apply ``self`` first, then ``other``."""
        return GroupAutomorphism(self.group, other.image[self.image])

    def inverse(self) -> "GroupAutomorphism":
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.group.order)
        return GroupAutomorphism(self.group, inv)

    def power_table(self, k: int) -> np.ndarray:
        base = self.image if k >= 0 else self.inverse().image
        out = np.arange(self.group.order)
        for _ in range(abs(k)):
            out = base[out]
        return out

    def power(self, k: int) -> "GroupAutomorphism":
        return GroupAutomorphism(self.group, self.power_table(k))


def identity_automorphism(G: FiniteGroup) -> GroupAutomorphism:
    return GroupAutomorphism(G, np.arange(G.order))


def automorphism_from_conjugation(G: FiniteGroup, q: int) -> GroupAutomorphism:
    """``Ad(q): g -> q^-1 g q``."""
    if not 0 <= q < G.order:
        raise IndexError(f"element {q} out of range for {G!r}")
    return GroupAutomorphism(G, G.mul[G.inv[q], G.mul[:, q]])


def automorphism_from_generators(G: FiniteGroup, generators: Sequence[int],
                                 images: Sequence[int]) -> GroupAutomorphism:
    """Extend ``generators[i] -> images[i]`` multiplicatively to all of G."""
    if len(generators) != len(images):
        raise HomQuandleError("generators and images must have equal length")
    img = {G.identity: G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(generators, images):
            y = G.op(x, s)
            fy = G.op(img[x], t)
            if y in img:
                if img[y] != fy:
                    raise NotAnAutomorphism("generator assignment does not extend to a homomorphism")
            else:
                img[y] = fy
                queue.append(y)
    if len(img) != G.order:
        raise NotAnAutomorphism("the given elements do not generate the group")
    return GroupAutomorphism(G, np.array([img[g] for g in range(G.order)]))


def inner_witness(sigma: GroupAutomorphism) -> int | None:
    """Least ``q`` with ``sigma = Ad(q)``, or None when sigma is outer."""
    G = sigma.group
    right = G.mul  # right[g, q] = g q
    for q in range(G.order):
        if np.array_equal(G.mul[G.inv[q], right[:, q]], sigma.image):
            return q
    return None


def automorphism_order(sigma: GroupAutomorphism) -> int:
    ar = np.arange(sigma.group.order)
    x, m = sigma.image, 1
    while not np.array_equal(x, ar):
        x = sigma.image[x]
        m += 1
    return m


# ---------------------------------------------------------------------------
# subgroups and cosets

@dataclass(frozen=True, eq=False)
class Subgroup:
    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        G = self.group
        mem = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", mem)
        if not mem or mem[0] < 0 or mem[-1] >= G.order:
            raise NotASubgroup("members must be valid, non-empty element indices")
        s = set(mem)
        if G.identity not in s:
            raise NotASubgroup("subgroup must contain the identity")
        arr = np.array(mem)
        if not set(G.mul[arr[:, None], arr[None, :]].ravel().tolist()) <= s:
            raise NotASubgroup("members not closed under multiplication")
        if not set(G.inv[arr].tolist()) <= s:
            raise NotASubgroup("members not closed under inverses")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return int(g) in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.group is self.group
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.group), self.members))

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self)}, of {self.group!r})"


def generated_subgroup(G: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in generators]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.op(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, tuple(seen))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def fix_subgroup(sigma: GroupAutomorphism) -> Subgroup:
    """``{g : sigma(g) = g}``."""
    fixed = np.flatnonzero(sigma.image == np.arange(sigma.group.order))
    return Subgroup(sigma.group, tuple(fixed.tolist()))


def centralizer(G: FiniteGroup, q: int) -> Subgroup:
    return Subgroup(G, tuple(np.flatnonzero(G.mul[:, q] == G.mul[q, :]).tolist()))


def cyclic_subgroups(H: Subgroup) -> list[Subgroup]:
    """Distinct cyclic subgroups of H, ordered by (order, members)."""
    G = H.group
    out = {generated_subgroup(G, [g]).members for g in H.members}
    return [Subgroup(G, m) for m in sorted(out, key=lambda m: (len(m), m))]


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Right cosets ``Hg``; ``reps[c]`` is the least element of coset ``c``."""

    group: FiniteGroup
    subgroup: Subgroup
    reps: tuple[int, ...]
    coset_of: np.ndarray

    def __len__(self) -> int:
        return len(self.reps)

    def coset(self, g: int) -> int:
        return int(self.coset_of[g])

    def members(self, c: int) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.coset_of == c).tolist())

    def label(self, c: int) -> str:
        return "H" + self.group.label(self.reps[c])


def right_cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    if not isinstance(H, Subgroup) or H.group is not G:
        raise NotASubgroup("subgroup does not belong to this group")
    coset_of = np.full(G.order, -1, dtype=np.int64)
    hs = np.array(H.members)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.mul[hs, g]] = len(reps)
            reps.append(g)
    coset_of.setflags(write=False)
    return CosetSpace(G, H, tuple(reps), coset_of)


# ---------------------------------------------------------------------------
# extensions

def semidirect_z(G: FiniteGroup, sigma: GroupAutomorphism, m: int) -> FiniteGroup:
    """``G x|_sigma Z_m`` with ``(g,s)(h,t) = (sigma^t(g) h, s+t mod m)``.

    Element ``(g, t)`` has index ``t*|G| + g``, so ``g -> (g, 0)`` is the
    identity on indices.  ``m`` must be a multiple of the order of sigma,
    otherwise ``sigma^t`` is not well defined for ``t`` mod ``m``.
    """
    if sigma.group is not G:
        raise HomQuandleError("automorphism belongs to a different group")
    if m < 1 or m % automorphism_order(sigma):
        raise BadModulus(f"modulus {m} is not a positive multiple of ord(sigma)="
                         f"{automorphism_order(sigma)}")
    n = G.order
    powers = np.stack([sigma.power_table(t) for t in range(m)])
    idx = np.arange(n * m)
    g, t = idx % n, idx // n
    # (g1,s)(g2,t): first coord mul[sigma^t(g1), g2]
    first = G.mul[powers[t[None, :], g[:, None]], g[None, :]]
    second = (t[:, None] + t[None, :]) % m
    mul = second * n + first
    coords = tuple((int(a), int(b)) for a, b in zip(g, t))
    labels = [f"({G.label(a)},{b})" for a, b in coords]
    return _build(mul, labels=labels, coords=coords,
                  name=f"SemidirectZ(order={n * m}, m={m})")


def semidirect_element(G: FiniteGroup, g: int, t: int, m: int) -> int:
    return (t % m) * G.order + g


def bergman_extension(G: FiniteGroup) -> FiniteGroup:
    """``(G x G) x|_Sw {+1,-1}`` with the switching action on the second factor.

    ``(g1,h1,a)(g2,h2,b) = (g1 g2, h1 h2, ab)`` if ``b = 1`` and
    ``(h1 g2, g1 h2, ab)`` if ``b = -1``.  Element ``(g,h,a)`` has index
    ``xi(a)*|G|^2 + g*|G| + h`` with ``xi(1)=0, xi(-1)=1``.
    """
    n = G.order
    idx = np.arange(2 * n * n)
    xi, rest = idx // (n * n), idx % (n * n)
    g, h = rest // n, rest % n
    a = 1 - 2 * xi
    g1, h1, a1 = g[:, None], h[:, None], a[:, None]
    g2, h2, a2 = g[None, :], h[None, :], a[None, :]
    flip = a2 == -1
    first = np.where(flip, G.mul[h1, g2], G.mul[g1, g2])
    second = np.where(flip, G.mul[g1, h2], G.mul[h1, h2])
    prod_a = a1 * a2
    mul = ((1 - prod_a) // 2) * n * n + first * n + second
    coords = tuple((int(x), int(y), int(z)) for x, y, z in zip(g, h, a))
    labels = [f"({G.label(x)},{G.label(y)},{'+' if z == 1 else '-'}1)" for x, y, z in coords]
    return _build(mul, labels=labels, coords=coords,
                  name=f"BergmanExt(order={2 * n * n})")


def bergman_element(G: FiniteGroup, g: int, h: int, a: int) -> int:
    return (0 if a == 1 else 1) * G.order ** 2 + g * G.order + h


# ---------------------------------------------------------------------------
# standard groups used by the catalog

def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return group_from_cayley((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Element ``(a, b)`` has index ``a*|B| + b``."""
    na, nb = A.order, B.order
    idx = np.arange(na * nb)
    a, b = idx // nb, idx % nb
    mul = A.mul[a[:, None], a[None, :]] * nb + B.mul[b[:, None], b[None, :]]
    coords = tuple((int(x), int(y)) for x, y in zip(a, b))
    labels = [f"({A.label(x)},{B.label(y)})" for x, y in coords]
    return _build(mul, labels=labels, coords=coords,
                  name=f"{A.name or 'A'}x{B.name or 'B'}")


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_permutations(1, [], name="S1")
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(list(range(1, n)) + [0])
    return group_from_permutations(n, [swap, cycle], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = p[i + 1], p[i + 2], p[i]
        gens.append(p)
    return group_from_permutations(n, gens, name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return group_from_permutations(n, [rot, ref], name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 through its regular representation on {+-1, +-i, +-j, +-k}."""
    # unit quaternions as (sign, axis) with axis 0..3 = 1,i,j,k
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    elems = [(s, ax) for s in (1, -1) for ax in range(4)]
    pos = {e: i for i, e in enumerate(elems)}

    def times(x, y):
        s, ax = table[(x[1], y[1])]
        return (x[0] * y[0] * s, ax)

    # right multiplication by i and j, as permutations of the 8 elements
    gens = [[pos[times(e, (1, k))] for e in elems] for k in (1, 2)]
    return group_from_permutations(8, gens, name="Q8")

