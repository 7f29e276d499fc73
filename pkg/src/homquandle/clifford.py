"""Dense real Clifford algebra Cl(n) with e_i^2 = +1.

Blades are bitmasks: bit ``i`` set means generator ``e_{i+1}`` is present,
generators inside a blade in increasing order, and the coefficient vector is
indexed by the bitmask.  Python-side indices are 0-based: ``basis_vector(n, 0)``
is ``e_1``.

Versors act on vectors in two ways here:

* :func:`vector_action` is ``x -> v x v``, the reflection through the line
  ``Rv`` (``2<x,v>v - x``), i.e. literally the spherical quandle operation;
* :func:`projection` is the twisted right action ``x -> alpha(V)^-1 x V``,
  under which a unit vector acts as the hyperplane reflection ``x - 2<x,v>v``.
  With row vectors this makes ``projection`` a homomorphism
  ``Pin+(n) -> O(n)`` with kernel ``{+1, -1}`` in every dimension.
  On even elements the two actions agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatch,
    HomQuandleError,
    NotGrade1,
    NotOrthogonal,
    NotUnit,
)

MAX_DIM = 10
VERSOR_TOL = 1e-12


def reorder_sign(a: int, b: int) -> int:
    """Sign of ``blade(a) * blade(b)`` after sorting generators (e_i^2 = +1)."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _tables(n: int):
    N = 1 << n
    A = np.arange(N)[:, None]
    B = np.arange(N)[None, :]
    swaps = np.zeros((N, N), dtype=np.int64)
    for k in range(1, n):
        swaps += np.bitwise_count((A >> k) & B)
    sign = np.where(swaps & 1, -1.0, 1.0)
    xor = A ^ B
    grade = np.bitwise_count(np.arange(N)).astype(np.int64)
    sign.setflags(write=False)
    xor.setflags(write=False)
    grade.setflags(write=False)
    return sign, xor, grade


def blade_grades(n: int) -> np.ndarray:
    return _tables(n)[2]


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True, eq=False)
class CliffordElement:
    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise DimensionMismatch(f"dimension must be in 1..{MAX_DIM}, got {self.n}")
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (1 << self.n,):
            raise DimensionMismatch(f"expected {1 << self.n} coefficients, got {c.shape}")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def _same(self, other: "CliffordElement"):
        if other.n != self.n:
            raise DimensionMismatch(f"Cl({self.n}) vs Cl({other.n})")

    def __add__(self, other):
        if isinstance(other, CliffordElement):
            self._same(other)
            return CliffordElement(self.n, self.coeffs + other.coeffs)
        return self + scalar(self.n, other)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.n, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return CliffordElement(self.n, self.coeffs * float(other))

    def __rmul__(self, other):
        return CliffordElement(self.n, self.coeffs * float(other))

    def __truediv__(self, other):
        return CliffordElement(self.n, self.coeffs / float(other))

    def __repr__(self) -> str:
        terms = [f"{c:+.6g}*{blade_name(m)}" for m, c in enumerate(self.coeffs) if c != 0]
        return f"Cl{self.n}(" + (" ".join(terms) if terms else "0") + ")"

    def reverse(self) -> "CliffordElement":
        return clifford_reverse(self)

    def grade(self, k: int) -> "CliffordElement":
        return clifford_grade(self, k)

    def involute(self) -> "CliffordElement":
        """Grade involution ``alpha``: negate odd blades."""
        g = blade_grades(self.n)
        return CliffordElement(self.n, np.where(g % 2, -self.coeffs, self.coeffs))

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def vector_part(self) -> np.ndarray:
        return self.coeffs[[1 << i for i in range(self.n)]].copy()

    def norm2(self) -> float:
        """Scalar part of ``a * reverse(a)``; equals the squared norm of a versor."""
        return float(np.dot(self.coeffs, self.coeffs))

    def parity(self, tol: float = VERSOR_TOL) -> str:
        g = blade_grades(self.n)
        odd = np.abs(self.coeffs[g % 2 == 1]).max(initial=0.0)
        even = np.abs(self.coeffs[g % 2 == 0]).max(initial=0.0)
        if odd <= tol:
            return "even"
        if even <= tol:
            return "odd"
        return "mixed"

    def allclose(self, other: "CliffordElement", tol: float = 1e-9) -> bool:
        return distance(self, other) <= tol


def distance(a: CliffordElement, b: CliffordElement) -> float:
    """Max-abs coefficient difference."""
    a._same(b)
    return float(np.abs(a.coeffs - b.coeffs).max())


def scalar(n: int, value: float = 1.0) -> CliffordElement:
    c = np.zeros(1 << n)
    c[0] = value
    return CliffordElement(n, c)


def blade(n: int, indices, coeff: float = 1.0) -> CliffordElement:
    """``coeff * e_{i1} e_{i2} ...`` for 0-based ``indices`` in the given order."""
    out = scalar(n, coeff)
    for i in indices:
        out = out * basis_vector(n, i)
    return out


def basis_vector(n: int, i: int) -> CliffordElement:
    if not 0 <= i < n:
        raise DimensionMismatch(f"generator index {i} out of range for Cl({n})")
    c = np.zeros(1 << n)
    c[1 << i] = 1.0
    return CliffordElement(n, c)


def vector(coords) -> CliffordElement:
    x = np.asarray(coords, dtype=float)
    n = x.shape[0]
    c = np.zeros(1 << n)
    c[[1 << i for i in range(n)]] = x
    return CliffordElement(n, c)


def pseudoscalar(n: int) -> CliffordElement:
    c = np.zeros(1 << n)
    c[-1] = 1.0
    return CliffordElement(n, c)


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._same(b)
    sign, xor, _ = _tables(a.n)
    ia = np.flatnonzero(a.coeffs)
    ib = np.flatnonzero(b.coeffs)
    out = np.zeros(1 << a.n)
    if len(ia) and len(ib):
        block = sign[np.ix_(ia, ib)] * np.outer(a.coeffs[ia], b.coeffs[ib])
        out += np.bincount(xor[np.ix_(ia, ib)].ravel(), weights=block.ravel(),
                           minlength=1 << a.n)
    return CliffordElement(a.n, out)


def clifford_reverse(a: CliffordElement) -> CliffordElement:
    g = blade_grades(a.n)
    flip = (g * (g - 1) // 2) % 2 == 1
    return CliffordElement(a.n, np.where(flip, -a.coeffs, a.coeffs))


def clifford_grade(a: CliffordElement, k: int) -> CliffordElement:
    return CliffordElement(a.n, np.where(blade_grades(a.n) == k, a.coeffs, 0.0))


def _require_vector(x: CliffordElement, tol: float, what: str) -> None:
    g = blade_grades(x.n)
    if np.abs(x.coeffs[g != 1]).max(initial=0.0) > tol:
        raise NotGrade1(f"{what} is not a grade-1 element")


def vector_action(v: CliffordElement, x: CliffordElement, tol: float = 1e-9) -> CliffordElement:
    """``v x v``: reflection of the vector x through the line spanned by the unit vector v."""
    _require_vector(v, tol, "v")
    _require_vector(x, tol, "x")
    if abs(v.norm2() - 1.0) > tol:
        raise NotUnit(f"|v|^2 = {v.norm2()!r}, expected 1")
    return v * x * v


# ---------------------------------------------------------------------------
# versors, lifts and the double cover

@dataclass(frozen=True, eq=False)
class VersorElement:
    """A product of ``factor_count`` unit vectors, so ``V reverse(V) = 1``."""

    element: CliffordElement
    parity: str
    factor_count: int

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise HomQuandleError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if (self.factor_count % 2 == 0) != (self.parity == "even"):
            raise HomQuandleError("parity disagrees with the number of factors")
        actual = self.element.parity(tol=1e-9)
        if actual != self.parity:
            raise HomQuandleError(f"element is {actual}, declared {self.parity}")
        unit = self.element * self.element.reverse()
        if distance(unit, scalar(self.n)) > VERSOR_TOL * max(1, self.factor_count):
            raise NotUnit("V * reverse(V) != 1")

    @property
    def n(self) -> int:
        return self.element.n

    @property
    def coeffs(self) -> np.ndarray:
        return self.element.coeffs

    def __mul__(self, other: "VersorElement") -> "VersorElement":
        count = self.factor_count + other.factor_count
        return VersorElement(self.element * other.element,
                             "even" if count % 2 == 0 else "odd", count)

    def __neg__(self) -> "VersorElement":
        return VersorElement(-self.element, self.parity, self.factor_count)

    def inverse(self) -> "VersorElement":
        return VersorElement(self.element.reverse(), self.parity, self.factor_count)

    def conjugate_by(self, g: "VersorElement") -> "VersorElement":
        """``g^-1 self g``."""
        return g.inverse() * self * g

    def allclose(self, other: "VersorElement", tol: float = 1e-9) -> bool:
        return self.element.allclose(other.element, tol)

    def __repr__(self) -> str:
        return f"Versor[{self.parity}, {self.factor_count}]({self.element!r})"


def versor_from_vectors(vectors, n: int | None = None) -> VersorElement:
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if n is None:
        if not vectors:
            raise HomQuandleError("dimension needed for the empty product")
        n = len(vectors[0])
    out = scalar(n)
    for v in vectors:
        v = v / np.linalg.norm(v)
        out = out * vector(v)
    m = len(vectors)
    return VersorElement(out, "even" if m % 2 == 0 else "odd", m)


def identity_versor(n: int) -> VersorElement:
    return VersorElement(scalar(n), "even", 0)


def as_versor(a: CliffordElement, factor_count: int | None = None) -> VersorElement:
    """Wrap a unit element of pure parity; ``factor_count`` defaults to the
    smallest count of that parity."""
    par = a.parity(tol=1e-9)
    if par == "mixed":
        raise HomQuandleError("element has mixed parity")
    if factor_count is None:
        factor_count = 0 if par == "even" else 1
    return VersorElement(a, par, factor_count)


def projection(V: VersorElement) -> np.ndarray:
    """Row-vector matrix of ``x -> alpha(V)^-1 x V``.

    Homomorphism: ``projection(A * B) == projection(A) @ projection(B)``.
    """
    n = V.n
    left = V.element.reverse()
    if V.parity == "odd":
        left = -left
    rows = [(left * basis_vector(n, i) * V.element).vector_part() for i in range(n)]
    return np.array(rows)


# below this column distance the peeling step is skipped
_PEEL_SKIP = 1e-9


def lift_orthogonal(g, tol: float = 1e-9) -> VersorElement:
    """Versor ``V`` with ``projection(V) == g``, for ``g`` in O(n).

    Householder peeling on columns, left to right: for column i, reflect
    it onto ``e_i`` with ``u = (e_i - c)/|e_i - c|``.  Then
    ``g = H_{u1} ... H_{um}`` and ``V = u1 ... um`` with ``m <= n``.
    The parity of V is that of ``det(g)``, and the sign of V is fixed by this
    order (for example ``diag(1,-1,-1) -> e2 e3``).
    """
    g = np.array(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NotOrthogonal("matrix must be square")
    n = g.shape[0]
    if n > MAX_DIM:
        raise DimensionMismatch(f"n={n} exceeds the dense Clifford cap {MAX_DIM}")
    if np.abs(g.T @ g - np.eye(n)).max() > tol:
        raise NotOrthogonal(f"|g^T g - I| = {np.abs(g.T @ g - np.eye(n)).max():.3g} > {tol}")
    A = g.copy()
    factors = []
    for i in range(n):
        c = A[:, i]
        d = -c.copy()
        d[i] += 1.0
        size = np.linalg.norm(d)
        if size <= _PEEL_SKIP:
            continue
        u = d / size
        A = A - 2.0 * np.outer(u, u @ A)
        factors.append(u)
    return versor_from_vectors(factors, n)
