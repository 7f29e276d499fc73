"""Continuous quandles on spheres and Grassmannians, and their embeddings.

Vectors are rows and matrices act on the right (``x -> x @ M``), so the
conjugation law reads ``iota(x * y) = iota(y)^-1 iota(x) iota(y)`` with the
ordinary matrix product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import (
    MAX_DIM,
    CliffordElement,
    VersorElement,
    lift_orthogonal,
    pseudoscalar,
    vector,
)
from .errors import (
    CapExceeded,
    DimensionMismatch,
    NotUnit,
    OddElement,
    ThetaPi,
)

DEFAULT_EPS = 1e-9
CONJ_EPS = 1e-8
DEFAULT_SEED = 0xC0FFEE


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps!r}")


def as_unit_vector(x, eps: float = DEFAULT_EPS) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DimensionMismatch("a unit vector must be a non-empty 1-d array")
    if abs(np.linalg.norm(x) - 1.0) > eps:
        raise NotUnit(f"|x| = {np.linalg.norm(x)!r}, expected 1")
    return x


# ---------------------------------------------------------------------------
# spheres and theta-rotations

def sphere_op(x, y, eps: float = DEFAULT_EPS) -> np.ndarray:
    """``2<x,y> y - x``, the reflection of x through the line of y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionMismatch(f"dimensions differ: {x.shape} vs {y.shape}")
    out = 2.0 * np.dot(x, y) * y - x
    drift = abs(np.linalg.norm(out) - 1.0)
    if drift > eps / 10:
        raise NotUnit(f"output norm drifted by {drift:.3g}; inputs are not unit vectors")
    return out


def rotation_matrix(axis, theta: float) -> np.ndarray:
    """Row-convention matrix M with ``v @ M`` the right-hand rotation of v
    about ``axis`` by ``theta``."""
    a = np.asarray(axis, dtype=float)
    if a.shape != (3,):
        raise DimensionMismatch("rotations need vectors in R^3")
    c, s = math.cos(theta), math.sin(theta)
    cross = np.array([[0.0, -a[2], a[1]], [a[2], 0.0, -a[0]], [-a[1], a[0], 0.0]])
    column = c * np.eye(3) + s * cross + (1.0 - c) * np.outer(a, a)
    return column.T


def rotation_op(x, y, theta: float) -> np.ndarray:
    """``R_{y,theta}(x)`` by Rodrigues' formula (right-hand rule)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (3,) or y.shape != (3,):
        raise DimensionMismatch("rotation quandle lives on S^2 in R^3")
    c, s = math.cos(theta), math.sin(theta)
    return x * c + np.cross(y, x) * s + y * np.dot(y, x) * (1.0 - c)


def theta_embed(x, theta: float, eps: float = DEFAULT_EPS) -> np.ndarray:
    """The rotation by theta about x, as a row-convention 3x3 matrix.

    ``theta_embed(e1, t) == diag(1, [[cos t, sin t], [-sin t, cos t]])``.
    Rejects theta = pi, where the map to SO(3) stops being injective.
    """
    if not 0.0 < theta < 2.0 * math.pi:
        raise ValueError(f"theta must lie in (0, 2pi), got {theta!r}")
    if abs(theta - math.pi) <= eps:
        raise ThetaPi(theta)
    x = as_unit_vector(x, eps)
    if x.shape != (3,):
        raise DimensionMismatch("theta_embed takes vectors in R^3")
    return rotation_matrix(x, theta)


# ---------------------------------------------------------------------------
# Grassmannians

@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-plane in R^n given by an orthonormal frame (rows).

    Unoriented: two frames are the same point when their projectors agree.
    """

    frame: np.ndarray
    oriented = False

    def __post_init__(self):
        F = np.array(self.frame, dtype=float)
        if F.ndim == 1:
            F = F[None, :]
        if F.ndim != 2 or F.shape[0] == 0 or F.shape[0] > F.shape[1]:
            raise DimensionMismatch(f"frame must be k x n with 1 <= k <= n, got {F.shape}")
        err = np.abs(F @ F.T - np.eye(F.shape[0])).max()
        if err > 1e-8:
            raise NotUnit(f"frame rows are not orthonormal (error {err:.3g})")
        F.setflags(write=False)
        object.__setattr__(self, "frame", F)

    @property
    def k(self) -> int:
        return self.frame.shape[0]

    @property
    def n(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame.T @ self.frame

    def reflection(self) -> np.ndarray:
        return 2.0 * self.projector() - np.eye(self.n)

    def with_frame(self, frame) -> "Subspace":
        return type(self)(frame)

    def distance(self, other: "Subspace") -> float:
        _same_shape(self, other)
        return float(np.linalg.norm(self.projector() - other.projector()))


@dataclass(frozen=True, eq=False)
class OrientedSubspace(Subspace):
    """An oriented k-plane: the row order of the frame is the orientation."""

    oriented = True

    def reversed(self) -> "OrientedSubspace":
        F = self.frame.copy()
        F[0] = -F[0]
        return OrientedSubspace(F)

    def underlying(self) -> Subspace:
        return Subspace(self.frame)

    def plucker(self) -> np.ndarray:
        return plucker(self.frame)

    def distance(self, other: "Subspace") -> float:
        _same_shape(self, other)
        return float(np.linalg.norm(self.plucker() - plucker(other.frame)))


def _same_shape(a: Subspace, b: Subspace) -> None:
    if (a.n, a.k) != (b.n, b.k):
        raise DimensionMismatch(f"Gr({a.n},{a.k}) vs Gr({b.n},{b.k})")


@lru_cache(maxsize=None)
def _minor_index(n: int, k: int) -> np.ndarray:
    from itertools import combinations
    return np.array(list(combinations(range(n), k)))


def plucker(frame) -> np.ndarray:
    """All k x k minors of the frame, in lexicographic column order."""
    F = np.asarray(frame, dtype=float)
    idx = _minor_index(F.shape[1], F.shape[0])
    return np.linalg.det(F[:, idx].transpose(1, 0, 2))


def standard_subspace(n: int, k: int, oriented: bool = True) -> Subspace:
    F = np.eye(n)[:k]
    return OrientedSubspace(F) if oriented else Subspace(F)


def h_matrix(n: int, k: int) -> np.ndarray:
    """``diag(E_k, -E_{n-k})``."""
    return np.diag([1.0] * k + [-1.0] * (n - k))


def grassmann_op(V: Subspace, W: Subspace) -> Subspace:
    """Frame of V times the reflection matrix of W; V's kind and row order are kept."""
    _same_shape(V, W)
    return V.with_frame(V.frame @ W.reflection())


def grassmann_embed(V: Subspace) -> np.ndarray:
    """``2 F^T F - I``: symmetric, orthogonal, +1-eigenspace V."""
    return V.reflection()


def plus_eigenspace(M) -> Subspace:
    """The +1-eigenspace of a symmetric reflection matrix, as an unoriented plane."""
    M = np.asarray(M, dtype=float)
    w, vecs = np.linalg.eigh((M + M.T) / 2)
    keep = w > 0
    return Subspace(vecs[:, keep].T)


def complete_frame(frame) -> np.ndarray:
    """Extend orthonormal rows to a matrix in SO(n).

    Gram-Schmidt (two passes) on the standard basis, picking at each step the
    basis vector with the largest residual (ties to the lowest index); the
    last row is negated when needed so the determinant is +1.
    """
    F = np.asarray(frame, dtype=float)
    k, n = F.shape
    rows = [r for r in F]
    basis = np.eye(n)
    while len(rows) < n:
        R = np.array(rows)
        resid = basis - (basis @ R.T) @ R
        resid = resid - (resid @ R.T) @ R
        norms = np.linalg.norm(resid, axis=1)
        j = int(np.argmax(norms))
        rows.append(resid[j] / norms[j])
    g = np.array(rows)
    if np.linalg.det(g) < 0:
        if k == n:
            raise DimensionMismatch("a full frame with determinant -1 cannot be completed in SO(n)")
        g[-1] = -g[-1]
    return g


@lru_cache(maxsize=None)
def h_lift(n: int, k: int) -> VersorElement:
    """The fixed lift of ``h_(n,k)``: ``e_{k+1} ... e_n`` from the peeling order."""
    return lift_orthogonal(h_matrix(n, k))


def oriented_grassmann_embed(V: OrientedSubspace) -> VersorElement:
    """``g~^-1 h~ g~`` with g the SO(n) completion of V's frame.

    Even (Spin) when n-k is even, odd (Pin+) when n-k is odd.
    """
    if V.n > MAX_DIM:
        raise CapExceeded(f"n={V.n} exceeds the Clifford cap {MAX_DIM}")
    if not 1 <= V.k <= V.n - 1:
        raise DimensionMismatch("oriented Grassmann embedding needs 1 <= k <= n-1")
    g = complete_frame(V.frame)
    gt = lift_orthogonal(g, tol=1e-8)
    return h_lift(V.n, V.k).conjugate_by(gt)


# ---------------------------------------------------------------------------
# sphere embeddings

def spherical_embed(x, eps: float = DEFAULT_EPS):
    """Embedding of ``S^n`` (x in R^{n+1}) into a conjugation quandle.

    n = 1: the O(2) reflection ``[[cos p, sin p], [sin p, -cos p]]``;
    n odd >= 3: the vector x in Cl(n+1);
    n even: ``omega x`` with ``omega = e_1 ... e_{n+1}`` central.
    """
    x = as_unit_vector(x, eps)
    n = x.shape[0] - 1
    if n < 1:
        raise DimensionMismatch("spherical_embed needs n >= 1")
    if n == 1:
        return np.array([[x[0], x[1]], [x[1], -x[0]]])
    if n + 1 > MAX_DIM:
        raise CapExceeded(f"Cl({n + 1}) exceeds the Clifford cap {MAX_DIM}")
    v = vector(x)
    if n % 2 == 1:
        return VersorElement(v, "odd", 1)
    return VersorElement(pseudoscalar(n + 1) * v, "even", n + 2)


# (1, e2e3, e1e3, e1e2) -> (1, i, j, k); masks are bit i for e_{i+1}
_QUAT_MASKS = (0b000, 0b110, 0b101, 0b011)


def spin3_quaternion_bridge(v, tol: float = 1e-9) -> np.ndarray:
    """Even part of Cl(3) as quaternions ``(w, x, y, z)``.

    ``e2e3 -> i``, ``e1e3 -> j``, ``e1e2 -> k``; multiplicative.
    """
    a = v.element if isinstance(v, VersorElement) else v
    if not isinstance(a, CliffordElement) or a.n != 3:
        raise DimensionMismatch("the quaternion bridge takes elements of Cl(3)")
    if a.parity(tol=tol) != "even":
        raise OddElement("the quaternion bridge is defined on even elements only")
    return a.coeffs[list(_QUAT_MASKS)].copy()


def quaternion_to_clifford(q) -> CliffordElement:
    c = np.zeros(8)
    c[list(_QUAT_MASKS)] = np.asarray(q, dtype=float)
    return CliffordElement(3, c)


def quat_mul(p, q) -> np.ndarray:
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return np.array([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ])
