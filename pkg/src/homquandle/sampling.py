"""Seeded sampling checks for the continuous quandles and their embeddings.

Sample ``i`` draws from its own generator ``default_rng([seed, i])``, so a
report does not depend on evaluation order or on the number of samples
drawn before it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .clifford import VersorElement, projection
from .geometry import (
    CONJ_EPS,
    DEFAULT_EPS,
    DEFAULT_SEED,
    OrientedSubspace,
    Subspace,
    grassmann_embed,
    grassmann_op,
    oriented_grassmann_embed,
    plus_eigenspace,
    rotation_op,
    sphere_op,
    spherical_embed,
    theta_embed,
)

DEFAULT_SAMPLES = 200
SEPARATION = 1e-6
DISTINCT = 1e-3


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_unit(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal(dim)
    return x / np.linalg.norm(x)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed O(n) matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_frame(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    return random_orthogonal(n, rng)[:k]


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float
    at_least: bool = False  # True: value must be >= limit

    @property
    def ok(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.value >= self.limit if self.at_least else self.value <= self.limit


@dataclass
class GeomReport:
    family: str
    params: dict
    samples: int
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name, value, limit, at_least=False) -> None:
        self.checks.append(Check(name, float(value), float(limit), at_least))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "samples": self.samples,
            "seed": self.seed,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "value": c.value, "limit": c.limit,
                 "relation": ">=" if c.at_least else "<=", "ok": c.ok}
                for c in self.checks
            ],
        }


def _as_vector(image) -> np.ndarray:
    if isinstance(image, VersorElement):
        return image.coeffs
    return np.asarray(image, dtype=float).ravel()


def _inverse(image):
    if isinstance(image, VersorElement):
        return image.inverse()
    return np.linalg.inv(image)


def _mul(a, b):
    if isinstance(a, VersorElement):
        return a * b
    return a @ b


def conjugation_residual(embed, x, y, op) -> float:
    """``|iota(x*y) - iota(y)^-1 iota(x) iota(y)|`` (Euclidean on entries)."""
    ix, iy = embed(x), embed(y)
    lhs = embed(op(x, y))
    rhs = _mul(_mul(_inverse(iy), ix), iy)
    return float(np.linalg.norm(_as_vector(lhs) - _as_vector(rhs)))


def min_separation(points: np.ndarray, images: np.ndarray) -> float:
    """Least image distance over pairs whose inputs are more than DISTINCT apart."""
    dp = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    di = np.linalg.norm(images[:, None, :] - images[None, :, :], axis=-1)
    mask = dp > DISTINCT
    return float(di[mask].min()) if mask.any() else math.inf


def _axioms(report, triples, op, inverse_op, dist, eps):
    idem = inv = dist_law = 0.0
    for x, y, z in triples:
        idem = max(idem, dist(op(x, x), x))
        inv = max(inv, dist(inverse_op(op(x, y), y), x))
        dist_law = max(dist_law, dist(op(op(x, y), z), op(op(x, z), op(y, z))))
    report.add("idempotence", idem, eps)
    report.add("right_inverse", inv, eps)
    report.add("distributivity", dist_law, eps)


def _euclid(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def _sub_dist(a: Subspace, b: Subspace) -> float:
    return a.distance(b)


def check_sphere(n: int, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                 eps: float = DEFAULT_EPS, conj_eps: float = CONJ_EPS) -> GeomReport:
    """Axioms of ``S^n`` and the spherical embedding."""
    report = GeomReport("sphere", {"n": n}, samples, seed)
    triples = []
    for i in range(samples):
        rng = sample_rng(seed, i)
        triples.append(tuple(random_unit(n + 1, rng) for _ in range(3)))
    op = lambda x, y: sphere_op(x, y, eps)  # noqa: E731
    _axioms(report, triples, op, op, _euclid, eps)
    embed = lambda x: spherical_embed(x, eps)  # noqa: E731
    hom = max(conjugation_residual(embed, x, y, op) for x, y, _ in triples)
    report.add("homomorphism", hom, conj_eps)
    pts = np.array([t[0] for t in triples])
    imgs = np.array([_as_vector(embed(x)) for x in pts])
    report.add("separation", min_separation(pts, imgs), SEPARATION, at_least=True)
    return report


def check_rotation(theta: float, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                   eps: float = DEFAULT_EPS, conj_eps: float = CONJ_EPS) -> GeomReport:
    """Axioms of ``S^2_theta`` and the SO(3) embedding (raises ThetaPi at pi)."""
    report = GeomReport("rotation", {"theta": theta}, samples, seed)
    embed = lambda x: theta_embed(x, theta, eps)  # noqa: E731
    embed(np.array([1.0, 0.0, 0.0]))  # reject theta = pi before sampling
    triples = []
    for i in range(samples):
        rng = sample_rng(seed, i)
        triples.append(tuple(random_unit(3, rng) for _ in range(3)))
    op = lambda x, y: rotation_op(x, y, theta)  # noqa: E731
    inv = lambda x, y: rotation_op(x, y, -theta)  # noqa: E731
    _axioms(report, triples, op, inv, _euclid, eps)
    hom = max(conjugation_residual(embed, x, y, op) for x, y, _ in triples)
    report.add("homomorphism", hom, conj_eps)
    pts = np.array([t[0] for t in triples])
    imgs = np.array([embed(x).ravel() for x in pts])
    report.add("separation", min_separation(pts, imgs), SEPARATION, at_least=True)
    return report


def _grassmann_triples(n, k, samples, seed, cls):
    out = []
    for i in range(samples):
        rng = sample_rng(seed, i)
        out.append(tuple(cls(random_frame(n, k, rng)) for _ in range(3)))
    return out


def check_grassmann(n: int, k: int, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                    eps: float = DEFAULT_EPS, conj_eps: float = CONJ_EPS) -> GeomReport:
    """Axioms of Gr(n,k), the reflection-matrix embedding and its eigenspace round trip."""
    report = GeomReport("grassmann", {"n": n, "k": k}, samples, seed)
    triples = _grassmann_triples(n, k, samples, seed, Subspace)
    _axioms(report, triples, grassmann_op, grassmann_op, _sub_dist, eps)
    hom = max(conjugation_residual(grassmann_embed, V, W, grassmann_op) for V, W, _ in triples)
    report.add("homomorphism", hom, conj_eps)
    trip = max(plus_eigenspace(grassmann_embed(V)).distance(V) for V, _, _ in triples)
    report.add("eigenspace_round_trip", trip, eps)
    pts = np.array([t[0].projector().ravel() for t in triples])
    imgs = np.array([grassmann_embed(t[0]).ravel() for t in triples])
    report.add("separation", min_separation(pts, imgs), SEPARATION, at_least=True)
    return report


def check_oriented_grassmann(n: int, k: int, samples: int = DEFAULT_SAMPLES,
                             seed: int = DEFAULT_SEED, eps: float = DEFAULT_EPS,
                             conj_eps: float = CONJ_EPS) -> GeomReport:
    """Axioms of the oriented Grassmannian and its Spin/Pin embedding."""
    route = "spin" if (n - k) % 2 == 0 else "pin"
    report = GeomReport("oriented-grassmann", {"n": n, "k": k, "route": route}, samples, seed)
    triples = _grassmann_triples(n, k, samples, seed, OrientedSubspace)
    _axioms(report, triples, grassmann_op, grassmann_op, _sub_dist, eps)

    embed = oriented_grassmann_embed
    iv = [embed(V) for V, _, _ in triples]
    iw = [embed(W) for _, W, _ in triples]
    hom = 0.0
    for (V, W, _), a, b in zip(triples, iv, iw):
        rhs = b.inverse() * a * b
        hom = max(hom, float(np.linalg.norm(embed(grassmann_op(V, W)).coeffs - rhs.coeffs)))
    report.add("homomorphism", hom, conj_eps)

    want = "even" if route == "spin" else "odd"
    report.add("parity_mismatches", sum(a.parity != want for a in iv), 0)
    proj = max(float(np.abs(projection(a) - grassmann_embed(V)).max())
               for (V, _, _), a in zip(triples, iv))
    report.add("projection_consistency", proj, conj_eps)
    if route == "spin":
        law = max(float(np.linalg.norm(embed(V.reversed()).coeffs + a.coeffs))
                  for (V, _, _), a in zip(triples, iv))
        report.add("orientation_sign_law", law, conj_eps)

    both = [t[0] for t in triples] + [t[0].reversed() for t in triples]
    pts = np.array([V.plucker() for V in both])
    imgs = np.array([embed(V).coeffs for V in both])
    report.add("separation", min_separation(pts, imgs), SEPARATION, at_least=True)
    return report
