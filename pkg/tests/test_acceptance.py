"""Acceptance criteria 1-10.

Each test records one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line, printed immediately and repeated in the terminal summary.
"""

from __future__ import annotations

import contextlib
import math
from collections import defaultdict

import numpy as np
import pytest

from _catalog import automorphisms_for, catalog_groups, catalog_triplets, coordinate_swap, multiplier
from conftest import ACCEPTANCE_LINES
from homquandle.clifford import lift_orthogonal, projection
from homquandle.embed import (
    bergman_embed,
    embed_inner,
    embed_semidirect,
    embeddability_report,
    factor_map,
)
from homquandle.errors import ThetaPi
from homquandle.geometry import (
    OrientedSubspace,
    oriented_grassmann_embed,
    quat_mul,
    spherical_embed,
    spin3_quaternion_bridge,
    theta_embed,
)
from homquandle.groups import (
    automorphism_from_conjugation,
    bergman_element,
    cyclic_group,
    dihedral_group,
    direct_product,
    fix_subgroup,
    generated_subgroup,
    symmetric_group,
    trivial_subgroup,
)
from homquandle.quandles import (
    QuandleTriplet,
    alexander_quandle,
    check_quandle_axioms,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    find_isomorphism,
    is_homomorphism,
    is_isomorphism,
    joyce_triplet,
    least_collision,
    subquandle,
    triplet_quandle,
)
from homquandle.sampling import (
    check_grassmann,
    check_oriented_grassmann,
    check_rotation,
    check_sphere,
    random_orthogonal,
    random_unit,
    sample_rng,
)

# pinned limits
HOM_LIMIT = 1e-8
SEPARATION_LIMIT = 1e-6
EIGENSPACE_LIMIT = 1e-9
ROUND_TRIP_LIMIT = 1e-10
SIGN_LAW_LIMIT = 1e-8
QUATERNION_LIMIT = 1e-10
SAMPLES = 200
SEED = 0xC0FFEE

SPIN = [(3, 1), (4, 2), (5, 1), (5, 3)]
PIN = [(3, 2), (4, 1), (5, 2)]
GRASSMANN = [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)]
THETAS = [0.5, 1.0, math.pi / 3, 2 * math.pi / 3, 4.0, 5.5]


@contextlib.contextmanager
def criterion(n: int, text: str):
    try:
        yield
    except BaseException as exc:
        line = f"FAIL criterion {n}: {text} ({type(exc).__name__}: {exc})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"PASS criterion {n}: {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def semidirect_coords_ok(report) -> bool:
    """Every image equals ``(sigma(g^-1) g, 1)`` for the coset representative g."""
    T, Gh = report.triplet, report.target_group
    G, s = T.G, T.sigma.image
    for c, g in enumerate(report.cosets.reps):
        want = (G.op(int(s[G.inverse(g)]), g), 1)
        if Gh.coords[report.map.image[c]] != want:
            return False
    return True


# ---------------------------------------------------------------------------

def test_criterion_1_axiom_suite():
    with criterion(1, "conj, core, alex, triplet and dihedral constructors satisfy the axioms"):
        checked = 0
        for name, G in catalog_groups():
            tables = [conj_quandle(G, validate=False), core_quandle(G)]
            tables += [alexander_quandle(G, s) for _, s in automorphisms_for(name, G)]
            for Q in tables:
                r = check_quandle_axioms(Q.op)
                assert r.ok, (name, r.summary())
                checked += 1
        for _, _, T in catalog_triplets():
            Q, _ = triplet_quandle(T)
            assert check_quandle_axioms(Q.op).ok
            checked += 1
        for n in range(1, 13):
            assert check_quandle_axioms(dihedral_quandle(n).op).ok
            checked += 1
        assert checked > 100


def test_criterion_2_fix_criterion_equivalence():
    with criterion(2, "Embedding iff Fix(sigma) = H, with a collision pair on every negative"):
        by_pair = defaultdict(list)
        for key, h, T in catalog_triplets():
            if len(T.fix().members) > 1:
                by_pair[key].append((h, T))
        total = 0
        for key, items in by_pair.items():
            labels = [h for h, _ in items]
            assert "Fix" in labels and len(labels) >= 2, key  # Fix and a proper H
            for h, T in items:
                r = embeddability_report(T)  # inner when sigma is inner, else semidirect
                assert r.is_embedding == T.fix_equals_h() == (h == "Fix"), (key, h)
                assert bool(is_homomorphism(r.map))
                if not r.is_embedding:
                    i, j = r.certificate
                    assert i != j and r.map.image[i] == r.map.image[j]
                else:
                    assert least_collision(r.map.image) is None
                total += 1
        assert total >= 40, total


def test_criterion_3_semidirect_images():
    with criterion(3, "semidirect images are (sigma(g^-1) g, 1), injective iff Fix = H"):
        Z5, Z7 = cyclic_group(5), cyclic_group(7)
        V = direct_product(cyclic_group(2), cyclic_group(2))
        sw = coordinate_swap(V)
        diag = fix_subgroup(sw)
        assert sorted(V.coords[g] for g in diag) == [(0, 0), (1, 1)]
        cases = [
            QuandleTriplet(Z5, trivial_subgroup(Z5), multiplier(Z5, 2)),
            QuandleTriplet(Z7, trivial_subgroup(Z7), multiplier(Z7, 3)),
            QuandleTriplet(V, diag, sw),
            QuandleTriplet(V, trivial_subgroup(V), sw),  # proper H: must collide
        ]
        for T in cases:
            r = embed_semidirect(T)
            assert semidirect_coords_ok(r)
            assert bool(is_homomorphism(r.map))
            assert (least_collision(r.map.image) is None) == T.fix_equals_h() == r.is_embedding
        assert [embed_semidirect(T).is_embedding for T in cases] == [True, True, True, False]


def test_criterion_4_generalized_alexander():
    with criterion(4, "fixed-point-free sigma with H = {e} embeds (Z5 x2, Z7 x3)"):
        for n, a in [(5, 2), (7, 3)]:
            G = cyclic_group(n)
            sigma = multiplier(G, a)
            assert len(fix_subgroup(sigma)) == 1
            r = embed_semidirect(QuandleTriplet(G, trivial_subgroup(G), sigma))
            assert r.verdict == "Embedding"


def test_criterion_5_bergman():
    with criterion(5, "inner embedding of the switching triplet equals f_B(g) = (g, g^-1, -1)"):
        for G in [cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)]:
            b = bergman_embed(G)
            assert b.fix_equals_diagonal and b.report.is_embedding
            e = G.identity
            assert b.report.witness_q == bergman_element(G, e, e, -1)
            assert bool(is_isomorphism(b.core_iso))
            for g in range(G.order):
                got = b.report.map.image[b.core_iso.image[g]]
                assert got == bergman_element(G, g, G.inverse(g), -1)
            assert b.ok


def test_criterion_6_factor_map():
    with criterion(6, "factor map composed with the inner embedding gives the semidirect one"):
        S = symmetric_group(3)
        q = S.index((1, 0, 2))
        cases = [(S, q, QuandleTriplet(S, generated_subgroup(S, [q]),
                                       automorphism_from_conjugation(S, q)))]
        D = dihedral_group(4)
        qd = next(x for x in range(D.order)
                  if not automorphism_from_conjugation(D, x).is_identity())
        sd = automorphism_from_conjugation(D, qd)
        cases.append((D, qd, QuandleTriplet(D, fix_subgroup(sd), sd)))
        for G, q, T in cases:
            inner = embed_inner(T, q)
            semi = embed_semidirect(T)
            phi = factor_map(G, T.sigma, q, semi.modulus)
            assert bool(is_homomorphism(phi)) and least_collision(phi.image) is None
            assert np.array_equal(phi.image[inner.map.image], semi.map.image)
            assert inner.is_embedding and semi.is_embedding


def test_criterion_7_joyce_round_trip():
    with criterion(7, "Joyce triplets of R3, R5 and the S3 transpositions reproduce the input"):
        S = symmetric_group(3)
        transpositions = [S.index(p) for p in [(1, 0, 2), (2, 1, 0), (0, 2, 1)]]
        orbit, _ = subquandle(conj_quandle(S), transpositions)
        for X in [dihedral_quandle(3), dihedral_quandle(5), orbit]:
            T, _ = joyce_triplet(X)
            Q, _ = triplet_quandle(T)
            iso = find_isomorphism(Q, X)
            assert iso is not None and bool(is_isomorphism(iso))


def _assert_report(r):
    hom = r.check("homomorphism")
    assert hom.value <= HOM_LIMIT, (r.family, r.params, hom.value)
    sep = r.check("separation")
    assert sep.value >= SEPARATION_LIMIT, (r.family, r.params, sep.value)
    if r.family == "grassmann":
        assert r.check("eigenspace_round_trip").value <= EIGENSPACE_LIMIT
    assert r.samples == SAMPLES
    assert r.ok, r.to_dict()


def test_criterion_8_geometric_residuals():
    with criterion(8, "geometric embeddings: residual <= 1e-8, separation >= 1e-6, "
                      "eigenspace round trip <= 1e-9 over 200 samples"):
        reports = [check_sphere(n, SAMPLES, SEED) for n in (1, 2, 3, 4)]
        reports += [check_rotation(t, SAMPLES, SEED) for t in THETAS]
        reports += [check_grassmann(n, k, SAMPLES, SEED) for n, k in GRASSMANN]
        reports += [check_oriented_grassmann(n, k, SAMPLES, SEED) for n, k in SPIN + PIN]
        for r in reports:
            _assert_report(r)


def _rotation3(rng):
    g = random_orthogonal(3, rng)
    if np.linalg.det(g) < 0:
        g[0] = -g[0]
    return g


def test_criterion_9_spin_pin_structure():
    with criterion(9, "lift round trip, orientation sign law, spherical vs oriented, "
                      "quaternion bridge multiplicative"):
        for n in range(2, 7):
            worst = max(float(np.abs(projection(lift_orthogonal(g)) - g).max())
                        for g in (random_orthogonal(n, sample_rng(SEED, i)) for i in range(100)))
            assert worst <= ROUND_TRIP_LIMIT, (n, worst)
        for n, k in SPIN:
            r = check_oriented_grassmann(n, k, SAMPLES, SEED)
            assert r.check("orientation_sign_law").value <= SIGN_LAW_LIMIT
        for i in range(100):
            x = random_unit(3, sample_rng(SEED, i))
            a = spherical_embed(x).coeffs
            b = oriented_grassmann_embed(OrientedSubspace(x[None, :])).coeffs
            assert min(np.abs(a - b).max(), np.abs(a + b).max()) <= ROUND_TRIP_LIMIT
        worst = 0.0
        for i in range(100):
            rng = sample_rng(SEED, i)
            a, b = lift_orthogonal(_rotation3(rng)), lift_orthogonal(_rotation3(rng))
            assert a.parity == b.parity == "even"
            lhs = spin3_quaternion_bridge(a * b)
            rhs = quat_mul(spin3_quaternion_bridge(a), spin3_quaternion_bridge(b))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        assert worst <= QUATERNION_LIMIT, worst


def test_criterion_10_theta_pi():
    with criterion(10, "theta = pi is rejected and the Spin(3) spherical route passes"):
        with pytest.raises(ThetaPi):
            theta_embed(np.array([1.0, 0.0, 0.0]), math.pi)
        with pytest.raises(ThetaPi):
            check_rotation(math.pi, samples=5)
        _assert_report(check_sphere(2, SAMPLES, SEED))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
