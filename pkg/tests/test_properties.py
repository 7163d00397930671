"""Randomized property suites: at least 1000 cases each across L1 and L2,
coefficient bound 8, fixed seeds.  The samplers are constructive so case
counts are exact, not best-effort."""

import random
from itertools import product

import pytest

from fmwalls import (
    EQUAL,
    MukaiVector,
    WallPosition,
    compute_regimes,
    fm_transform,
    is_primitive,
    mukai_uu_identity,
    mv,
    pairing,
    slope_compare,
    square,
    tss_decompose,
    twist,
    wall_position_line,
)

BOUND = 8


def _random_vector(rng, rank, bound=BOUND):
    return mv(
        rng.randint(-bound, bound),
        tuple(rng.randint(-bound, bound) for _ in range(rank)),
        rng.randint(-bound, bound),
    )


def _isotropic_pool(surface, bound=BOUND):
    pool = []
    for r in range(-bound, bound + 1):
        for xi in product(range(-bound, bound + 1), repeat=surface.rank):
            s = surface.intersect(xi, xi)
            if r == 0:
                if s == 0:
                    pool.extend(MukaiVector(0, xi, a) for a in range(-bound, bound + 1))
            elif s % (2 * r) == 0 and abs(s // (2 * r)) <= bound:
                pool.append(MukaiVector(r, xi, s // (2 * r)))
    return pool


_POOLS = {}


def isotropic_pool(surface):
    if surface.name not in _POOLS:
        _POOLS[surface.name] = _isotropic_pool(surface)
    return _POOLS[surface.name]


def suite_pairing_bilinear(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(101)
    count = 0
    for surface in surfaces:
        for _ in range(cases_per_surface):
            x = _random_vector(rng, surface.rank)
            y = _random_vector(rng, surface.rank)
            z = _random_vector(rng, surface.rank)
            m, n = rng.randint(-4, 4), rng.randint(-4, 4)
            assert pairing(surface, x, y) == pairing(surface, y, x)
            combo = mv(
                m * x.r + n * y.r,
                tuple(m * a + n * b for a, b in zip(x.xi, y.xi)),
                m * x.a + n * y.a,
            )
            assert pairing(surface, combo, z) == m * pairing(surface, x, z) + n * pairing(surface, y, z)
            count += 1
    return count


def suite_fm_isometry(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(102)
    count = 0
    for surface in surfaces:
        for _ in range(cases_per_surface):
            v = _random_vector(rng, surface.rank)
            w = _random_vector(rng, surface.rank)
            assert pairing(surface, fm_transform(v), fm_transform(w)) == pairing(surface, v, w)
            assert fm_transform(fm_transform(v)) == v
            count += 1
    return count


def suite_twist(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(103)
    count = 0
    for surface in surfaces:
        for _ in range(cases_per_surface):
            v = _random_vector(rng, surface.rank)
            eta = tuple(rng.randint(-BOUND, BOUND) for _ in range(surface.rank))
            t = twist(surface, v, eta)
            assert square(surface, t) == square(surface, v)
            assert twist(surface, t, tuple(-e for e in eta)) == v
            count += 1
    return count


def suite_uu_identity(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(104)
    count = 0
    for surface in surfaces:
        pool = isotropic_pool(surface)
        for _ in range(cases_per_surface):
            u1, u2 = rng.choice(pool), rng.choice(pool)
            lhs, rhs = mukai_uu_identity(surface, u1, u2)
            assert lhs == rhs
            count += 1
    return count


def _decomposition_samples(surface, rng):
    """(v, u, w, ell) with u, w isotropic, <u,w> = 1, v = ell*u + w."""
    pool = isotropic_pool(surface)
    while True:
        u, w = rng.choice(pool), rng.choice(pool)
        if pairing(surface, u, w) != 1:
            continue
        ell = rng.randint(1, 4)
        v = mv(
            ell * u.r + w.r,
            tuple(ell * a + b for a, b in zip(u.xi, w.xi)),
            ell * u.a + w.a,
        )
        yield v, u, w, ell


def suite_decomposition_identity(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(105)
    count = 0
    for surface in surfaces:
        samples = _decomposition_samples(surface, rng)
        for _ in range(cases_per_surface):
            v, u, w, ell = next(samples)
            assert pairing(surface, v, u) == 1 and square(surface, v) == 2 * ell
            dec = tss_decompose(surface, v, u)
            assert (dec.ell, dec.u, dec.w) == (ell, u, w)
            assert square(surface, dec.w) == 0 and pairing(surface, dec.u, dec.w) == 1
            count += 1
    return count


def suite_wall_position_witness_independence(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(106)
    count = 0
    for surface in surfaces:
        done = 0
        samples = _decomposition_samples(surface, rng)
        while done < cases_per_surface:
            v, u, w, ell = next(samples)
            if surface.intersect(v.xi, surface.ample) <= 0:
                continue
            pu = wall_position_line(surface, v, u)
            pw = wall_position_line(surface, v, w)
            if not isinstance(pu, WallPosition) and not isinstance(pw, WallPosition):
                assert pu == pw
                if surface.h_split(u.xi).d > 0:
                    assert slope_compare(surface, v, u, pu) == EQUAL
            done += 1
            count += 1
    return count


def suite_regime_monotonicity(surfaces, cases_per_surface=500) -> int:
    rng = random.Random(107)
    count = 0
    for surface in surfaces:
        done = 0
        while done < cases_per_surface:
            v = _random_vector(rng, surface.rank)
            if v.r <= 0 or surface.intersect(v.xi, surface.ample) <= 0 or not is_primitive(v):
                continue
            rep = compute_regimes(surface, v, 8)
            assert rep.t1sq >= rep.t2sq >= 0
            severities = [w.regime_below.severity for w in rep.walls]
            assert severities == sorted(severities)
            positions = [w.wall.tsq for w in rep.walls]
            assert positions == sorted(positions, reverse=True)
            done += 1
            count += 1
    return count


ALL_SUITES = {
    "pairing_bilinear": suite_pairing_bilinear,
    "fm_isometry": suite_fm_isometry,
    "twist": suite_twist,
    "uu_identity": suite_uu_identity,
    "decomposition_identity": suite_decomposition_identity,
    "wall_position_witness_independence": suite_wall_position_witness_independence,
    "regime_monotonicity": suite_regime_monotonicity,
}


@pytest.mark.parametrize("name", sorted(ALL_SUITES))
def test_property_suite(name, L1, L2):
    count = ALL_SUITES[name]((L1, L2))
    assert count >= 1000
