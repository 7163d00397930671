from fractions import Fraction as F

import pytest

from fmwalls import InvalidInput, brute_force_I1, crosscheck_walls, mv
from fmwalls.oracle import oracle_wall_pairs


def test_brute_force_examples(L1, L2):
    hits = brute_force_I1(L2, mv(2, (0, 5), -1), 6)
    for y in range(-6, 7):
        assert mv(1, (0, y), 0) in hits
    # rank-0 candidates on the same ray as xi pair to 2, never 1
    assert all(not (u.r == 0 and u.xi[0] == 0) for u in hits)

    assert brute_force_I1(L2, mv(2, (0, 4), -2), 4) == []  # non-primitive

    hits = brute_force_I1(L1, mv(1, (1,), 0), 8)
    assert hits == [mv(0, (0,), -1), mv(1, (1,), 1)]


def test_brute_force_rejects_bad_box(L1):
    with pytest.raises(InvalidInput):
        brute_force_I1(L1, mv(1, (1,), 0), 0)


def test_oracle_monotone_in_box(L2):
    v = mv(2, (0, 5), -1)
    small = set(brute_force_I1(L2, v, 4))
    large = set(brute_force_I1(L2, v, 7))
    assert small <= large


def test_crosscheck_examples(L1, L2):
    ck = crosscheck_walls(L2, mv(2, (0, 5), -1), F(0), F(10), 12)
    assert ck.agree
    assert [(p, u) for p, u in ck.oracle_pairs] == [
        (F(1, 3), mv(1, (0, 1), 0)),
        (F(2), mv(1, (0, 2), 0)),
    ]
    ck = crosscheck_walls(L1, mv(2, (2,), 1), F(0), F(10), 10)
    assert ck.agree and ck.oracle_pairs == ()
    ck = crosscheck_walls(L2, mv(1, (0, 5), -2), F(0), F(10), 12)
    assert ck.agree
    assert {p for p, _ in ck.oracle_pairs} == {3, F(1, 2)}


def test_crosscheck_isotropic_vector_has_no_walls(L2):
    # I1 members exist for isotropic v but none cuts a wall
    ck = crosscheck_walls(L2, mv(1, (1, 0), 0), F(0), F(10), 7)
    assert ck.agree and ck.oracle_pairs == () and ck.fast_pairs == ()
    assert brute_force_I1(L2, mv(1, (1, 0), 0), 7) != []


def test_oracle_pairs_respect_window(L2):
    v = mv(2, (0, 5), -1)
    pairs = oracle_wall_pairs(L2, v, F(1), F(10), 12)
    assert [p for p, _ in pairs] == [2]
