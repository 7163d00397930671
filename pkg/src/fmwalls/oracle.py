"""Brute-force reference implementations backing the test suite.

Deliberately naive: full box scans plus exact predicate checks.  Every
derived expected value in the tests was reproduced through this module
before being frozen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .lattice import InvalidInput, Surface
from .mukai import MukaiVector
from .walls import WallPosition, defines_wall, enumerate_tss_walls_line, wall_position_line


def brute_force_I1(surface: Surface, v: MukaiVector, box: int) -> list[MukaiVector]:
    """All u with |r1|, |a1| and every degree coordinate <= box, <u^2> = 0
    and <v,u> = 1, by exhaustive scan."""
    if box < 1:
        raise InvalidInput("box_positive", "box must be >= 1")
    coeffs = range(-box, box + 1)
    hits = []
    for xi1 in product(coeffs, repeat=surface.rank):
        s = surface.intersect(xi1, xi1)
        p = surface.intersect(v.xi, xi1)
        for r1 in coeffs:
            for a1 in coeffs:
                if 2 * r1 * a1 == s and p - v.r * a1 - r1 * v.a == 1:
                    hits.append(MukaiVector(r1, xi1, a1))
    hits.sort()
    return hits


@dataclass(frozen=True)
class CrossCheck:
    agree: bool
    oracle_pairs: tuple[tuple[Fraction, MukaiVector], ...]
    fast_pairs: tuple[tuple[Fraction, MukaiVector], ...]

    @property
    def missing_from_fast(self) -> tuple:
        return tuple(sorted(set(self.oracle_pairs) - set(self.fast_pairs)))

    @property
    def extra_in_fast(self) -> tuple:
        return tuple(sorted(set(self.fast_pairs) - set(self.oracle_pairs)))


def oracle_wall_pairs(
    surface: Surface, v: MukaiVector, tsq_lo: Fraction, tsq_hi: Fraction, box: int
) -> list[tuple[Fraction, MukaiVector]]:
    """(position, witness) pairs from the box scan.

    Witnesses must also satisfy the wall criterion: pairing to 1 is not
    enough when <v^2> <= 0, where the line carries no walls at all.
    """
    pairs = []
    for u in brute_force_I1(surface, v, box):
        if not defines_wall(surface, v, u):
            continue
        pos = wall_position_line(surface, v, u)
        if isinstance(pos, WallPosition):
            continue
        if tsq_lo < pos <= tsq_hi:
            pairs.append((pos, u))
    pairs.sort()
    return pairs


def _within_box(u: MukaiVector, box: int) -> bool:
    return all(abs(c) <= box for c in u.coords())


def crosscheck_walls(
    surface: Surface,
    v: MukaiVector,
    tsq_lo: Fraction,
    tsq_hi: Fraction,
    box: int,
) -> CrossCheck:
    """Compare the fast enumerator against the box-scan oracle.

    Both sides are restricted to witnesses with all coefficients in the box
    (the enumerator solves ranks exactly and may legitimately step outside).
    """
    tsq_lo, tsq_hi = Fraction(tsq_lo), Fraction(tsq_hi)
    oracle_pairs = oracle_wall_pairs(surface, v, tsq_lo, tsq_hi, box)
    scan = enumerate_tss_walls_line(surface, v, tsq_lo, tsq_hi, radius=box)
    fast_pairs = sorted(
        (wall.tsq, u)
        for wall in scan.walls
        for u in wall.witnesses
        if _within_box(u, box)
    )
    return CrossCheck(fast_pairs == oracle_pairs, tuple(oracle_pairs), tuple(fast_pairs))
