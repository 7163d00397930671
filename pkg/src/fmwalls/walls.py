"""Totally semistable walls along the line (0, tH) and in the ample cone.

A wall for v is cut out by an isotropic u with <v,u> = 1; the line meets it
where the two central charges become collinear, at

    t^2 * n = (a1*d - a*d1) / (r1*d - r*d1),    n = (H^2)/2,

with d-components from the orthogonal splitting of the degrees.  Applying the
rational-degree identity of isotropic pairs to the pieces u and w = v - l*u
(l = <v^2>/2) gives

    d1*(d - l*d1) = -((d*xi1 - d1*xi)^2)/2 + m*A^2,

where m = t^2*n and A = d*r1 - d1*r.  Both right-hand terms are nonnegative
on a genuine wall, so every witness satisfies 0 < d1 < d/l, its degree class
lies in an explicit ellipsoid slice of the H-orthogonal space, and wall
positions are bounded above by (xi.H)^2/(4*n*l).  The enumeration below walks
those finite slices; `certified` records whether the requested coordinate
radius covers them entirely.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .lattice import FracVec, InvalidInput, Surface, ints_within
from .mukai import MukaiVector, check_same_rank, is_primitive, pairing, square


class WallPosition(enum.Enum):
    NO_INTERSECTION = "no_intersection"
    DEGENERATE = "degenerate"


def in_I1(surface: Surface, v: MukaiVector, u: MukaiVector) -> bool:
    """True iff <u^2> = 0 and <v,u> = 1."""
    return square(surface, u) == 0 and pairing(surface, v, u) == 1


def defines_wall(surface: Surface, v: MukaiVector, v1: MukaiVector) -> bool:
    """Wall criterion for v1 against v.

    <v1^2> >= 0, <(v-v1)^2> >= 0, <v1,v-v1> > 0 and <v1,v>^2 > <v1^2><v^2>.
    The last inequality is printed with the opposite orientation in parts of
    the literature; the hyperbolic-pair orientation used here is the one
    consistent with walls of isotropic witnesses.
    """
    rest = MukaiVector(v.r - v1.r, tuple(a - b for a, b in zip(v.xi, v1.xi)), v.a - v1.a)
    if square(surface, v1) < 0 or square(surface, rest) < 0:
        return False
    if pairing(surface, v1, rest) <= 0:
        return False
    return pairing(surface, v1, v) ** 2 > square(surface, v1) * square(surface, v)


@dataclass(frozen=True)
class Decomposition:
    """v = ell*u + w with u, w isotropic and <u,w> = 1."""

    ell: int
    u: MukaiVector
    w: MukaiVector


def tss_decompose(surface: Surface, v: MukaiVector, u: MukaiVector) -> Decomposition:
    """Decomposition v = l*u + w attached to a witness u with <v,u> = 1."""
    if not in_I1(surface, v, u):
        raise InvalidInput("witness_in_I1", f"{u} is not an isotropic vector pairing to 1 with v")
    sq = square(surface, v)
    if sq <= 0 or sq % 2 != 0:
        raise InvalidInput("square_positive_even", f"<v^2>={sq} must be positive and even")
    ell = sq // 2
    w = MukaiVector(v.r - ell * u.r, tuple(c - ell * b for c, b in zip(v.xi, u.xi)), v.a - ell * u.a)
    assert square(surface, w) == 0 and pairing(surface, u, w) == 1
    return Decomposition(ell, u, w)


def wall_position_line(
    surface: Surface, v: MukaiVector, u: MukaiVector
) -> Fraction | WallPosition:
    """Squared position t^2 where the charges of v and u become collinear.

    NO_INTERSECTION when the collinearity equation has no positive solution,
    DEGENERATE when the charges are proportional along the whole line.
    """
    check_same_rank(surface, v, u)
    d = surface.h_split(v.xi).d
    if d <= 0:
        raise InvalidInput("degree_positive", "(xi.H) must be positive")
    d1 = surface.h_split(u.xi).d
    num = u.a * d - v.a * d1
    den = u.r * d - v.r * d1
    if den == 0:
        return WallPosition.DEGENERATE if num == 0 else WallPosition.NO_INTERSECTION
    tsq = num / (den * surface.n)
    if tsq <= 0:
        return WallPosition.NO_INTERSECTION
    return tsq


@dataclass(frozen=True)
class WallOnLine:
    tsq: Fraction
    witnesses: tuple[MukaiVector, ...]
    decomposition: Decomposition


@dataclass(frozen=True)
class WallScan:
    walls: tuple[WallOnLine, ...]
    certified: bool
    limiting: str | None
    tsq_lo: Fraction
    tsq_hi: Fraction
    radius: int | None
    degenerate_witnesses: tuple[MukaiVector, ...] = ()


def max_wall_tsq(surface: Surface, v: MukaiVector) -> Fraction:
    """A-priori upper bound (xi.H)^2 / (4*n*l) on squared wall positions."""
    sq = square(surface, v)
    if sq <= 0:
        return Fraction(0)
    xi_h = surface.intersect(v.xi, surface.ample)
    return Fraction(xi_h * xi_h, 4 * surface.n * (sq // 2))


def _witness_coefficients(v: MukaiVector, s: int, p: int) -> list[tuple[int, int]]:
    """Integer (r1, a1) with 2*r1*a1 = s and r*a1 + a*r1 = p.

    s = (xi1^2) and p = (xi.xi1) - 1 for the candidate degree class; the free
    family at r = a = p = s = 0 never yields a positive position and is
    skipped.
    """
    r, a = v.r, v.a
    out: list[tuple[int, int]] = []
    if s % 2 != 0:
        return out
    if r != 0:
        # 2*a*r1^2 - 2*p*r1 + r*s = 0
        if a != 0:
            disc = p * p - 2 * a * r * s
            if disc < 0:
                return out
            root = _isqrt_exact(disc)
            if root is None:
                return out
            for num in {p + root, p - root}:
                if num % (2 * a) == 0:
                    r1 = num // (2 * a)
                    if (p - a * r1) % r == 0:
                        out.append((r1, (p - a * r1) // r))
        else:
            if p != 0 and (r * s) % (2 * p) == 0 and p % r == 0:
                r1, a1 = r * s // (2 * p), p // r
                if 2 * r1 * a1 == s:
                    out.append((r1, a1))
            # p == 0: solutions need s == 0 and give a1 = 0; no position.
    else:
        if a == 0:
            return out
        if p % a != 0:
            return out
        r1 = p // a
        if r1 == 0:
            return out  # rank-0 pieces on both sides never cut the line
        if s % (2 * r1) == 0:
            out.append((r1, s // (2 * r1)))
    return sorted(set(out))


def _isqrt_exact(x: int) -> int | None:
    from math import isqrt

    root = isqrt(x)
    return root if root * root == x else None


def enumerate_tss_walls_line(
    surface: Surface,
    v: MukaiVector,
    tsq_lo: Fraction = Fraction(0),
    tsq_hi: Fraction = Fraction(10),
    radius: int | None = 12,
    _allow_rank_zero: bool = False,
) -> WallScan:
    """All totally semistable walls of v meeting the line in (tsq_lo, tsq_hi].

    Witnesses with equal positions are merged into one wall; the reported
    decomposition comes from the lexicographically least witness.  `radius`
    bounds the degree-class coordinates searched; the scan is certified when
    the derived ellipsoid slices fit inside that box, in which case the wall
    list is provably complete for the window.  Pass radius=None to search the
    full (always finite) ellipsoids.
    """
    check_same_rank(surface, v)
    tsq_lo, tsq_hi = Fraction(tsq_lo), Fraction(tsq_hi)
    if tsq_lo < 0 or tsq_hi <= tsq_lo:
        raise InvalidInput("window", f"need 0 <= lo < hi, got ({tsq_lo}, {tsq_hi}]")
    if radius is not None and radius < 1:
        raise InvalidInput("radius_positive", "radius must be >= 1")
    if v.r < 0 or (v.r == 0 and not _allow_rank_zero):
        raise InvalidInput("rank_positive", f"r={v.r} must be positive")
    xi_h = surface.intersect(v.xi, surface.ample)
    if xi_h <= 0:
        raise InvalidInput("degree_positive", f"(xi.H)={xi_h} must be positive")

    def empty(certified: bool = True, limiting: str | None = None) -> WallScan:
        return WallScan((), certified, limiting, tsq_lo, tsq_hi, radius)

    if not is_primitive(v):
        return empty()  # <v,u> = 1 is unsolvable modulo the content of v
    sq = square(surface, v)
    if sq <= 0:
        return empty()  # isotropic or negative square: no walls on the line
    ell = sq // 2
    n = surface.n
    d = Fraction(xi_h, 2 * n)
    consts = surface.coord_bound_consts()
    certified = True
    limiting: str | None = None
    by_position: dict[Fraction, set[MukaiVector]] = {}
    degenerate: set[MukaiVector] = set()

    k = 1
    while ell * k < xi_h:
        d1 = Fraction(k, 2 * n)
        d2 = d - ell * d1
        ball_sq = 2 * d1 * d2 / (d * d)
        center = tuple(d1 / d * c for c in v.xi)
        ranges: list[range] = []
        for i in range(surface.rank):
            rng = ints_within(center[i], consts[i] * ball_sq)
            if radius is not None and len(rng) and (rng.start < -radius or rng.stop - 1 > radius):
                certified = False
                limiting = (
                    f"radius {radius} does not cover the degree slice (xi1.H)={k}"
                    f" (coordinate {i} needs [{rng.start},{rng.stop - 1}])"
                )
                rng = range(max(rng.start, -radius), min(rng.stop, radius + 1))
            ranges.append(rng)
        for xi1 in product(*ranges):
            if surface.intersect(xi1, surface.ample) != k:
                continue
            diff = tuple(Fraction(c) - cc for c, cc in zip(xi1, center))
            if -surface.intersect(diff, diff) > ball_sq:
                continue
            s = int(surface.intersect(xi1, xi1))
            p = int(surface.intersect(v.xi, xi1)) - 1
            for r1, a1 in _witness_coefficients(v, s, p):
                u = MukaiVector(r1, tuple(xi1), a1)
                assert in_I1(surface, v, u)
                pos = wall_position_line(surface, v, u)
                if pos is WallPosition.DEGENERATE:
                    degenerate.add(u)
                    continue
                if pos is WallPosition.NO_INTERSECTION:
                    continue
                if tsq_lo < pos <= tsq_hi:
                    by_position.setdefault(pos, set()).add(u)
        k += 1

    walls = []
    for pos in sorted(by_position, reverse=True):
        witnesses = tuple(sorted(by_position[pos]))
        walls.append(WallOnLine(pos, witnesses, tss_decompose(surface, v, witnesses[0])))
    return WallScan(tuple(walls), certified, limiting, tsq_lo, tsq_hi, radius, tuple(sorted(degenerate)))


# -- decompositions separating Gieseker chambers in the ample cone ----------


@dataclass(frozen=True)
class AmpWallWitness:
    v1: MukaiVector
    v2: MukaiVector
    delta: tuple[int, ...]
    ample_orthogonal: FracVec


def amp_decompositions(surface: Surface, v: MukaiVector, radius: int) -> list[AmpWallWitness]:
    """Decompositions v = l*v1 + v2 cutting totally semistable walls in the
    ample cone: both pieces isotropic of positive rank, <v1,v2> = 1, and
    delta = r2*xi1 - r1*xi2 negative; searched over |xi1 coords| <= radius.
    """
    check_same_rank(surface, v)
    if v.r <= 0:
        raise InvalidInput("rank_positive", f"r={v.r} must be positive")
    if radius < 1:
        raise InvalidInput("radius_positive", "radius must be >= 1")
    sq = square(surface, v)
    if sq <= 0 or sq % 2 != 0 or not is_primitive(v):
        return []
    ell = sq // 2
    if sq >= 2 * v.r:
        return []  # r = l*r1 + r2 > l forces 2r > <v^2>
    found = []
    for r1 in range(1, (v.r - 1) // ell + 1):
        for xi1 in product(range(-radius, radius + 1), repeat=surface.rank):
            s = surface.intersect(xi1, xi1)
            if s % (2 * r1) != 0:
                continue
            a1 = s // (2 * r1)
            if abs(a1) > radius:
                continue
            v1 = MukaiVector(r1, tuple(xi1), a1)
            if pairing(surface, v, v1) != 1:
                continue
            v2 = MukaiVector(
                v.r - ell * r1,
                tuple(c - ell * b for c, b in zip(v.xi, xi1)),
                v.a - ell * a1,
            )
            if v2.r <= 0:
                continue
            delta = tuple(v2.r * b - r1 * c for b, c in zip(xi1, v2.xi))
            if surface.intersect(delta, delta) >= 0:
                continue
            found.append(AmpWallWitness(v1, v2, delta, surface.orth_ample(delta)))
    found.sort(key=lambda w: (w.v1, w.v2))
    return found


IRREDUCIBLE = "irreducible"
IRREDUCIBLE_WITHIN_RADIUS = "irreducible_within_radius"
POSSIBLY_SEPARATED = "possibly_separated"


def amp_irreducibility_check(
    surface: Surface, v: MukaiVector, radius: int
) -> tuple[str, list[AmpWallWitness]]:
    """Irreducibility of the stack of semistable sheaves across polarizations.

    <v^2> >= 2r settles it unconditionally; otherwise the decomposition
    search decides within the given radius.
    """
    check_same_rank(surface, v)
    if v.r <= 0:
        raise InvalidInput("rank_positive", f"r={v.r} must be positive")
    if square(surface, v) >= 2 * v.r:
        return IRREDUCIBLE, []
    witnesses = amp_decompositions(surface, v, radius)
    if witnesses:
        return POSSIBLY_SEPARATED, witnesses
    return IRREDUCIBLE_WITHIN_RADIUS, []
