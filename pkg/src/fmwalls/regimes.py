"""Role assignment at walls, crossing classes, regime thresholds, duality.

Crossing a wall downward, the Harder-Narasimhan pieces split into a positive
rank piece (a semi-homogeneous bundle) and a complementary piece whose rank
sign decides what a general object becomes just below: locally free (r2 > 0),
a sheaf with torsion (r2 = 0), or a genuine two-term complex (r2 < 0).
Scanning walls downward with a monotone state machine yields the thresholds
t1 >= t2 splitting the line into torsion-free / torsion / complex regimes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction

from .lattice import InvalidInput, Surface
from .mukai import MukaiVector, fm_dual, fm_shift, pairing, square
from .walls import (
    Decomposition,
    WallOnLine,
    WallScan,
    enumerate_tss_walls_line,
    max_wall_tsq,
    tss_decompose,
)


class NoValidRole(InvalidInput):
    """No decomposition piece satisfies the wall-role sign conditions."""


class ContractViolation(AssertionError):
    """Computed signs contradict the transform case tables: enumeration bug."""


@dataclass(frozen=True)
class RolePair:
    """Decomposition pieces ordered by wall role.

    v1 is the piece that stays a semi-homogeneous bundle across the wall
    (positive rank, r*d1 - r1*d < 0 and a*d1 - a1*d < 0); v2 is the other.
    Multiplicities l1, l2 are {l, 1} in some order.
    """

    v1: MukaiVector
    ell1: int
    v2: MukaiVector
    ell2: int


def assign_roles(surface: Surface, v: MukaiVector, dec: Decomposition) -> RolePair:
    """Pick the bundle-side piece of a decomposition at a line wall."""
    d = surface.h_split(v.xi).d
    pieces = ((dec.u, dec.ell), (dec.w, 1))
    chosen = None
    for piece, mult in pieces:
        dp = surface.h_split(piece.xi).d
        if piece.r > 0 and v.r * dp - piece.r * d < 0 and v.a * dp - piece.a * d < 0:
            if chosen is not None:
                raise NoValidRole("role_unique", "both pieces satisfy the role conditions")
            chosen = (piece, mult)
    if chosen is None:
        raise NoValidRole("role_exists", f"no piece of {dec} qualifies as the bundle side")
    (v1, ell1) = chosen
    (v2, ell2) = next((p, m) for p, m in pieces if (p, m) != chosen)
    return RolePair(v1, ell1, v2, ell2)


class CrossingClass(enum.Enum):
    LOCALLY_FREE = "LocallyFree"
    TORSION = "Torsion"
    COMPLEX = "Complex"

    @property
    def severity(self) -> int:
        return (CrossingClass.LOCALLY_FREE, CrossingClass.TORSION, CrossingClass.COMPLEX).index(self)


def classify_crossing(roles: RolePair) -> CrossingClass:
    """General object just below the wall: keyed on the sign of rank(v2)."""
    if roles.v2.r < 0:
        return CrossingClass.COMPLEX
    if roles.v2.r == 0:
        return CrossingClass.TORSION
    return CrossingClass.LOCALLY_FREE


A_POS = "APos"
A_NEG = "ANeg"


@dataclass(frozen=True)
class FmCaseTag:
    """Sub-case of the transform tables, keyed on sign(a) and piece signs."""

    side: str
    case: str
    exceptional: bool


def classify_crossing_fm(surface: Surface, v: MukaiVector, roles: RolePair) -> FmCaseTag:
    """Match a wall crossing against the transform case tables.

    Side APos covers a > 0 (dualized transform), ANeg covers a <= 0 (shifted
    transform).  Exceptional cases are APos(2)(b) and ANeg(2)(a): there the
    transform of the v2 piece fails to be a bundle.
    """
    a1, a2, r2 = roles.v1.a, roles.v2.a, roles.v2.r
    if v.a > 0:
        if a1 <= 0:
            raise ContractViolation(f"a>0 wall with a1={a1} <= 0")
        if r2 < 0:
            if a2 <= 0:
                raise ContractViolation(f"r2<0 wall with a2={a2} <= 0")
            return FmCaseTag(A_POS, "1", False)
        if r2 == 0:
            if a2 > 0:
                return FmCaseTag(A_POS, "2a", False)
            if a2 == 0:
                return FmCaseTag(A_POS, "2b", True)
            raise ContractViolation(f"a>0, r2=0 wall with a2={a2} < 0")
        return FmCaseTag(A_POS, "3a" if a2 > 0 else "3b", False)
    if a2 >= 0:
        raise ContractViolation(f"a<=0 wall with a2={a2} >= 0")
    if r2 < 0:
        if a1 >= 0:
            raise ContractViolation(f"a<=0, r2<0 wall with a1={a1} >= 0")
        return FmCaseTag(A_NEG, "1", False)
    if r2 == 0:
        if a1 == 0:
            return FmCaseTag(A_NEG, "2a", True)
        if a1 < 0:
            return FmCaseTag(A_NEG, "2b", False)
        raise ContractViolation(f"a<=0, r2=0 wall with a1={a1} > 0")
    return FmCaseTag(A_NEG, "3a" if a1 <= 0 else "3b", False)


@dataclass(frozen=True)
class AnnotatedWall:
    wall: WallOnLine
    roles: RolePair
    crossing: CrossingClass
    fm_case: FmCaseTag
    exceptional: bool
    regime_below: CrossingClass


@dataclass(frozen=True)
class RegimeReport:
    vector: MukaiVector
    walls: tuple[AnnotatedWall, ...]
    t1sq: Fraction
    t2sq: Fraction
    t1_applicable: bool
    certified: bool
    limiting: str | None
    radius: int | None
    window_hi: Fraction
    dual_of: MukaiVector | None = None


def _annotate(surface: Surface, v: MukaiVector, scan: WallScan) -> tuple[AnnotatedWall, ...]:
    out = []
    state = CrossingClass.LOCALLY_FREE
    for wall in scan.walls:
        per_witness = []
        for u in wall.witnesses:
            roles = assign_roles(surface, v, tss_decompose(surface, v, u))
            per_witness.append((classify_crossing(roles), roles, classify_crossing_fm(surface, v, roles)))
        worst = max((c for c, _, _ in per_witness), key=lambda c: c.severity)
        crossing, roles, tag = next(t for t in per_witness if t[0] is worst)
        exceptional = any(t.exceptional for _, _, t in per_witness)
        if state.severity < crossing.severity:
            state = crossing
        out.append(AnnotatedWall(wall, roles, crossing, tag, exceptional, state))
    return tuple(out)


def compute_regimes(surface: Surface, v: MukaiVector, radius: int | None = 12) -> RegimeReport:
    """Thresholds t1 >= t2 and annotated walls, scanning top-down.

    t1^2 is the position of the highest wall whose crossing is Torsion or
    Complex, t2^2 that of the highest Complex wall; both 0 when absent.  The
    window is the a-priori position bound, so certified scans see every wall.
    """
    if v.r <= 0:
        raise InvalidInput("rank_positive", f"r={v.r} must be positive")
    hi = max_wall_tsq(surface, v)
    if hi <= 0:
        scan = WallScan((), True, None, Fraction(0), Fraction(1), radius)
    else:
        scan = enumerate_tss_walls_line(surface, v, Fraction(0), hi, radius)
    walls = _annotate(surface, v, scan)
    t1 = next((w.wall.tsq for w in walls if w.crossing is not CrossingClass.LOCALLY_FREE), Fraction(0))
    t2 = next((w.wall.tsq for w in walls if w.crossing is CrossingClass.COMPLEX), Fraction(0))
    return RegimeReport(
        vector=v,
        walls=walls,
        t1sq=t1,
        t2sq=t2,
        t1_applicable=True,
        certified=scan.certified,
        limiting=scan.limiting,
        radius=radius,
        window_hi=max(hi, Fraction(1)),
    )


def dual_wall_map(surface: Surface, tsq: Fraction) -> Fraction:
    """Squared position of the mirror wall on the dual line: 1/(n^2 * t^2)."""
    tsq = Fraction(tsq)
    if tsq <= 0:
        raise InvalidInput("tsq_positive", f"t^2={tsq} must be positive")
    return 1 / (Fraction(surface.n) ** 2 * tsq)


def dual_regimes(surface: Surface, v: MukaiVector, radius: int | None = 12) -> RegimeReport:
    """Regime report for the transformed vector on the dual line.

    The dual surface is modeled on the same lattice.  For a > 0 the relevant
    vector is (a, xi, r); for a < 0 it is (-a, xi, -r).  For a = 0 the dual
    vector has rank 0: every wall crossing there produces a complex, so only
    the lower threshold applies and t1 is reported as not applicable.
    """
    if v.r <= 0:
        raise InvalidInput("rank_positive", f"r={v.r} must be positive")
    if surface.intersect(v.xi, surface.ample) <= 0:
        raise InvalidInput("degree_positive", "(xi.H) must be positive")
    if v.a > 0:
        return replace(compute_regimes(surface, fm_dual(v), radius), dual_of=v)
    if v.a < 0:
        return replace(compute_regimes(surface, fm_shift(v), radius), dual_of=v)
    vp = MukaiVector(0, v.xi, v.r)
    hi = max_wall_tsq(surface, vp)
    if hi <= 0:
        scan = WallScan((), True, None, Fraction(0), Fraction(1), radius)
    else:
        scan = enumerate_tss_walls_line(surface, vp, Fraction(0), hi, radius, _allow_rank_zero=True)
    walls = _annotate(surface, vp, scan)
    t2 = walls[0].wall.tsq if walls else Fraction(0)
    return RegimeReport(
        vector=vp,
        walls=walls,
        t1sq=t2,
        t2sq=t2,
        t1_applicable=False,
        certified=scan.certified,
        limiting=scan.limiting,
        radius=radius,
        window_hi=max(hi, Fraction(1)),
        dual_of=v,
    )


# -- exact identities and the adjacent-wall inequality suite -----------------


def mukai_uu_identity(
    surface: Surface, u1: MukaiVector, u2: MukaiVector
) -> tuple[Fraction, Fraction]:
    """Both sides of the rational-degree identity for isotropic pairs.

    lhs = d1*d2*<u1,u2>; rhs rewrites it through the orthogonal splitting.
    The two agree for every isotropic pair.
    """
    if square(surface, u1) != 0 or square(surface, u2) != 0:
        raise InvalidInput("isotropic_required", "both vectors must be isotropic")
    s1, s2 = surface.h_split(u1.xi), surface.h_split(u2.xi)
    lhs = s1.d * s2.d * pairing(surface, u1, u2)
    mixed = tuple(s2.d * x - s1.d * y for x, y in zip(s1.d_perp, s2.d_perp))
    rhs = -Fraction(surface.intersect(mixed, mixed), 2) + (s2.d * u1.r - s1.d * u2.r) * (
        s2.d * u1.a - s1.d * u2.a
    )
    return lhs, rhs


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    values: tuple[tuple[str, Fraction], ...]


@dataclass(frozen=True)
class CheckReport:
    tsq_low: Fraction
    tsq_high: Fraction
    items: tuple[CheckItem, ...]
    passed: bool


def appendix_verify(
    surface: Surface, v: MukaiVector, wall_low: WallOnLine, wall_high: WallOnLine
) -> CheckReport:
    """Exact inequality suite for an adjacent pair of line walls.

    Unprimed quantities come from the lower wall, primed from the higher one.
    Walls must be adjacent: no wall of v strictly between them.
    """
    if not wall_low.tsq < wall_high.tsq:
        raise InvalidInput("wall_order", "wall_low must sit strictly below wall_high")
    between = enumerate_tss_walls_line(surface, v, wall_low.tsq, wall_high.tsq, radius=None)
    if any(w.tsq != wall_high.tsq for w in between.walls):
        raise InvalidInput("walls_adjacent", "a wall lies strictly between the given pair")

    low = assign_roles(surface, v, wall_low.decomposition)
    high = assign_roles(surface, v, wall_high.decomposition)
    d1, d2 = (surface.h_split(low.v1.xi).d, surface.h_split(low.v2.xi).d)
    d1p, d2p = (surface.h_split(high.v1.xi).d, surface.h_split(high.v2.xi).d)
    r1, r2, a1, a2 = low.v1.r, low.v2.r, low.v1.a, low.v2.a
    r1p, r2p, a1p, a2p = high.v1.r, high.v2.r, high.v1.a, high.v2.a
    ell = square(surface, v) // 2

    items: list[CheckItem] = []

    def add(name: str, passed: bool, **values: Fraction) -> None:
        items.append(CheckItem(name, bool(passed), tuple((k, Fraction(x)) for k, x in values.items())))

    x1 = r1 * d1p - r1p * d1
    x2 = r2p * d2 - r2 * d2p
    add("bundle_side_degrees", x1 > 0, value=x1)
    strict = not (r2 == 0 and r2p == 0)
    add("complement_side_degrees", x2 > 0 if strict else x2 >= 0, value=x2)

    y = r1 * d2 - r2 * d1
    yp = r1p * d2p - r2p * d1p
    add("rank_degree_gap", y > yp > 0, low=y, high=yp)
    area_lhs = ell * y - ell * yp
    area_rhs = low.ell1 * high.ell1 * x1 + low.ell2 * high.ell2 * x2
    add("rank_area_identity", area_lhs == area_rhs and area_lhs > 0, lhs=area_lhs, rhs=area_rhs)

    z1 = a1p * d1 - a1 * d1p
    z2 = a2 * d2p - a2p * d2
    if v.a > 0:
        add("a_side_bundle", z1 > 0, value=z1)
        add("a_side_complement", z2 >= 0, value=z2)
    else:
        add("a_side_bundle", z1 >= 0, value=z1)
        add("a_side_complement", z2 > 0, value=z2)
    w = a1 * d2 - a2 * d1
    wp = a1p * d2p - a2p * d1p
    add("a_side_gap", wp > w > 0, low=w, high=wp)
    area2_lhs = ell * wp - ell * w
    area2_rhs = low.ell1 * high.ell1 * z1 + low.ell2 * high.ell2 * z2
    add("a_area_identity", area2_lhs == area2_rhs and area2_lhs > 0, lhs=area2_lhs, rhs=area2_rhs)

    pairs = [
        ("uu_low", low.v1, low.v2),
        ("uu_high", high.v1, high.v2),
        ("uu_v1_v1p", low.v1, high.v1),
        ("uu_v1_v2p", low.v1, high.v2),
        ("uu_v2_v1p", low.v2, high.v1),
        ("uu_v2_v2p", low.v2, high.v2),
    ]
    for name, ua, ub in pairs:
        lhs, rhs = mukai_uu_identity(surface, ua, ub)
        add(name, lhs == rhs, lhs=lhs, rhs=rhs)

    return CheckReport(wall_low.tsq, wall_high.tsq, tuple(items), all(i.passed for i in items))
