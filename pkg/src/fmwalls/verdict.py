"""Decision procedure: does the transform generically preserve stability?

For a primitive v = (r, xi, a) with r > 0 and (xi.H) > 0 the answer is yes
with suitably chosen polarizations on both sides, except for a short list of
exceptional shapes: the product-surface case with primitive xi on the a > 0
side, and v = (l, kC, -1) or (1, kC, -l) over an elliptic curve class C with
k >= l+1 on the a <= 0 side.  Non-primitive vectors always preserve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import FracVec, InvalidInput, Surface, vec_gcd
from .mukai import MukaiVector, is_primitive, square, untwist_direction
from .regimes import (
    A_POS,
    CrossingClass,
    RegimeReport,
    compute_regimes,
    dual_regimes,
)

SHIFT_DUAL = "Dual"
SHIFT_ONE = "Shift1"

PRESERVED_WITH_HHAT = "PreservedWithHHat"
PRESERVED_WITH_SOME = "PreservedWithSomeLL"
NOT_PRESERVED = "NotPreservedGenerically"
INCONCLUSIVE = "Inconclusive"

ELLIPTIC_CLASS_BOUND = 10


@dataclass(frozen=True)
class ExceptionalCase:
    kind: str  # ProductPrimitiveXi | ShapeLK1 | Shape1KL | RemarkShape
    blocks: bool
    ell: int | None = None
    k: int | None = None
    c: tuple[int, ...] | None = None
    eta: tuple[int, ...] | None = None
    eta_sq_sign: str | None = None
    confidence: str | None = None


@dataclass(frozen=True)
class CorollaryBranch:
    branch: int
    shift: str


@dataclass(frozen=True)
class PreservationVerdict:
    status: str
    shift: str
    regimes: RegimeReport
    dual: RegimeReport
    exceptional: tuple[ExceptionalCase, ...]
    corollary_applied: bool
    certified: bool
    witness_pair: tuple[FracVec, FracVec] | None
    advisory: dict | None
    reason: str | None


def _xi_multiple_of_elliptic(surface: Surface, v: MukaiVector) -> tuple[int, tuple[int, ...]] | None:
    """If xi = k*C for an elliptic-curve class C of the surface, return (k, C)."""
    if surface.intersect(v.xi, v.xi) != 0:
        return None
    if surface.intersect(v.xi, surface.ample) <= 0:
        return None
    g = vec_gcd(v.xi)
    if g == 0:
        return None
    c = tuple(x // g for x in v.xi)
    if c in set(surface.elliptic_classes(ELLIPTIC_CLASS_BOUND)):
        return g, c
    return None


def detect_exceptional(
    surface: Surface,
    v: MukaiVector,
    radius: int | None = 12,
    regimes: RegimeReport | None = None,
) -> list[ExceptionalCase]:
    """Exceptional shapes carried by v.

    The a > 0 product case is confirmed against the wall tags when the scan
    is certified; with an uncertified scan the surface flag and primitivity
    of xi alone decide, marked as lower confidence.  Vectors of the form
    e^eta(r, 0, -1) are reported with the sign class of (eta^2); under the
    r > 0, (xi.H) > 0 hypotheses they block preservation in no reachable
    sub-case and are informational.
    """
    found: list[ExceptionalCase] = []
    if v.a > 0:
        if surface.product_of_elliptic_curves and vec_gcd(v.xi) == 1:
            if regimes is None:
                regimes = compute_regimes(surface, v, radius)
            if regimes.certified:
                confirmed = any(
                    w.fm_case.side == A_POS and w.fm_case.case == "2b" for w in regimes.walls
                )
                if confirmed:
                    found.append(
                        ExceptionalCase("ProductPrimitiveXi", True, confidence="wall_confirmed")
                    )
            else:
                found.append(ExceptionalCase("ProductPrimitiveXi", True, confidence="flag_only"))
    else:
        shape = _xi_multiple_of_elliptic(surface, v)
        if shape is not None:
            k, c = shape
            if v.a == -1 and v.r >= 1 and k >= v.r + 1:
                found.append(ExceptionalCase("ShapeLK1", True, ell=v.r, k=k, c=c))
            if v.r == 1 and v.a <= -1 and k >= 1 - v.a:
                found.append(ExceptionalCase("Shape1KL", True, ell=-v.a, k=k, c=c))
    eta = untwist_direction(surface, v)
    if eta is not None and square(surface, v) == 2 * v.r:
        eta_sq = surface.intersect(eta, eta)
        eta_h = surface.intersect(eta, surface.ample)
        sign = "negative" if eta_sq < 0 else ("zero" if eta_sq == 0 else "positive")
        found.append(
            ExceptionalCase("RemarkShape", eta_sq >= 0 and eta_h <= 0, eta=eta, eta_sq_sign=sign)
        )
    return found


def corollary_check(surface: Surface, v: MukaiVector) -> CorollaryBranch | None:
    """Sufficient conditions for preservation with the distinguished dual
    polarization: (1) a > 0 with <v^2> >= 2r, 2a outside the product case;
    (2) a < 0 with (xi^2) > 0.
    """
    sq = square(surface, v)
    if v.a > 0:
        product_case = surface.product_of_elliptic_curves and vec_gcd(v.xi) == 1
        if sq >= 2 * v.r and sq >= 2 * v.a and not product_case:
            return CorollaryBranch(1, SHIFT_DUAL)
        return None
    if v.a < 0 and surface.intersect(v.xi, v.xi) > 0:
        return CorollaryBranch(2, SHIFT_ONE)
    return None


def _advisory(surface: Surface, primal: RegimeReport, dual: RegimeReport) -> dict | None:
    """Compare the mirrored dual threshold 1/(n^2*t1'^2) against t1^2.

    Recorded, never asserted: the comparison is known to fail (and even to
    degenerate to equality) on the exceptional families.
    """
    if primal.t1sq <= 0 or not dual.t1_applicable or dual.t1sq <= 0:
        return None
    if not (primal.certified and dual.certified):
        return None
    lhs = 1 / (Fraction(surface.n) ** 2 * dual.t1sq)
    rel = ">" if lhs > primal.t1sq else ("=" if lhs == primal.t1sq else "<")
    return {"mirrored_dual_t1sq": lhs, "t1sq": primal.t1sq, "relation": rel, "holds": lhs > primal.t1sq}


def decide_preservation(surface: Surface, v: MukaiVector, radius: int | None = 12) -> PreservationVerdict:
    """Full decision pipeline with regime reports and witnesses attached."""
    if v.r <= 0:
        raise InvalidInput(
            "hypothesis_rank_positive",
            f"r={v.r}: the decision applies to positive rank; dualize the sheaf side first",
        )
    if surface.intersect(v.xi, surface.ample) <= 0:
        raise InvalidInput(
            "hypothesis_degree_positive",
            "(xi.H) <= 0: apply the decision to the dual vector (r, -xi, a) instead",
        )
    shift = SHIFT_DUAL if v.a > 0 else SHIFT_ONE
    regimes = compute_regimes(surface, v, radius)
    dual = dual_regimes(surface, v, radius)
    certified = regimes.certified and dual.certified
    advisory = _advisory(surface, regimes, dual)

    def verdict(status, exceptional=(), corollary=False, witness=None, reason=None):
        return PreservationVerdict(
            status, shift, regimes, dual, tuple(exceptional), corollary, certified, witness, advisory, reason
        )

    if not is_primitive(v):
        return verdict(PRESERVED_WITH_HHAT, reason="non-primitive vector: no totally semistable walls")

    exceptional = detect_exceptional(surface, v, radius, regimes)
    corollary = corollary_check(surface, v)
    blocking = [e for e in exceptional if e.blocks]
    assert not (corollary and blocking), "corollary hypotheses exclude the exceptional shapes"
    if blocking:
        return verdict(NOT_PRESERVED, exceptional=exceptional, reason=f"exceptional shape {blocking[0].kind}")
    if corollary is not None:
        return verdict(
            PRESERVED_WITH_HHAT,
            exceptional=exceptional,
            corollary=True,
            reason=f"corollary branch {corollary.branch}",
        )
    if not regimes.certified:
        return verdict(
            INCONCLUSIVE,
            exceptional=exceptional,
            reason=f"wall enumeration not certified at radius {radius}: {regimes.limiting}",
        )
    if regimes.t1sq == 0:
        return verdict(
            PRESERVED_WITH_HHAT,
            exceptional=exceptional,
            reason="no torsion or complex wall on the line",
        )
    witness = None
    top = regimes.walls[0]
    if top.crossing is CrossingClass.LOCALLY_FREE:
        roles = top.roles
        delta = tuple(roles.v2.r * x1 - roles.v1.r * x2 for x1, x2 in zip(roles.v1.xi, roles.v2.xi))
        witness = surface.perturbed_pair(delta)
    return verdict(
        PRESERVED_WITH_SOME,
        exceptional=exceptional,
        witness=witness,
        reason="non-exceptional walls only; polarizations exist on both sides",
    )
