"""Central charges along the vertical line (0, tH) and at general (beta, omega).

Positions on the line are always carried as the rational t^2; t itself is
usually irrational.  Slopes are never materialized: only exact three-way
comparisons by cross multiplication are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import FracVec, InvalidInput, Surface
from .mukai import MukaiVector, check_same_rank

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class LineCharge:
    """Charge on the line at a given t^2: Re = re, Im = im_coeff * t."""

    re: Fraction
    im_coeff: Fraction


def charge_line(surface: Surface, v: MukaiVector, tsq: Fraction) -> LineCharge:
    """Z at (0, tH): (r*t^2*n - a) + 2*n*d*t*sqrt(-1), with n = (H^2)/2."""
    tsq = Fraction(tsq)
    if tsq <= 0:
        raise InvalidInput("tsq_positive", f"t^2={tsq} must be positive")
    check_same_rank(surface, v)
    split = surface.h_split(v.xi)
    re = v.r * tsq * surface.n - v.a
    return LineCharge(re, 2 * surface.n * split.d)


def charge_general(surface: Surface, v: MukaiVector, beta: FracVec, omega: FracVec) -> tuple[Fraction, Fraction]:
    """Z at (beta, omega) = <exp(beta + i*omega), v>; omega must be ample."""
    check_same_rank(surface, v)
    beta = tuple(Fraction(c) for c in beta)
    omega = tuple(Fraction(c) for c in omega)
    if not surface.is_ample(omega):
        raise InvalidInput("omega_ample", "omega is not in the ample cone")
    re = (
        surface.intersect(v.xi, beta)
        - v.a
        - Fraction(v.r) * (surface.intersect(beta, beta) - surface.intersect(omega, omega)) / 2
    )
    im = surface.intersect(v.xi, omega) - v.r * surface.intersect(beta, omega)
    return Fraction(re), Fraction(im)


def slope_compare(surface: Surface, v: MukaiVector, w: MukaiVector, tsq: Fraction) -> int:
    """Compare -Re/Im slopes of v and w on the line at t^2, exactly.

    Returns LESS, EQUAL or GREATER.  Both vectors must sit in the upper half
    plane there, i.e. have positive H-degree.
    """
    tsq = Fraction(tsq)
    if tsq <= 0:
        raise InvalidInput("tsq_positive", f"t^2={tsq} must be positive")
    dv = surface.h_split(v.xi).d
    dw = surface.h_split(w.xi).d
    if dv <= 0 or dw <= 0:
        raise InvalidInput("degree_positive", "both vectors need positive H-degree on the line")
    # nu = (a - r*t^2*n)/(2*n*d*t); the common positive factor 1/(2nt) cancels.
    lhs = (v.a - v.r * tsq * surface.n) * dw
    rhs = (w.a - w.r * tsq * surface.n) * dv
    if lhs < rhs:
        return LESS
    if lhs == rhs:
        return EQUAL
    return GREATER
