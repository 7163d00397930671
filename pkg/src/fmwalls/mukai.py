"""Mukai vectors, the Mukai pairing, and cohomological transform maps.

A Mukai vector (r, xi, a) lives in Z + NS(X) + Z with pairing
<x,y> = (x1.y1) - x0*y2 - y0*x2.  The dual surface is modeled on the same
lattice with the dual polarization identified with H; every formula below
only uses pairing-invariant expressions, and reports record that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import InvalidInput, IntVec, Surface, vec_gcd

DUAL_MODEL_NOTE = "NS of the dual surface identified with NS(X), dual polarization -> H"


@dataclass(frozen=True, order=True)
class MukaiVector:
    r: int
    xi: IntVec
    a: int

    def coords(self) -> tuple[int, ...]:
        return (self.r, *self.xi, self.a)

    def __str__(self) -> str:
        return format_vector(self)


def mv(r: int, xi, a: int) -> MukaiVector:
    return MukaiVector(int(r), tuple(int(c) for c in xi), int(a))


def parse_vector(text: str, rank: int) -> MukaiVector:
    """Parse the CLI syntax "r;c1,...,crho;a" (e.g. "2;0,5;-1")."""
    parts = text.strip().split(";")
    if len(parts) != 3:
        raise InvalidInput("vector_syntax", f"expected 'r;c1,...,c{rank};a', got {text!r}")
    try:
        r = int(parts[0])
        xi = tuple(int(c) for c in parts[1].split(",")) if parts[1].strip() else ()
        a = int(parts[2])
    except ValueError as exc:
        raise InvalidInput("vector_syntax", f"non-integer component in {text!r}") from exc
    if len(xi) != rank:
        raise InvalidInput("vector_length", f"xi has {len(xi)} coordinates, surface rank is {rank}")
    return MukaiVector(r, xi, a)


def format_vector(v: MukaiVector) -> str:
    return f"{v.r};{','.join(str(c) for c in v.xi)};{v.a}"


def check_same_rank(surface: Surface, *vectors: MukaiVector) -> None:
    for v in vectors:
        if len(v.xi) != surface.rank:
            raise InvalidInput("vector_length", f"{format_vector(v)} does not match rank {surface.rank}")


def pairing(surface: Surface, x: MukaiVector, y: MukaiVector) -> int:
    """Mukai pairing <x,y> = (x1.y1) - x0*y2 - y0*x2."""
    check_same_rank(surface, x, y)
    return surface.intersect(x.xi, y.xi) - x.r * y.a - y.r * x.a


def square(surface: Surface, v: MukaiVector) -> int:
    return pairing(surface, v, v)


def is_isotropic(surface: Surface, v: MukaiVector) -> bool:
    return square(surface, v) == 0


def is_primitive(v: MukaiVector) -> bool:
    """gcd of all rho+2 integer coordinates is 1."""
    return vec_gcd(v.coords()) == 1


def ell_of(surface: Surface, v: MukaiVector) -> int:
    """<v^2>/2; rejects negative or odd squares."""
    sq = square(surface, v)
    if sq < 0 or sq % 2 != 0:
        raise InvalidInput("square_even_nonnegative", f"<v^2>={sq} is not an even nonnegative integer")
    return sq // 2


def fm_transform(v: MukaiVector) -> MukaiVector:
    """Cohomological Fourier-Mukai action (r, xi, a) -> (a, -xi, r).

    Under the fixed lattice identification this map is an involution; that
    is a convention of the model, the composite on the surface itself is
    (-1)-pullback composed with a shift by 2.
    """
    return MukaiVector(v.a, tuple(-c for c in v.xi), v.r)


def fm_dual(v: MukaiVector) -> MukaiVector:
    """Vector of the dualized transform: (r, xi, a) -> (a, xi, r)."""
    return MukaiVector(v.a, v.xi, v.r)


def fm_shift(v: MukaiVector) -> MukaiVector:
    """Vector of the shifted transform: (r, xi, a) -> (-a, xi, -r)."""
    return MukaiVector(-v.a, v.xi, -v.r)


def twist(surface: Surface, v: MukaiVector, eta) -> MukaiVector:
    """Tensor by a line bundle of class eta: exponential action on (r, xi, a)."""
    check_same_rank(surface, v)
    eta = tuple(int(c) for c in eta)
    eta_sq = surface.intersect(eta, eta)
    if eta_sq % 2 != 0:
        raise InvalidInput("twist_square_even", f"(eta^2)={eta_sq} must be even")
    xi = tuple(c + v.r * e for c, e in zip(v.xi, eta))
    a = v.a + surface.intersect(v.xi, eta) + v.r * (eta_sq // 2)
    return MukaiVector(v.r, xi, a)


def untwist_direction(surface: Surface, v: MukaiVector) -> IntVec | None:
    """eta with v = twist((r,0,-1), eta), if one exists (requires r | xi)."""
    if v.r <= 0:
        return None
    if any(c % v.r != 0 for c in v.xi):
        return None
    eta = tuple(c // v.r for c in v.xi)
    if twist(surface, MukaiVector(v.r, (0,) * surface.rank, -1), eta) == v:
        return eta
    return None


SHIFT_COH = 0
SHIFT_ONE = 1
SHIFT_TWO = 2


def classify_isotropic_shift(surface: Surface, v: MukaiVector) -> int | None:
    """Shift k in {0,1,2} placing the transform of a semi-homogeneous sheaf
    back in the category of sheaves; None when the case table does not apply
    (xi = 0, or a negative rank input).

    Non-isotropic vectors are rejected outright.
    """
    if not is_isotropic(surface, v):
        raise InvalidInput("isotropic_required", f"<v^2>={square(surface, v)} != 0")
    xi_sq = surface.intersect(v.xi, v.xi)
    xi_h = surface.intersect(v.xi, surface.ample)
    if xi_sq > 0:
        if xi_h > 0:
            return SHIFT_COH
        if xi_h < 0:
            return SHIFT_TWO
        return None  # excluded by the Hodge index theorem on a valid surface
    if xi_sq < 0:
        return SHIFT_ONE
    if all(c == 0 for c in v.xi):
        return None
    if v.r == 0:
        return SHIFT_COH if v.a > 0 else SHIFT_ONE
    if v.r > 0:  # isotropy forces a = 0 here
        if xi_h > 0:
            return SHIFT_ONE
        if xi_h < 0:
            return SHIFT_TWO
        return None
    return None
