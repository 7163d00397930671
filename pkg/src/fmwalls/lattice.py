"""Exact arithmetic on the Neron-Severi lattice of an abelian surface.

Everything is computed over arbitrary-precision integers and rationals
(``fractions.Fraction``); no floating point enters any predicate.  A surface
is described by its intersection Gram matrix, a distinguished ample class H,
and geometry flags that the lattice alone cannot decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

IntVec = tuple[int, ...]
FracVec = tuple[Fraction, ...]


class InvalidInput(ValueError):
    """Input violates a named invariant (CLI exit code 2)."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
        self.message = message


class UnsupportedSurface(InvalidInput):
    """The Gram matrix does not have signature (1, rank-1) (CLI exit code 3)."""


def vec_gcd(coords) -> int:
    g = 0
    for c in coords:
        g = gcd(g, abs(int(c)))
    return g


def _as_fraction_vec(v) -> FracVec:
    return tuple(Fraction(c) for c in v)


def congruence_signature(gram: list[list[Fraction]]) -> tuple[int, int, int]:
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Simultaneous row/column reduction.  Zero diagonal entries are handled by
    permutation when some other diagonal entry is nonzero, and otherwise by
    adding a row/column pair to create one (needed for hyperbolic blocks such
    as [[0,1],[1,0]]).
    """
    m = [row[:] for row in gram]
    size = len(m)
    pos = neg = zero = 0
    for i in range(size):
        if m[i][i] == 0:
            swap = next((j for j in range(i + 1, size) if m[j][j] != 0), None)
            if swap is not None:
                m[i], m[swap] = m[swap], m[i]
                for row in m:
                    row[i], row[swap] = row[swap], row[i]
            else:
                other = next((j for j in range(i + 1, size) if m[i][j] != 0), None)
                if other is None:
                    zero += 1
                    continue
                for k in range(size):
                    m[i][k] += m[other][k]
                for row in m:
                    row[i] += row[other]
        pivot = m[i][i]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, size):
            factor = m[j][i] / pivot
            if factor == 0:
                continue
            for k in range(size):
                m[j][k] -= factor * m[i][k]
            for row in m:
                row[j] -= factor * row[i]
    return pos, neg, zero


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(matrix)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot_row = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


@dataclass(frozen=True)
class HSplit:
    """Split xi = d*H + D with D orthogonal to H."""

    d: Fraction
    d_perp: FracVec


class Surface:
    """An abelian surface seen through its Neron-Severi lattice.

    `gram` is the intersection form in a fixed integral basis, `ample` the
    coordinates of the polarization H.  Whether an isotropic class is carried
    by an elliptic curve is geometry beyond the lattice, so elliptic classes
    may be supplied explicitly; otherwise small primitive isotropic effective
    classes are enumerated on demand.
    """

    def __init__(
        self,
        gram,
        ample,
        name: str = "surface",
        product_of_elliptic_curves: bool = False,
        elliptic_classes=None,
    ):
        self.name = str(name)
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        self.rank = len(self.gram)
        self.ample = tuple(int(x) for x in ample)
        self.product_of_elliptic_curves = bool(product_of_elliptic_curves)
        self._validate()
        self._user_elliptic = None
        if elliptic_classes is not None:
            self._user_elliptic = tuple(tuple(int(x) for x in c) for c in elliptic_classes)
            for c in self._user_elliptic:
                if len(c) != self.rank:
                    raise InvalidInput("elliptic_class_length", f"class {c} has wrong length")
                if self.intersect(c, c) != 0:
                    raise InvalidInput("elliptic_class_isotropic", f"({c}^2) != 0")
                if self.intersect(c, self.ample) <= 0:
                    raise InvalidInput("elliptic_class_degree", f"({c}.H) <= 0")
                if vec_gcd(c) != 1:
                    raise InvalidInput("elliptic_class_primitive", f"{c} is not primitive")
        self._coord_bound_consts: FracVec | None = None

    def _validate(self) -> None:
        if self.rank == 0:
            raise InvalidInput("rank_positive", "empty Gram matrix")
        for row in self.gram:
            if len(row) != self.rank:
                raise InvalidInput("gram_square", "Gram matrix is not square")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidInput("gram_symmetric", "Gram matrix is not symmetric")
        for i in range(self.rank):
            # NS of an abelian surface is an even lattice; oddness breaks
            # integrality of <v^2>/2 everywhere downstream.
            if self.gram[i][i] % 2 != 0:
                raise InvalidInput("gram_even", f"diagonal entry gram[{i}][{i}] is odd")
        pos, negs, zero = congruence_signature(
            [[Fraction(x) for x in row] for row in self.gram]
        )
        if (pos, negs, zero) != (1, self.rank - 1, 0):
            raise UnsupportedSurface(
                "gram_signature",
                f"signature is ({pos},{negs},{zero}), expected (1,{self.rank - 1},0)",
            )
        if len(self.ample) != self.rank:
            raise InvalidInput("ample_length", "H has wrong coordinate length")
        h2 = self.intersect(self.ample, self.ample)
        if h2 <= 0 or h2 % 2 != 0:
            raise InvalidInput("ample_square", f"(H^2)={h2} must be positive and even")

    @classmethod
    def from_dict(cls, data: dict) -> "Surface":
        try:
            gram = data["gram"]
            ample = data["ample"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("surface_schema", f"missing field {exc}") from exc
        return cls(
            gram,
            ample,
            name=data.get("name", "surface"),
            product_of_elliptic_curves=data.get("product_of_elliptic_curves", False),
            elliptic_classes=data.get("elliptic_classes"),
        )

    # -- pairing ---------------------------------------------------------

    def intersect(self, x, y):
        """NS pairing x.G.y; exact rational, integer on integral inputs."""
        if len(x) != self.rank or len(y) != self.rank:
            raise InvalidInput("class_length", "divisor class has wrong length")
        total = 0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.gram[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj != 0)
        return total

    @property
    def h_square(self) -> int:
        return int(self.intersect(self.ample, self.ample))

    @property
    def n(self) -> int:
        """Half the square of the polarization."""
        return self.h_square // 2

    # -- positivity predicates -------------------------------------------

    def is_ample(self, d) -> bool:
        """(D^2) > 0 and (D.H) > 0."""
        return self.intersect(d, d) > 0 and self.intersect(d, self.ample) > 0

    def is_effective(self, d) -> bool:
        """(D.H) > 0 together with (D^2) > 0 or (D^2) = 0."""
        sq = self.intersect(d, d)
        return sq >= 0 and self.intersect(d, self.ample) > 0

    # -- orthogonal splitting ---------------------------------------------

    def h_split(self, xi) -> HSplit:
        """Write xi = d*H + D with (D.H) = 0 exactly."""
        d = Fraction(self.intersect(xi, self.ample), self.h_square)
        d_perp = tuple(Fraction(c) - d * h for c, h in zip(xi, self.ample))
        return HSplit(d, d_perp)

    # -- ample classes orthogonal to a negative class ----------------------

    def orth_ample(self, delta) -> FracVec:
        """A rational ample class orthogonal to delta, for (delta^2) < 0.

        (delta.H)*delta - (delta^2)*H works by the Hodge index theorem; the
        result is reduced to a primitive integral direction.
        """
        dsq = self.intersect(delta, delta)
        if dsq >= 0:
            raise InvalidInput("delta_negative", f"(delta^2)={dsq} must be negative")
        dh = self.intersect(delta, self.ample)
        cand = tuple(dh * c - dsq * h for c, h in zip(delta, self.ample))
        g = vec_gcd(cand)
        return tuple(Fraction(c, g) for c in cand)

    def perturbed_pair(self, delta) -> tuple[FracVec, FracVec]:
        """Ample classes H+, H- with (delta.H+) < 0 < (delta.H-).

        Realized as A +/- eps*delta around A = orth_ample(delta); eps starts
        at 1/2 and is halved until both perturbations stay ample.
        """
        base = self.orth_ample(delta)
        eps = Fraction(1, 2)
        while True:
            plus = tuple(b + eps * c for b, c in zip(base, delta))
            minus = tuple(b - eps * c for b, c in zip(base, delta))
            if self.is_ample(plus) and self.is_ample(minus):
                return plus, minus
            eps /= 2

    # -- isotropic effective classes ---------------------------------------

    def primitive_isotropic_effective(self, bound: int) -> list[IntVec]:
        """Primitive D with coordinates in [-bound, bound], (D^2)=0, (D.H)>0."""
        if bound < 1:
            raise InvalidInput("bound_positive", "bound must be >= 1")
        found = []
        for coords in product(range(-bound, bound + 1), repeat=self.rank):
            if vec_gcd(coords) != 1:
                continue
            if self.intersect(coords, coords) != 0:
                continue
            if self.intersect(coords, self.ample) <= 0:
                continue
            found.append(coords)
        found.sort()
        return found

    def elliptic_classes(self, bound: int = 10) -> list[IntVec]:
        """Classes treated as elliptic curves: the user list, else enumeration."""
        if self._user_elliptic is not None:
            return list(self._user_elliptic)
        return self.primitive_isotropic_effective(bound)

    # -- geometry constants for the wall search ----------------------------

    def hperp_basis(self) -> list[IntVec]:
        """Primitive integral basis of the orthogonal complement of H."""
        w = [self.intersect_row(i) for i in range(self.rank)]
        pivot = next((i for i, wi in enumerate(w) if wi != 0), None)
        if pivot is None:  # cannot happen: (H^2) > 0
            raise InvalidInput("ample_square", "H pairs to zero with everything")
        basis = []
        for i in range(self.rank):
            if i == pivot:
                continue
            vec = [0] * self.rank
            vec[i] = w[pivot]
            vec[pivot] = -w[i]
            g = vec_gcd(vec)
            basis.append(tuple(c // g for c in vec))
        return basis

    def intersect_row(self, i: int) -> int:
        """(e_i . H) for the i-th basis vector."""
        return sum(self.gram[i][j] * h for j, h in enumerate(self.ample))

    def coord_bound_consts(self) -> FracVec:
        """Constants M_i with |x_i|^2 <= M_i * (-(x^2)) for all x in H-perp.

        H-perp is negative definite, so -(x^2) is a positive quadratic form
        there and each coordinate functional has a finite norm.  Rank 1 has a
        trivial orthogonal complement and all constants vanish.
        """
        if self._coord_bound_consts is not None:
            return self._coord_bound_consts
        if self.rank == 1:
            self._coord_bound_consts = (Fraction(0),)
            return self._coord_bound_consts
        basis = self.hperp_basis()
        k = len(basis)
        p = [
            [Fraction(-self.intersect(basis[i], basis[j])) for j in range(k)]
            for i in range(k)
        ]
        p_inv = _invert(p)
        consts = []
        for i in range(self.rank):
            w = [Fraction(basis[j][i]) for j in range(k)]
            val = sum(w[r] * p_inv[r][c] * w[c] for r in range(k) for c in range(k))
            consts.append(val)
        self._coord_bound_consts = tuple(consts)
        return self._coord_bound_consts


def ints_within(center: Fraction, radius_sq: Fraction) -> range:
    """Integers j with (j - center)^2 <= radius_sq, as a range (exact)."""
    if radius_sq < 0:
        return range(0)
    mid = round(center)
    if (mid - center) ** 2 > radius_sq:
        return range(0)
    lo = mid
    while (lo - 1 - center) ** 2 <= radius_sq:
        lo -= 1
    hi = mid
    while (hi + 1 - center) ** 2 <= radius_sq:
        hi += 1
    return range(lo, hi + 1)
