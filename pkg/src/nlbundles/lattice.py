"""Intersection theory on a degree-k surface containing a line, and Chern arithmetic on P^3.

The surface ``S`` carries the sublattice spanned by a line ``L`` and the
residual plane curve ``C`` (so ``H = L + C`` is a hyperplane section).  The
intersection form on it is

    L.L = 2 - k,   L.C = k - 1,   C.C = 0.

Divisor classes are stored as integer pairs ``(x_L, x_C)``; a hyperplane twist
``jH`` adds ``j`` to both coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ArithmeticFault, LatticeUndefinedError, PreconditionError

__all__ = [
    "SurfaceClass",
    "DivisorClass",
    "ChernData",
    "count_binom",
    "poly_binom",
    "as_int",
    "pair",
    "degree",
    "canonical_class",
    "genus",
    "chi_structure",
    "chi_divisor",
    "riemann_roch_p3",
    "twist_chern",
    "L",
    "C",
    "H",
    "ZERO",
]


def count_binom(n: int, r: int) -> int:
    """Number of r-subsets of an n-set; zero whenever ``n < r`` or ``n < 0``.

    This is the monomial-counting convention: ``count_binom(j + 3, 3)`` is the
    number of degree-j monomials in four variables, which is 0 for ``j < 0``.
    """
    if r < 0 or n < 0 or n < r:
        return 0
    return comb(n, r)


def poly_binom(n: int, r: int) -> Fraction:
    """Polynomial extension ``n (n-1) ... (n-r+1) / r!`` valid for every integer n."""
    if r < 0:
        return Fraction(0)
    num = 1
    for i in range(r):
        num *= n - i
    den = 1
    for i in range(2, r + 1):
        den *= i
    return Fraction(num, den)


def as_int(value, what: str = "value") -> int:
    """Return ``value`` as an int, raising ArithmeticFault if it is fractional."""
    if isinstance(value, int):
        return value
    value = Fraction(value)
    if value.denominator != 1:
        raise ArithmeticFault(f"{what} should be an integer, got {value}")
    return value.numerator


@dataclass(frozen=True)
class SurfaceClass:
    """A smooth degree-k surface in P^3 containing a line.

    ``k == 1`` (a plane) is representable for the hyperplane-power family of
    rank-3 bundles, but it has no pencil of residual curves, so every lattice
    operation refuses it.
    """

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise PreconditionError(f"surface degree must be a positive integer, got {self.k!r}")

    @property
    def has_lattice(self) -> bool:
        return self.k >= 2

    def require_lattice(self) -> None:
        if self.k < 2:
            raise LatticeUndefinedError("a plane contains no residual curve C; the L/C lattice needs k >= 2")


@dataclass(frozen=True)
class DivisorClass:
    """The class ``x_L * L + x_C * C`` on S."""

    x_L: int
    x_C: int

    @classmethod
    def of(cls, a: int = 0, b: int = 0, j: int = 0) -> "DivisorClass":
        """Canonical form of ``aL + bC + jH``."""
        return cls(a + j, b + j)

    def canonical(self) -> "DivisorClass":
        return self

    def twist(self, j: int) -> "DivisorClass":
        return DivisorClass(self.x_L + j, self.x_C + j)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.x_L + other.x_L, self.x_C + other.x_C)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.x_L - other.x_L, self.x_C - other.x_C)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.x_L, -self.x_C)

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.x_L, n * self.x_C)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[int, int]:
        return (self.x_L, self.x_C)


L = DivisorClass(1, 0)
C = DivisorClass(0, 1)
H = DivisorClass(1, 1)
ZERO = DivisorClass(0, 0)


@dataclass(frozen=True)
class ChernData:
    """Rank and Chern classes of a sheaf on P^3, as integers against powers of the hyperplane class."""

    rank: int
    c1: int
    c2: int
    c3: int = 0

    def __post_init__(self):
        if self.rank < 1:
            raise PreconditionError(f"rank must be positive, got {self.rank}")


def pair(d1: DivisorClass, d2: DivisorClass, s: SurfaceClass) -> int:
    """Intersection number ``d1 . d2`` on S."""
    s.require_lattice()
    k = s.k
    return (
        d1.x_L * d2.x_L * (2 - k)
        + (d1.x_L * d2.x_C + d1.x_C * d2.x_L) * (k - 1)
    )


def degree(d: DivisorClass, s: SurfaceClass) -> int:
    """Degree ``d . H`` of a class as a curve in P^3."""
    s.require_lattice()
    return d.x_L + d.x_C * (s.k - 1)


def canonical_class(s: SurfaceClass) -> DivisorClass:
    s.require_lattice()
    return DivisorClass.of(j=s.k - 4)


def genus(d: DivisorClass, s: SurfaceClass) -> Fraction:
    """Arithmetic genus ``1 + (D^2 + K.D) / 2``.

    No validation: for classes that are not honest curves the value may be
    negative or half-integral.
    """
    return 1 + Fraction(pair(d, d, s) + pair(canonical_class(s), d, s), 2)


def chi_structure(s: SurfaceClass) -> int:
    """Holomorphic Euler characteristic of O_S: ``1 + binom(k-1, 3)``."""
    s.require_lattice()
    return 1 + count_binom(s.k - 1, 3)


def chi_divisor(d: DivisorClass, s: SurfaceClass) -> int:
    """Riemann-Roch on S: ``chi(O_S) + D.(D - K)/2``."""
    twice = pair(d, d - canonical_class(s), s)
    return chi_structure(s) + as_int(Fraction(twice, 2), "chi(O_S(D))")


def riemann_roch_p3(c: ChernData) -> Fraction:
    """Euler characteristic of a sheaf on P^3 from its rank and Chern classes.

    Hirzebruch-Riemann-Roch with ``td(P^3) = 1 + 2h + 11/6 h^2 + h^3``; the
    degree-2 term is ``2 ch_2 = c1^2 - 2 c2``.
    """
    r, c1, c2, c3 = c.rank, c.c1, c.c2, c.c3
    return (
        r
        + Fraction(11, 6) * c1
        + (c1 * c1 - 2 * c2)
        + Fraction(c1**3 - 3 * c1 * c2 + 3 * c3, 6)
    )


def twist_chern(c: ChernData, t: int) -> ChernData:
    """Chern data of ``E(t)`` for E of rank 2 or 3."""
    if c.rank == 2:
        return ChernData(2, c.c1 + 2 * t, c.c2 + c.c1 * t + t * t, 0)
    if c.rank == 3:
        return ChernData(
            3,
            c.c1 + 3 * t,
            c.c2 + 2 * c.c1 * t + 3 * t * t,
            c.c3 + c.c2 * t + c.c1 * t * t + t**3,
        )
    raise PreconditionError(f"twist formula implemented for rank 2 and 3 only, got rank {c.rank}")
