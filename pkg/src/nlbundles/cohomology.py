"""Cohomology of the line bundles O_S(aL + bC)(j) on a surface containing a line.

``h^0`` comes from a piecewise closed form with three regimes, ``h^2`` from
Serre duality (``h^2(D) = h^0(K - D)``), and ``h^1`` is whatever makes the
Euler characteristic come out right.  A negative ``h^1`` would mean the
formula pack is inconsistent, so it raises :class:`ArithmeticFault`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArithmeticFault, OutOfRegimeError, PreconditionError
from .lattice import (
    DivisorClass,
    SurfaceClass,
    as_int,
    canonical_class,
    chi_divisor,
    count_binom,
)

__all__ = [
    "CohomologyDims",
    "h0_surface_twist",
    "h0_curve_twist",
    "h0_master",
    "h0_regimes",
    "cohomology",
    "vanish_h0_neg_aL",
    "vanish_h0_neg_bC",
    "vanish_h1_neg_aL",
    "vanish_h1_neg_bC",
    "h0_bC_twist",
    "direct_image_degrees",
]


@dataclass(frozen=True)
class CohomologyDims:
    h0: int
    h1: int
    h2: int
    chi: int

    def __post_init__(self):
        if min(self.h0, self.h1, self.h2) < 0:
            raise ArithmeticFault(f"negative cohomology dimension in {self}")
        if self.h0 - self.h1 + self.h2 != self.chi:
            raise ArithmeticFault(f"h0 - h1 + h2 != chi in {self}")


def h0_surface_twist(j: int, s: SurfaceClass) -> int:
    """``h^0(S; O_S(j))``, from the restriction sequence of S in P^3."""
    return count_binom(j + 3, 3) - count_binom(j - s.k + 3, 3)


def h0_curve_twist(j: int, s: SurfaceClass) -> int:
    """``h^0(C; O_C(j))`` for the plane curve C of degree k - 1."""
    s.require_lattice()
    return count_binom(j + 2, 2) - count_binom(j - s.k + 3, 2)


def _closed_form(a: int, b: int, k: int) -> int:
    val = (
        (k - 1) * a * b
        - Fraction(k - 2, 2) * a * a
        - Fraction(k - 4, 2) * (a + (k - 1) * b)
        + count_binom(k - 1, 3)
        + 1
    )
    return as_int(val, "h0 closed form")


def _j0_form(a: int, b: int, k: int) -> int:
    # peel (a - b) copies of L off O_S(b); each step adds h0(O_L(b - j(k-2)))
    # until that degree turns negative
    if k == 2:
        j0 = a - b
    else:
        j0 = min(a - b, b // (k - 2))
    return (
        count_binom(b + 3, 3)
        - count_binom(b - k + 3, 3)
        + (b + 1) * j0
        - (k - 2) * count_binom(j0 + 1, 2)
    )


def _fibration_sum(a: int, b: int) -> int:
    # sections of the direct image on P^1: sum of O(b - i)^(i + 1), i = 0..a
    return sum((i + 1) * (b - i + 1) for i in range(a + 1))


def _fibration_closed(a: int, b: int) -> int:
    num = count_binom(a + 2, 2) * (3 * b - 2 * a + 3)
    if num % 3:
        raise ArithmeticFault(f"binom(a+2,2)(b - 2a/3 + 1) not integral at a={a}, b={b}")
    return num // 3


def h0_regimes(a: int, b: int, s: SurfaceClass) -> dict[str, int]:
    """Every closed form for ``h^0(O_S(aL + bC))`` whose regime contains (a, b).

    Keys are ``"closed"``, ``"j0"`` and ``"fibration"``; for ``a < 0`` or
    ``b < 0`` the single key ``"negative"`` maps to 0.
    """
    s.require_lattice()
    k = s.k
    if a < 0 or b < 0:
        return {"negative": 0}
    out = {}
    # the closed form is chi(O_S(aL + bC)); it needs min(a, b) >= k - 3 on
    # both sides, otherwise h2 may be nonzero (a = b = 0, k = 4 gives 2)
    if min(a, b) >= k - 3 and (b >= a or b * (k - 1) - a * (k - 2) >= 0):
        out["closed"] = _closed_form(a, b, k)
    if a >= b:
        out["j0"] = _j0_form(a, b, k)
    if b >= a and a <= k - 2:
        total = _fibration_sum(a, b)
        if total != _fibration_closed(a, b):
            raise ArithmeticFault(f"fibration sum and closed form differ at a={a}, b={b}")
        out["fibration"] = total
    return out


def h0_master(a: int, b: int, s: SurfaceClass) -> int:
    """``h^0(S; O_S(aL + bC))`` for any integers a, b.

    Where regimes overlap all applicable formulas are evaluated and must agree.
    """
    values = h0_regimes(a, b, s)
    distinct = set(values.values())
    if len(distinct) != 1:
        raise ArithmeticFault(f"h0 regimes disagree at a={a}, b={b}, k={s.k}: {values}")
    return distinct.pop()


def cohomology(d: DivisorClass, s: SurfaceClass) -> CohomologyDims:
    """``(h^0, h^1, h^2, chi)`` of ``O_S(d)``."""
    h0 = h0_master(d.x_L, d.x_C, s)
    dual = canonical_class(s) - d
    h2 = h0_master(dual.x_L, dual.x_C, s)
    chi = chi_divisor(d, s)
    h1 = h0 + h2 - chi
    if h1 < 0:
        raise ArithmeticFault(f"h1 = {h1} < 0 for {d} on degree {s.k} surface")
    return CohomologyDims(h0, h1, h2, chi)


def _nonneg(**kwargs) -> None:
    for name, val in kwargs.items():
        if val < 0:
            raise PreconditionError(f"{name} must be >= 0, got {val}")


def vanish_h0_neg_aL(a: int, j: int, s: SurfaceClass) -> bool:
    """Whether ``H^0(O_S(-aL)(j)) = 0``."""
    _nonneg(a=a, j=j)
    s.require_lattice()
    return a > j


def vanish_h0_neg_bC(b: int, j: int, s: SurfaceClass) -> bool:
    """Whether ``H^0(O_S(-bC)(j)) = 0``."""
    _nonneg(b=b, j=j)
    s.require_lattice()
    return b > j


def vanish_h1_neg_aL(a: int, j: int, s: SurfaceClass) -> bool:
    """Whether ``H^1(O_S(-aL)(-j)) = 0``."""
    _nonneg(a=a, j=j)
    s.require_lattice()
    return j > (a - 1) * (s.k - 2) or (j == 0 and a == 1) or a == 0


def vanish_h1_neg_bC(b: int, j: int, s: SurfaceClass) -> bool:
    """Whether ``H^1(O_S(-bC)(-j)) = 0``."""
    _nonneg(b=b, j=j)
    s.require_lattice()
    return j > 0 or b in (0, 1)


def h0_bC_twist(b: int, j: int, s: SurfaceClass) -> int:
    """``h^0(O_S(bC)(j))`` for ``j > k - 4``: sections of O_S(j) plus b copies of those of O_C(j)."""
    s.require_lattice()
    if b < 0:
        raise OutOfRegimeError(f"b must be >= 0, got {b}")
    if j <= s.k - 4:
        raise OutOfRegimeError(f"formula needs j > k - 4 = {s.k - 4}, got j={j}")
    return h0_surface_twist(j, s) + b * h0_curve_twist(j, s)


def direct_image_degrees(a: int, b: int, s: SurfaceClass) -> list[tuple[int, int]]:
    """Splitting type of ``pi_* O_S((b-a)C)(a)`` on P^1 as ``[(degree, multiplicity), ...]``."""
    s.require_lattice()
    if not (b >= a >= 0 and a <= s.k - 2):
        raise OutOfRegimeError(f"need b >= a >= 0 and a <= k - 2, got a={a}, b={b}, k={s.k}")
    return [(b - i, i + 1) for i in range(a + 1)]
