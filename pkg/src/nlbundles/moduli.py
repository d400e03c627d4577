"""Parameter counts and moduli dimensions for the bundles of :mod:`nlbundles.bundles`.

For each family we report the dimension of the family ``Y`` of bundles of
that construction, the expected dimension ``ed = h^1(End E) - h^2(End E)``
from Riemann-Roch, ``h^1`` and ``h^2`` of ``End E`` when they are known, and
what that says about the moduli space ``M`` near E
(``ed <= dim_E M <= h^1(End E)``).  Values that are only bounded are
:class:`Interval` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .bundles import (
    BundleSpec,
    Family,
    Status,
    classify,
    nu_c1_for_degree,
    rank2_chern,
    rank3_chern,
    rank3_hyperplane,
)
from .cohomology import h0_master
from .errors import ArithmeticFault, NotAdmissibleError, OutOfRegimeError, PreconditionError
from .lattice import SurfaceClass, as_int, count_binom

__all__ = [
    "Interval",
    "span",
    "bounds",
    "ModuliReport",
    "rank2_spec",
    "rank3_spec",
    "rank2_dimY",
    "rank2_dimY_by_count",
    "rank2_ed",
    "rank2_exact_dim",
    "rank2_dim_bounds",
    "rank3_ed",
    "rank3I_report",
    "rank3II_dimY",
    "rank3II_dimY_by_count",
    "klarge_hypothesis",
    "rank3II_h1_klarge",
    "rank3II_report_k2",
    "rank3II_report_k3",
]


@dataclass(frozen=True)
class Interval:
    """Closed integer interval ``[lo, hi]``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ArithmeticFault(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


Value = Union[int, Interval]


def span(lo: int, hi: int) -> Value:
    """``[lo, hi]``, collapsed to a plain int when ``lo == hi``."""
    return lo if lo == hi else Interval(lo, hi)


def bounds(v: Optional[Value]) -> tuple[Optional[int], Optional[int]]:
    if v is None:
        return None, None
    if isinstance(v, Interval):
        return v.lo, v.hi
    return v, v


@dataclass(frozen=True)
class ModuliReport:
    """Dimension data at a bundle E.

    ``smooth_at_E`` is ``None`` when smoothness is not decided.  ``h1_end`` and
    ``h2_end`` are ``None`` outside the regimes where they are computed.
    ``delta_assumption`` marks reports whose upper value for ``h^1`` assumes
    the connecting map in the ``End E`` sequence has zero image.
    """

    dim_Y: int
    ed: int
    h1_end: Optional[Value]
    h2_end: Optional[Value]
    dim_M: Value
    smooth_at_E: Optional[bool]
    codim_bound: Optional[int] = None
    delta_assumption: bool = False
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        h1, h2 = self.h1_end, self.h2_end
        if isinstance(h1, int) and isinstance(h2, int) and h1 - h2 != self.ed:
            raise ArithmeticFault(f"h1 - h2 = {h1 - h2} but expected dimension is {self.ed}")
        if self.dim_Y > bounds(self.dim_M)[1]:
            raise ArithmeticFault(f"dim Y = {self.dim_Y} exceeds dim M <= {bounds(self.dim_M)[1]}")

    def as_dict(self) -> dict:
        def enc(v):
            return [v.lo, v.hi] if isinstance(v, Interval) else v

        return {
            "dim_Y": self.dim_Y,
            "ed": self.ed,
            "h1_end": enc(self.h1_end),
            "h2_end": enc(self.h2_end),
            "dim_M": enc(self.dim_M),
            "smooth_at_E": self.smooth_at_E,
            "codim_bound": self.codim_bound,
            "delta_assumption": self.delta_assumption,
            "notes": list(self.notes),
        }


def _stable(spec: BundleSpec, allow_unknown: bool = False) -> BundleSpec:
    verdict = classify(spec)
    if verdict.status is Status.STABLE or (allow_unknown and verdict.status is Status.UNKNOWN):
        return spec
    raise NotAdmissibleError(f"{spec.as_dict()} is {verdict.status.value} ({verdict.code})")


def rank2_spec(k: int, b: int) -> BundleSpec:
    """The rank-2 spec of degree k with ``a = 0``."""
    nu, c1 = nu_c1_for_degree(k, 2)
    return BundleSpec.rank2(nu, c1, 0, b)


def rank3_spec(k: int, a: int, b: int) -> BundleSpec:
    nu, c1 = nu_c1_for_degree(k, 3)
    return BundleSpec.rank3(nu, c1, a, b)


# rank 2


def rank2_dimY(k: int, b: int) -> int:
    """Dimension of the family of stable rank-2 bundles with parameters (k, b)."""
    _stable(rank2_spec(k, b))
    if b > k >= 3:
        return count_binom(k + 3, 3) + 2 * b - k
    if (k, b) == (3, 3):
        return 21
    if (k, b) == (3, 2):
        return 11
    if k == 2 and b >= 3:
        return 2 * b + 7
    if (k, b) == (2, 2):
        return 5
    if b <= k and k >= 4:
        return count_binom(k + 3, 3) + 2 * b - k - 2 * count_binom(k - b + 3, 3)
    raise OutOfRegimeError(f"no dim Y branch for k={k}, b={b}")


def rank2_dimY_by_count(k: int, b: int) -> int:
    """Same number from ``dim{S} + dim{tau} - dim{sigma}`` with engine ``h^0`` values (k >= 3)."""
    if k < 3:
        raise OutOfRegimeError("the parameter count below assumes k >= 3")
    return count_binom(k + 3, 3) - k + 2 * b - 2 * h0_master(k, k - b, SurfaceClass(k))


def rank2_ed(c1: int, c2: int) -> int:
    return 8 * c2 + 2 * c1 - 3


def _rank2_ed_from_b(k: int, b: int) -> int:
    return 8 * b * (k - 1) - 2 * k * k - 3


def rank2_exact_dim(k: int, b: int) -> ModuliReport:
    """Exact data for k = 2, 3, where ``h^2(End E) = 0``."""
    if k not in (2, 3):
        raise OutOfRegimeError(f"exact rank-2 dimensions are known for k = 2, 3 only, got k={k}")
    if b < 2:
        raise PreconditionError(f"need b >= 2, got {b}")
    spec = _stable(rank2_spec(k, b))
    c = rank2_chern(spec)
    ed = rank2_ed(c.c1, c.c2)
    if ed != _rank2_ed_from_b(k, b):
        raise ArithmeticFault(f"expected dimension routes disagree at k={k}, b={b}")
    dim = 8 * b - 11 if k == 2 else 16 * b - 21
    if dim != ed:
        raise ArithmeticFault(f"exact dimension {dim} != expected dimension {ed} at k={k}, b={b}")
    return ModuliReport(
        dim_Y=rank2_dimY(k, b), ed=ed, h1_end=dim, h2_end=0, dim_M=dim, smooth_at_E=True,
    )


def rank2_dim_bounds(k: int, b: int) -> ModuliReport:
    """Bounds on ``dim_E M`` for k >= 4 from ``h^2(End E) <= (k^2 - 5k + 6) b - binom(k-1, 3)``."""
    if k < 4:
        raise OutOfRegimeError(f"bounds are for k >= 4, got k={k}")
    if b < k - 4:
        raise OutOfRegimeError(f"bounds need b >= k - 4 = {k - 4}, got b={b}")
    _stable(rank2_spec(k, b))
    ed = _rank2_ed_from_b(k, b)
    h2_max = (k * k - 5 * k + 6) * b - count_binom(k - 1, 3)
    upper = ed + h2_max
    # the simplified right-hand side as printed has 5k^2 where the sum gives 6k^2
    printed = (k * k + 3 * k - 2) * b - Fraction(k**3 + 5 * k * k + 11 * k + 12, 6)
    notes = []
    if printed != upper:
        notes.append(f"printed simplified upper bound {printed} differs from the term-by-term sum {upper}")
    if b == k - 4:
        notes.append("b = k - 4 is the boundary of the stated range")
    dim_y = rank2_dimY(k, b)
    return ModuliReport(
        dim_Y=dim_y,
        ed=ed,
        h1_end=span(ed, upper),
        h2_end=span(0, h2_max),
        dim_M=span(ed, upper),
        smooth_at_E=True if h2_max == 0 else None,
        codim_bound=upper - dim_y,
        notes=tuple(notes),
    )


# rank 3


def rank3_ed(c1: int, c2: int) -> int:
    return 12 * c2 - 4 * c1 * c1 - 8


def rank3I_report(k: int, nu: int, c1: int, l: int) -> ModuliReport:
    """The hyperplane-power family: ``Y`` is an open set of M and M is smooth at E."""
    spec = BundleSpec.hyperplane(nu, c1, l)
    if spec.k != k:
        raise PreconditionError(f"k={k} does not match 3 nu + c1 = {spec.k}")
    _, c = rank3_hyperplane(spec)
    ed = rank3_ed(c.c1, c.c2)
    gap = abs(l - nu)
    base = 3 * count_binom(l + k - nu + 3, 3) + count_binom(k + 3, 3)
    if l != nu:
        dim = base - 10 - 3 * count_binom(gap + 3, 3)
        h2 = base - 4 * k * (k + c1 + 3 * l) - 2 - 3 * count_binom(gap + 3, 3)
    else:
        dim = base - 16
        h2 = base - 4 * k * (k + c1 + 3 * l) - 8
    if h2 < 0:
        raise ArithmeticFault(f"negative h2(End E) = {h2} for k={k}, nu={nu}, c1={c1}, l={l}")
    return ModuliReport(dim_Y=dim, ed=ed, h1_end=dim, h2_end=h2, dim_M=dim, smooth_at_E=True)


def _quadric_order(k: int, a: int, b: int) -> tuple[int, int]:
    # on the quadric the two rulings are interchangeable; the a > b regime of
    # the closed form is off at (2, 0), so always evaluate with b >= a
    if k == 2 and a > b:
        return b, a
    return a, b


def rank3II_dimY(k: int, a: int, b: int) -> int:
    """Dimension of the family of rank-3 bundles built from ``O_S(-aL - bC)``.

    Every regime whose guard contains (a, b) is evaluated; they must agree.
    """
    _stable(rank3_spec(k, a, b), allow_unknown=True)
    if k < 2:
        raise OutOfRegimeError("degree-1 specs belong to the hyperplane-power family")
    a, b = _quadric_order(k, a, b)
    sup = max(k - 3, 0)
    poly = (
        3 * (k - 1) * a * b
        - Fraction(3 * (k - 2), 2) * a * a
        - Fraction(3 * (k - 4), 2) * (a + (k - 1) * b)
        + 3 * count_binom(k - 1, 3)
        + count_binom(k + 3, 3)
        - sup
        - 7
    )
    values = {}
    if b >= a >= k - 3:
        v = poly
        if b <= k:
            v += -3 * count_binom(k - b + 3, 3) if k >= 3 else 3 * a - 9
        values["b>=a>=k-3"] = as_int(v, "dim Y")
    if a > b:
        v = poly
        if a == k:
            v -= 6
        elif a == k - 1:
            v -= 21
        values["a>b"] = as_int(v, "dim Y")
    if b >= a and a <= k - 2:
        v = count_binom(a + 2, 2) * (3 * b - 2 * a + 3) + count_binom(k + 3, 3) - sup - 10
        if b <= k:
            v += -3 * count_binom(k - b + 3, 3) if k >= 3 else -9
        values["a<=k-2"] = as_int(Fraction(v), "dim Y")
    if not values:
        raise OutOfRegimeError(f"no dim Y regime covers k={k}, a={a}, b={b}")
    distinct = set(values.values())
    if len(distinct) != 1:
        raise ArithmeticFault(f"dim Y regimes disagree at k={k}, a={a}, b={b}: {values}")
    return distinct.pop()


def rank3II_dimY_by_count(k: int, a: int, b: int) -> int:
    """``dim{S} + dim{tau} - dim{sigma}`` evaluated with engine ``h^0`` values."""
    s = SurfaceClass(k)
    return (
        count_binom(k + 3, 3)
        - max(k - 3, 0)
        - 10
        + 3 * h0_master(a, b, s)
        - 3 * h0_master(k - a, k - b, s)
    )


def klarge_hypothesis(k: int, a: int, b: int) -> bool:
    """Whether (k, a, b) satisfies the hypothesis of the general ``h^1(End E)`` formula."""
    if k < 2:
        return False
    if classify(rank3_spec(k, a, b)).status is not Status.STABLE:
        return False
    if a > b:
        return (b >= k and b * (k - 1) - a * (k - 2) > 2) or (a, b) == (k + 1, k)
    return a > k or (a, b) == (k, k + 1)


def rank3II_h1_klarge(k: int, nu: int, c1: int, a: int, b: int) -> ModuliReport:
    """``h^1(End E) = binom(k+3, 3) - 10 + 3 h^0(O_S(aL + bC)) - dim(im delta)``.

    The image of delta is only bounded (by ``max(k-3, 0)``), so ``h^1`` and
    ``dim_E M`` come back as intervals whose upper end is the zero-image value.
    """
    if 3 * nu + c1 != k:
        raise PreconditionError(f"k={k} does not match 3 nu + c1 = {3 * nu + c1}")
    if not klarge_hypothesis(k, a, b):
        raise OutOfRegimeError(f"(k, a, b) = ({k}, {a}, {b}) is outside the hypothesis")
    spec = BundleSpec.rank3(nu, c1, a, b)
    c = rank3_chern(spec)
    ed = rank3_ed(c.c1, c.c2)
    delta_max = max(k - 3, 0)
    top = count_binom(k + 3, 3) - 10 + 3 * h0_master(a, b, SurfaceClass(k))
    h1 = span(top - delta_max, top)
    dim_y = rank3II_dimY(k, a, b)
    return ModuliReport(
        dim_Y=dim_y,
        ed=ed,
        h1_end=h1,
        h2_end=span(top - delta_max - ed, top - ed),
        dim_M=span(max(dim_y, ed), top),
        smooth_at_E=None,
        codim_bound=delta_max,
        delta_assumption=delta_max > 0,
    )


def rank3II_report_k2(a: int, b: int) -> ModuliReport:
    """Quadric case: M is smooth at E and ``dim_E M = h^1(End E)``."""
    _stable(rank3_spec(2, a, b))
    dim_y = 3 * (a + 1) * (b + 1) if max(a, b) >= 3 else 12 * a + 12 * b - 24
    if min(a, b) >= 3:
        h1, h2 = 3 * (a + 1) * (b + 1), 3 * (a - 3) * (b - 3)
    else:
        h1, h2 = 12 * a + 12 * b - 24, 0
    ed = rank3_ed(-1, rank3_chern(rank3_spec(2, a, b)).c2)
    notes = ()
    if dim_y != h1:
        notes = (f"dim Y = {dim_y} < dim_E M = {h1}",)
    return ModuliReport(dim_Y=dim_y, ed=ed, h1_end=h1, h2_end=h2, dim_M=h1, smooth_at_E=True, notes=notes)


def _k3_upper_branch(a: int, b: int) -> bool:
    # "b >= a or a > b >= 2 + a/2"
    return b >= a or 2 * b >= 4 + a


def rank3II_report_k3(a: int, b: int) -> ModuliReport:
    """Cubic case."""
    _stable(rank3_spec(3, a, b))
    if max(a, b) >= 4:
        dim_y = 6 * a * b + 3 * b - 3 * count_binom(a, 2) + 13
    elif a >= b:
        dim_y = 12 * a + 24 * b - 44
    elif (a, b) == (2, 3):
        dim_y = 52
    elif (a, b) == (1, 3):
        dim_y = 37
    else:
        raise OutOfRegimeError(f"no dim Y branch for k=3, a={a}, b={b}")

    ed = rank3_ed(0, rank3_chern(rank3_spec(3, a, b)).c2)
    if min(a, b) <= 3:
        h1, h2 = 12 * a + 24 * b - 44, 0
        smooth = True
    elif _k3_upper_branch(a, b):
        h2 = 3 * as_int(2 * a * b - Fraction(a * a, 2) - Fraction(7 * a, 2) - 7 * b + 19, "h2")
        h1 = 6 * a * b + 3 * b - 3 * count_binom(a, 2) + 13
        smooth = True
    else:
        h2 = 3 * (2 * b * b - 14 * b + 25)
        h1 = 12 * a + 6 * b * b - 18 * b + 31
        smooth = True if (a % 2 == 1 and 2 * b == a + 3) else None

    if smooth:
        dim_m: Value = h1
    else:
        dim_m = span(max(dim_y, ed), h1)
    return ModuliReport(dim_Y=dim_y, ed=ed, h1_end=h1, h2_end=h2, dim_M=dim_m, smooth_at_E=smooth)
