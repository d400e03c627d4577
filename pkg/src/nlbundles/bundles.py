"""Stable rank-2 and rank-3 bundles on P^3 built as extensions by a line bundle on S.

Three families are covered:

* rank 2:  ``0 -> O(-nu)^2 -> E -> O_S(-aL - bC)(nu + c1) -> 0`` with ``k = 2 nu + c1``;
* rank 3 from a divisor:  ``0 -> O(-nu)^3 -> E -> O_S(-aL - bC)(2 nu + c1) -> 0`` with ``k = 3 nu + c1``;
* rank 3 from a hyperplane power:  ``0 -> O(-nu)^3 -> E -> O_S(-l) -> 0``.

Verdicts describe the generic extension with the given discrete parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import NotAdmissibleError, PreconditionError
from .lattice import (
    ChernData,
    DivisorClass,
    SurfaceClass,
    as_int,
    degree,
    pair,
    twist_chern,
)
from .cohomology import h0_master

__all__ = [
    "Family",
    "Status",
    "StabilityVerdict",
    "BundleSpec",
    "nu_c1_for_degree",
    "classify",
    "classify_rank2",
    "classify_rank3",
    "is_semistable_rank2",
    "rank2_chern",
    "rank3_chern",
    "rank3_hyperplane",
    "chern",
    "chern_via_grr",
    "check_rank2_c3",
    "Rank2Thresholds",
    "Rank3Thresholds",
    "H1Clause",
    "rank2_thresholds",
    "rank3_thresholds",
    "thresholds",
    "DegeneracyCurve",
    "degeneracy_curve",
]


class Family(str, Enum):
    RANK2 = "rank2"
    RANK3_LINE = "rank3_line"
    RANK3_HYPERPLANE = "rank3_hyperplane"


class Status(str, Enum):
    STABLE = "Stable"
    SEMISTABLE_ONLY = "SemistableOnly"
    NOT_LOCALLY_FREE = "NotLocallyFreeGeneric"
    NOT_STABLE = "NotStable"
    UNKNOWN = "Unknown"
    INVALID = "Invalid"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    code: str
    text: str

    @property
    def admissible(self) -> bool:
        """Stable, or in the unresolved region where Chern data still make sense."""
        return self.status in (Status.STABLE, Status.UNKNOWN)


_C1_RANGE = {2: (0, -1), 3: (0, -1, -2)}


def nu_c1_for_degree(k: int, rank: int) -> tuple[int, int]:
    """Split ``k = rank * nu + c1`` with ``c1`` normalized (``-rank < c1 <= 0``)."""
    if rank not in _C1_RANGE:
        raise PreconditionError(f"rank must be 2 or 3, got {rank}")
    if k < 1:
        raise PreconditionError(f"degree must be positive, got {k}")
    nu = -(-k // rank)
    return nu, k - rank * nu


@dataclass(frozen=True)
class BundleSpec:
    family: Family
    nu: int
    c1: int
    a: Optional[int] = None
    b: Optional[int] = None
    l: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.nu, int) or self.nu < 1:
            raise PreconditionError(f"nu must be a positive integer, got {self.nu!r}")
        if self.c1 not in _C1_RANGE[self.rank]:
            raise PreconditionError(f"c1 must be one of {_C1_RANGE[self.rank]} for rank {self.rank}, got {self.c1}")
        if self.family is Family.RANK3_HYPERPLANE:
            if self.l is None or self.a is not None or self.b is not None:
                raise PreconditionError("hyperplane-power family takes l only")
            if self.l < 1:
                raise PreconditionError(f"l must be positive, got {self.l}")
        else:
            if self.a is None or self.b is None or self.l is not None:
                raise PreconditionError(f"{self.family.value} family takes a and b only")

    @classmethod
    def rank2(cls, nu: int, c1: int, a: int, b: int) -> "BundleSpec":
        return cls(Family.RANK2, nu, c1, a=a, b=b)

    @classmethod
    def rank3(cls, nu: int, c1: int, a: int, b: int) -> "BundleSpec":
        return cls(Family.RANK3_LINE, nu, c1, a=a, b=b)

    @classmethod
    def hyperplane(cls, nu: int, c1: int, l: int) -> "BundleSpec":
        return cls(Family.RANK3_HYPERPLANE, nu, c1, l=l)

    @classmethod
    def from_degree(cls, family: Family, k: int, **params) -> "BundleSpec":
        family = Family(family)
        nu, c1 = nu_c1_for_degree(k, 2 if family is Family.RANK2 else 3)
        return cls(family, nu, c1, **params)

    @property
    def rank(self) -> int:
        return 2 if self.family is Family.RANK2 else 3

    @property
    def k(self) -> int:
        return self.rank * self.nu + self.c1

    @property
    def surface(self) -> SurfaceClass:
        return SurfaceClass(self.k)

    def normalized(self) -> "BundleSpec":
        """Degree-1 divisor specs are really hyperplane-power specs with ``l = a``."""
        if self.family is Family.RANK3_LINE and self.k == 1 and self.a >= 1:
            return BundleSpec.hyperplane(self.nu, self.c1, self.a)
        return self

    def line_bundle(self) -> DivisorClass:
        """Class of the line bundle on S that E is an extension by."""
        if self.family is Family.RANK3_HYPERPLANE:
            return DivisorClass.of(j=-self.l)
        twist = self.nu + self.c1 if self.family is Family.RANK2 else 2 * self.nu + self.c1
        return DivisorClass.of(-self.a, -self.b, twist)

    def as_dict(self) -> dict:
        return {
            "family": self.family.value,
            "k": self.k,
            "nu": self.nu,
            "c1": self.c1,
            "a": self.a,
            "b": self.b,
            "l": self.l,
        }


def _globally_generated(a: int, b: int, k: int) -> bool:
    # O_S(aL + bC) is generated iff its degrees on C and on L are >= 0
    return a >= 0 and b * (k - 1) - a * (k - 2) >= 0


def _expect(spec: BundleSpec, family: Family) -> None:
    if spec.family is not family:
        raise PreconditionError(f"expected a {family.value} spec, got {spec.family.value}")


def _quadric_sorted(spec: BundleSpec) -> tuple[int, int]:
    # on the quadric L and C are the two rulings, so (a, b) ~ (b, a)
    if spec.k == 2:
        return min(spec.a, spec.b), max(spec.a, spec.b)
    return spec.a, spec.b


def is_semistable_rank2(spec: BundleSpec) -> bool:
    """Semistability (``c1 = 0``): ``nu >= 0`` and ``h^0(S; L(-1)) = 0``."""
    _expect(spec, Family.RANK2)
    if spec.c1 != 0:
        raise PreconditionError("semistability predicate is stated for c1 = 0")
    spec.surface.require_lattice()
    d = spec.line_bundle().twist(-1)
    return spec.nu >= 0 and h0_master(d.x_L, d.x_C, spec.surface) == 0


def classify_rank2(spec: BundleSpec) -> StabilityVerdict:
    _expect(spec, Family.RANK2)
    k, nu, c1, a, b = spec.k, spec.nu, spec.c1, spec.a, spec.b
    if k == 1:
        return StabilityVerdict(Status.INVALID, "k1_excluded", "k = 1 cannot occur for rank 2")
    if k == 2:
        if min(a, b) == 0 and max(a, b) >= 2:
            return StabilityVerdict(Status.STABLE, "case1_quadric", "k = 2: one of a, b is 0 and the other is >= 2")
    elif a == 0 and b > nu + c1:
        return StabilityVerdict(Status.STABLE, "case2", f"k >= 3, a = 0 and b > nu + c1 = {nu + c1}")

    s = spec.surface
    if not _globally_generated(a, b, k):
        return StabilityVerdict(
            Status.NOT_LOCALLY_FREE, "not_globally_generated",
            "O_S(aL + bC) is not globally generated, so the generic extension is not locally free",
        )
    d = DivisorClass(a, b)
    if pair(d, d, s) != 0:
        return StabilityVerdict(
            Status.NOT_STABLE, "d_squared_nonzero",
            "(aL + bC)^2 != 0, so two sections cannot generate O_S(aL + bC)",
        )
    if c1 == 0 and is_semistable_rank2(spec):
        return StabilityVerdict(
            Status.SEMISTABLE_ONLY, "semistable_only",
            "h0(L) != 0 but h0(L(-1)) = 0: semistable, not stable",
        )
    return StabilityVerdict(Status.NOT_STABLE, "sections_of_L", "h0(S; L) != 0 (b <= nu + c1)")


def classify_rank3(spec: BundleSpec) -> StabilityVerdict:
    if spec.family is Family.RANK3_HYPERPLANE:
        return rank3_hyperplane(spec)[0]
    _expect(spec, Family.RANK3_LINE)
    k, nu, c1, a, b = spec.k, spec.nu, spec.c1, spec.a, spec.b
    if k == 1:
        if a >= 1:
            return StabilityVerdict(Status.STABLE, "case1_hyperplane", f"k = 1: S is a plane and L = O_H(-{a})")
        return StabilityVerdict(Status.NOT_STABLE, "case1_needs_a_positive", "k = 1 requires a > 0")
    if not _globally_generated(a, b, k):
        return StabilityVerdict(
            Status.NOT_LOCALLY_FREE, "not_globally_generated",
            "O_S(aL + bC) is not globally generated, so the generic extension is not locally free",
        )
    if max(a, b) <= 2 * nu + c1:
        if (k, a, b) == (3, 2, 1):
            return StabilityVerdict(Status.NOT_STABLE, "k3_a2_b1_exclusion", "k=3,a=2,b=1 exclusion: h0(L) != 0")
        return StabilityVerdict(
            Status.NOT_STABLE, "sections_of_L", f"max(a, b) <= 2 nu + c1 = {2 * nu + c1}, so h0(L) != 0",
        )
    if k == 2:
        return StabilityVerdict(Status.STABLE, "case2_quadric", "k = 2: a, b >= 0 and max(a, b) >= 2")
    if a > b:
        return StabilityVerdict(Status.STABLE, "case3", "k >= 3 and a > b >= (k-2)a/(k-1) > 0")
    # b >= a: stable above the injectivity bound, unresolved at or below it
    bound = Fraction(nu, 2) if c1 == 0 else Fraction(nu - 1, 2)
    if a > bound:
        return StabilityVerdict(Status.STABLE, "case4", f"k >= 3, b >= a > {bound} and b > 2 nu + c1")
    code = "case4_unresolved_boundary" if a == bound else "case4_unresolved"
    return StabilityVerdict(
        Status.UNKNOWN, code,
        f"a <= {bound}: the generic extension is locally free but its stability is not known",
    )


def classify(spec: BundleSpec) -> StabilityVerdict:
    if spec.family is Family.RANK2:
        return classify_rank2(spec)
    return classify_rank3(spec)


def _require(spec: BundleSpec, verdict: StabilityVerdict, allow_unknown: bool = False) -> None:
    ok = verdict.status is Status.STABLE or (allow_unknown and verdict.status is Status.UNKNOWN)
    if not ok:
        raise NotAdmissibleError(f"{spec.as_dict()} is {verdict.status.value} ({verdict.code})")


def rank2_chern(spec: BundleSpec) -> ChernData:
    _require(spec, classify_rank2(spec))
    k, c1 = spec.k, spec.c1
    _, b = _quadric_sorted(spec)
    c2 = b * (k - 1) - Fraction(k * k - c1 * c1, 4)
    return ChernData(2, c1, as_int(c2, "c2"), 0)


def rank3_hyperplane(spec: BundleSpec) -> tuple[StabilityVerdict, ChernData]:
    _expect(spec, Family.RANK3_HYPERPLANE)
    k, nu, c1, l = spec.k, spec.nu, spec.c1, spec.l
    verdict = StabilityVerdict(Status.STABLE, "hyperplane_power", "extension by O_S(-l): always stable")
    c2 = Fraction(k * k + c1 * k + c1 * c1, 3) + l * k
    c3 = (2 * nu + c1) ** 3 + (3 * nu + 2 * c1) * l * k + l * l * k
    return verdict, ChernData(3, c1, as_int(c2, "c2"), c3)


def rank3_chern(spec: BundleSpec) -> ChernData:
    spec = spec.normalized()
    if spec.family is Family.RANK3_HYPERPLANE:
        return rank3_hyperplane(spec)[1]
    _require(spec, classify_rank3(spec), allow_unknown=True)
    k, c1, a, b = spec.k, spec.c1, spec.a, spec.b
    c2 = a + b * (k - 1) - Fraction(k * k - c1 * c1, 3)
    c3 = (
        2 * a * b * (k - 1)
        - a * a * (k - 2)
        - Fraction((a + (k - 1) * b) * (k - c1), 3)
        + Fraction((k - c1) ** 2 * (2 * k + c1), 27)
    )
    return ChernData(3, c1, as_int(c2, "c2"), as_int(c3, "c3"))


def chern(spec: BundleSpec) -> ChernData:
    if spec.family is Family.RANK2:
        return rank2_chern(spec)
    return rank3_chern(spec)


def chern_via_grr(spec: BundleSpec) -> ChernData:
    """Chern classes from Grothendieck-Riemann-Roch applied to the pushforward of the line bundle.

    Independent of the closed forms in :func:`rank2_chern` / :func:`rank3_chern`:
    only ``deg c1(L)`` and ``c1(L)^2`` on S enter.
    """
    spec = spec.normalized()
    nu, c1, k = spec.nu, spec.c1, spec.k
    if spec.family is Family.RANK3_HYPERPLANE:
        deg_l, sq_l = -spec.l * k, spec.l * spec.l * k
    else:
        s = spec.surface
        line = spec.line_bundle()
        deg_l, sq_l = degree(line, s), pair(line, line, s)
    if spec.rank == 2:
        return ChernData(2, c1, (nu + c1) ** 2 - deg_l, 0)
    c2 = 3 * nu * nu + 3 * nu * c1 + c1 * c1 - deg_l
    c3 = (2 * nu + c1) ** 3 - (3 * nu + 2 * c1) * deg_l + sq_l
    return ChernData(3, c1, c2, c3)


def check_rank2_c3(spec: BundleSpec) -> bool:
    """``((nu + c1)H - c1(L))^2 == 0`` on S, i.e. ``c3(E) = 0`` is consistent."""
    _require(spec, classify_rank2(spec))
    s = spec.surface
    d = DivisorClass.of(j=spec.nu + spec.c1) - spec.line_bundle()
    return pair(d, d, s) == 0


@dataclass(frozen=True)
class Rank2Thresholds:
    """Twists ``l`` at which the cohomology of ``E(l)`` vanishes, for a stable rank-2 E.

    ``H^3(E(l)) = 0`` for ``l >= h3_vanishes_from``; ``H^2`` and ``H^1`` vanish
    for ``l`` strictly above the respective bounds; ``E(l)`` is globally
    generated iff ``l >= globally_generated_from``.  The line L is a jumping
    line with ``E|_L = O(m) + O(-m + c1)``, ``m = jump_size``.
    """

    h3_vanishes_from: int
    h2_vanishes_above: int
    h1_vanishes_above: int
    globally_generated_from: int
    jump_size: int


def rank2_thresholds(spec: BundleSpec) -> Rank2Thresholds:
    _require(spec, classify_rank2(spec))
    k, nu, c1 = spec.k, spec.nu, spec.c1
    _, b = _quadric_sorted(spec)
    return Rank2Thresholds(
        h3_vanishes_from=-c1 - 4,
        h2_vanishes_above=nu - 4,
        h1_vanishes_above=b * (k - 1) - nu - c1 - 2,
        globally_generated_from=b * (k - 1) - nu - c1,
        jump_size=b * (k - 1) - nu,
    )


@dataclass(frozen=True)
class H1Clause:
    """One clause of the list of twists where ``H^1(E(l))`` vanishes.

    ``relation`` is ``">"`` (vanishes for ``l > bound``), ``"="`` (vanishes at
    ``l == bound``) or ``"unspecified"`` when the clause names no twist.
    """

    text: str
    applies: bool
    relation: str
    bound: Optional[int]
    ambiguous: bool = False


@dataclass(frozen=True)
class Rank3Thresholds:
    h3_vanishes_from: int
    h2_statement_floor: int  # the h2 criterion is only claimed for l > this
    h2_vanishes_above: int
    h1_clauses: tuple[H1Clause, ...]
    globally_generated_from: int

    def h2_vanishes(self, l: int) -> Optional[bool]:
        if l <= self.h2_statement_floor:
            return None
        return l > self.h2_vanishes_above

    def h1_vanishes(self, l: int) -> Optional[bool]:
        """Read the clause list at twist ``l``; ``None`` where it says nothing definite."""
        live = [c for c in self.h1_clauses if c.applies]
        if any(c.ambiguous for c in live):
            return None
        for c in live:
            if (c.relation == ">" and l > c.bound) or (c.relation == "=" and l == c.bound):
                return True
        return False


def rank3_thresholds(spec: BundleSpec) -> Rank3Thresholds:
    _expect(spec, Family.RANK3_LINE)
    _require(spec, classify_rank3(spec))
    k, nu, c1, a, b = spec.k, spec.nu, spec.c1, spec.a, spec.b
    if k < 3:
        raise PreconditionError("rank-3 threshold statements cover k >= 3 only")
    clauses = (
        H1Clause("For b=a.", b == a, "unspecified", None, ambiguous=True),
        H1Clause("For b>a, l > b+nu-4+(k-2)[b-a-1].", b > a, ">", b + nu - 4 + (k - 2) * (b - a - 1)),
        H1Clause("For b=a+1, l=b+nu-4.", b == a + 1, "=", b + nu - 4),
        H1Clause("For a>b, l > a+nu-4.", a > b, ">", a + nu - 4),
        H1Clause("For l=a+nu-4, a=b+1.", a == b + 1, "=", a + nu - 4),
    )
    if a >= b:
        gg = max(a - k + nu, nu)
    else:
        gg = b * (k - 1) - a * (k - 2) - k + nu
    return Rank3Thresholds(
        h3_vanishes_from=-4 if c1 == 0 else -3,
        h2_statement_floor=nu - 4,
        h2_vanishes_above=min(a, b) + nu - 4,
        h1_clauses=clauses,
        globally_generated_from=gg,
    )


def thresholds(spec: BundleSpec):
    if spec.family is Family.RANK2:
        return rank2_thresholds(spec)
    return rank3_thresholds(spec)


@dataclass(frozen=True)
class DegeneracyCurve:
    """Numerical data of the curves ``Y = Z(s1 ^ s2)`` on S for ``s1, s2`` in a generic 3-dim space of sections of ``E(nu)``."""

    degree: int
    self_intersection: int
    genus: Fraction = field(compare=True)


def degeneracy_curve(spec: BundleSpec) -> DegeneracyCurve:
    if spec.rank != 3:
        raise PreconditionError("degeneracy curves are defined for the rank-3 families")
    twisted = twist_chern(rank3_chern(spec), spec.nu)
    g = 1 + Fraction(twisted.c3 + twisted.c2 * (spec.k - 4), 2)
    return DegeneracyCurve(twisted.c2, twisted.c3, g)
