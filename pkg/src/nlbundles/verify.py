"""Invariant suites: every closed form checked against an independent route over a grid.

Each suite yields ``(inputs, expected, actual)`` triples; a check passes when
``expected == actual``.  An exception raised while evaluating a check counts
as a failure of that check, so a single bad formula never aborts the run.

Library functions are looked up through their modules at call time so that a
patched formula is seen by the suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from . import bundles as bd
from . import cohomology as co
from . import lattice as lt
from . import moduli as md
from .errors import NLBundlesError

__all__ = ["Grids", "Failure", "VerifyReport", "SUITES", "run_suites"]


@dataclass(frozen=True)
class Grids:
    k_max: int = 12
    x_max: int = 25  # |x_L|, |x_C| for cohomology suites
    ab_max: int = 30  # a, b for moduli identity suites
    klarge_k_max: int = 8
    klarge_ab_max: int = 20
    nu_max: int = 6
    l_max: int = 10


@dataclass(frozen=True)
class Failure:
    suite: str
    inputs: dict
    expected: object
    actual: object

    def as_dict(self) -> dict:
        return {"suite": self.suite, "inputs": self.inputs, "expected": repr(self.expected), "actual": repr(self.actual)}


@dataclass
class VerifyReport:
    suites_run: list[str] = field(default_factory=list)
    checks_passed: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def checks_failed(self) -> int:
        return len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "suites_run": list(self.suites_run),
            "checks_passed": self.checks_passed,
            "checks_failed": self.checks_failed,
            "failures": [f.as_dict() for f in self.failures],
        }


Check = tuple[dict, object, object]


def _guard(inputs: dict, fn: Callable[[], Iterable[Check]]) -> Iterator[Check]:
    # turn an exception into one failed check instead of aborting the suite
    try:
        yield from fn()
    except NLBundlesError as exc:
        yield inputs, "no error", f"{type(exc).__name__}: {exc}"


def _chi_p3_line(j: int) -> int:
    return lt.as_int(lt.poly_binom(j + 3, 3))


# lattice and cohomology


def suite_cohomology(g: Grids) -> Iterator[Check]:
    """h0 - h1 + h2 = chi, h1 >= 0 and Serre duality on every class of the grid."""
    r = range(-g.x_max, g.x_max + 1)
    for k in range(2, g.k_max + 1):
        s = lt.SurfaceClass(k)
        kc = lt.canonical_class(s)
        for x in r:
            for y in r:
                d = lt.DivisorClass(x, y)
                inp = {"k": k, "x_L": x, "x_C": y}

                def checks(d=d, s=s, kc=kc, inp=inp):
                    h = co.cohomology(d, s)
                    yield {**inp, "check": "euler"}, h.chi, h.h0 - h.h1 + h.h2
                    yield {**inp, "check": "h1>=0"}, True, h.h1 >= 0
                    yield {**inp, "check": "h2=h0(K-D)"}, co.h0_master((kc - d).x_L, (kc - d).x_C, s), h.h2
                    dual = co.cohomology(kc - d, s)
                    yield {**inp, "check": "serre"}, (h.h2, h.h1, h.h0), (dual.h0, dual.h1, dual.h2)

                yield from _guard(inp, checks)
        # hyperplane twists against the restriction sequence from P^3
        for j in r:
            d = lt.DivisorClass.of(j=j)
            inp = {"k": k, "j": j}
            yield {**inp, "check": "chi O_S(j)"}, _chi_p3_line(j) - _chi_p3_line(j - k), lt.chi_divisor(d, s)
            yield {**inp, "check": "h0 O_S(j)"}, co.h0_surface_twist(j, s), co.h0_master(j, j, s)


def suite_vanishing(g: Grids) -> Iterator[Check]:
    """Vanishing criteria for O_S(-aL)(j), O_S(-bC)(j) against the engine."""
    for k in range(2, g.k_max + 1):
        s = lt.SurfaceClass(k)
        for n in range(g.x_max + 1):
            for j in range(g.x_max + 1):
                inp = {"k": k, "n": n, "j": j}

                def checks(n=n, j=j, s=s, inp=inp):
                    yield {**inp, "check": "h0(-nL)(j)"}, co.h0_master(j - n, j, s) == 0, co.vanish_h0_neg_aL(n, j, s)
                    yield {**inp, "check": "h0(-nC)(j)"}, co.h0_master(j, j - n, s) == 0, co.vanish_h0_neg_bC(n, j, s)
                    h1_l = co.cohomology(lt.DivisorClass(-n - j, -j), s).h1
                    yield {**inp, "check": "h1(-nL)(-j)"}, h1_l == 0, co.vanish_h1_neg_aL(n, j, s)
                    h1_c = co.cohomology(lt.DivisorClass(-j, -n - j), s).h1
                    yield {**inp, "check": "h1(-nC)(-j)"}, h1_c == 0, co.vanish_h1_neg_bC(n, j, s)
                    if j == 0:
                        yield {**inp, "check": "h0(nC)"}, n + 1, co.h0_master(0, n, s)
                    if j > k - 4:
                        yield {**inp, "check": "h0(nC)(j)"}, co.h0_master(j, n + j, s), co.h0_bC_twist(n, j, s)

                yield from _guard(inp, checks)


def suite_regimes(g: Grids) -> Iterator[Check]:
    """Overlapping h0 regimes agree; the pushforward to P^1 has the right number of sections."""
    for k in range(2, g.k_max + 1):
        s = lt.SurfaceClass(k)
        for a in range(g.x_max + 1):
            for b in range(g.x_max + 1):
                inp = {"k": k, "a": a, "b": b}

                def checks(a=a, b=b, s=s, k=k, inp=inp):
                    vals = co.h0_regimes(a, b, s)
                    yield {**inp, "check": "overlap"}, 1, len(set(vals.values()))
                    if b >= a and a <= k - 2:
                        pushed = sum(m * (d + 1) for d, m in co.direct_image_degrees(a, b, s))
                        yield {**inp, "check": "direct image"}, co.h0_master(a, b, s), pushed

                yield from _guard(inp, checks)


# bundle constructions


def _stable_rank2_literal(k: int, nu: int, c1: int, a: int, b: int) -> bool:
    if k == 2:
        return min(a, b) == 0 and max(a, b) >= 2
    return k >= 3 and a == 0 and b > nu + c1


def _chi_extension(spec, j: int) -> int:
    """chi(E(j)) from the defining sequence: copies of O(j - nu) plus chi(S; L(j))."""
    s = spec.surface
    if spec.family is bd.Family.RANK3_HYPERPLANE:
        tail = _chi_p3_line(j - spec.l) - _chi_p3_line(j - spec.l - spec.k)
    else:
        tail = lt.chi_divisor(spec.line_bundle().twist(j), s)
    return spec.rank * _chi_p3_line(j - spec.nu) + tail


def suite_rank2(g: Grids) -> Iterator[Check]:
    """Rank-2 classifier, Chern classes and thresholds against the engine."""
    for nu in range(1, g.nu_max + 3):
        for c1 in (0, -1):
            k = 2 * nu + c1
            if k < 2:
                continue
            s = lt.SurfaceClass(k)
            for a in range(-2, 13):
                for b in range(-2, g.ab_max + 1):
                    spec = bd.BundleSpec.rank2(nu, c1, a, b)
                    inp = {"nu": nu, "c1": c1, "a": a, "b": b}

                    def checks(spec=spec, inp=inp, k=k, s=s, nu=nu, c1=c1, a=a, b=b):
                        v = bd.classify_rank2(spec)
                        stable = v.status is bd.Status.STABLE
                        yield {**inp, "check": "literal"}, _stable_rank2_literal(k, nu, c1, a, b), stable
                        line = spec.line_bundle()
                        d = lt.DivisorClass(a, b)
                        engine = (
                            a >= 0 and b * (k - 1) - a * (k - 2) >= 0
                            and lt.pair(d, d, s) == 0
                            and co.h0_master(line.x_L, line.x_C, s) == 0
                        )
                        yield {**inp, "check": "engine"}, engine, stable
                        if not stable:
                            return
                        c = bd.rank2_chern(spec)
                        bb = max(a, b)
                        yield {**inp, "check": "c2 forms"}, bb * (2 * nu + c1 - 1) - nu * (nu + c1), c.c2
                        yield {**inp, "check": "grr"}, bd.chern_via_grr(spec), c
                        yield {**inp, "check": "c3"}, True, bd.check_rank2_c3(spec)
                        t = bd.rank2_thresholds(spec)
                        yield {**inp, "check": "jump>=1"}, True, t.jump_size >= 1
                        for j in range(-8, 9):
                            rr = lt.riemann_roch_p3(lt.twist_chern(c, j))
                            yield {**inp, "j": j, "check": "chi E(j)"}, _chi_extension(spec, j), rr
                        for l in range(nu - 3, nu + 30):
                            h = co.cohomology(line.twist(l), s)
                            yield {**inp, "l": l, "check": "h2"}, 0, h.h2
                            if l > t.h1_vanishes_above:
                                yield {**inp, "l": l, "check": "h1"}, 0, h.h1

                    yield from _guard(inp, checks)


def _rank3_literal(k: int, nu: int, c1: int, a: int, b: int) -> str:
    """Status straight from the case list of the rank-3 classification."""
    if k == 2:
        return "Stable" if a >= 0 and b >= 0 and max(a, b) >= 2 else "other"
    if k >= 3 and (k - 1) * a > (k - 1) * b >= (k - 2) * a and a > 0 and (k, a, b) != (3, 2, 1):
        return "Stable"
    if k >= 3 and b >= a and b > 2 * nu + c1:
        lim2 = nu if c1 == 0 else nu - 1  # threshold doubled
        if 2 * a > lim2:
            return "Stable"
        if a >= 0:
            return "Unknown"
    return "other"


def suite_rank3(g: Grids) -> Iterator[Check]:
    """Rank-3 classifier, Chern classes and thresholds against the engine."""
    for nu in range(1, g.nu_max + 1):
        for c1 in (0, -1, -2):
            k = 3 * nu + c1
            if k < 2:
                continue
            s = lt.SurfaceClass(k)
            for a in range(-2, g.klarge_ab_max + 1):
                for b in range(-2, g.klarge_ab_max + 1):
                    spec = bd.BundleSpec.rank3(nu, c1, a, b)
                    inp = {"nu": nu, "c1": c1, "a": a, "b": b}

                    def checks(spec=spec, inp=inp, k=k, s=s, nu=nu, c1=c1, a=a, b=b):
                        v = bd.classify_rank3(spec)
                        got = v.status.value if v.admissible else "other"
                        yield {**inp, "check": "literal"}, _rank3_literal(k, nu, c1, a, b), got
                        if not v.admissible:
                            return
                        line = spec.line_bundle()
                        if v.status is bd.Status.STABLE:
                            yield {**inp, "check": "h0(L)=0"}, 0, co.h0_master(line.x_L, line.x_C, s)
                        if v.code == "case3":
                            yield {**inp, "check": "case3 bounds"}, True, a >= k - 1 and b >= k - 2
                        c = bd.rank3_chern(spec)
                        yield {**inp, "check": "grr"}, bd.chern_via_grr(spec), c
                        if k == 2:
                            yield {**inp, "check": "c3 quadric"}, 2 * a * b - a - b + 1, c.c3
                        for j in range(-6, 7):
                            rr = lt.riemann_roch_p3(lt.twist_chern(c, j))
                            yield {**inp, "j": j, "check": "chi E(j)"}, _chi_extension(spec, j), rr
                        if v.status is not bd.Status.STABLE or k < 3:
                            return
                        t = bd.rank3_thresholds(spec)
                        for l in range(nu - 3, nu + 25):
                            h = co.cohomology(line.twist(l), s)
                            yield {**inp, "l": l, "check": "h2 iff"}, h.h2 == 0, t.h2_vanishes(l)
                            if t.h1_vanishes(l):
                                yield {**inp, "l": l, "check": "h1"}, 0, h.h1

                    yield from _guard(inp, checks)


def suite_hyperplane(g: Grids) -> Iterator[Check]:
    """Hyperplane-power family: Chern classes, Euler characteristics, h1 - h2 = ed."""
    for nu in range(1, 5):
        for c1 in (0, -1, -2):
            for l in range(1, g.l_max + 1):
                spec = bd.BundleSpec.hyperplane(nu, c1, l)
                inp = {"nu": nu, "c1": c1, "l": l}

                def checks(spec=spec, inp=inp):
                    _, c = bd.rank3_hyperplane(spec)
                    yield {**inp, "check": "grr"}, bd.chern_via_grr(spec), c
                    for j in range(-6, 7):
                        rr = lt.riemann_roch_p3(lt.twist_chern(c, j))
                        yield {**inp, "j": j, "check": "chi E(j)"}, _chi_extension(spec, j), rr
                    r = md.rank3I_report(spec.k, spec.nu, spec.c1, spec.l)
                    yield {**inp, "check": "h1-h2=ed"}, md.rank3_ed(c.c1, c.c2), r.h1_end - r.h2_end
                    yield {**inp, "check": "h2>=0"}, True, r.h2_end >= 0

                yield from _guard(inp, checks)


# moduli


def suite_moduli_rank2(g: Grids) -> Iterator[Check]:
    """Rank-2 family dimensions against the parameter count and Riemann-Roch."""
    for k in range(2, g.k_max + 1):
        for b in range(0, g.ab_max + 1):
            spec = md.rank2_spec(k, b)
            if bd.classify_rank2(spec).status is not bd.Status.STABLE:
                continue
            inp = {"k": k, "b": b}

            def checks(spec=spec, k=k, b=b, inp=inp):
                c = bd.rank2_chern(spec)
                ed = md.rank2_ed(c.c1, c.c2)
                if k >= 3:
                    yield {**inp, "check": "dimY count"}, md.rank2_dimY_by_count(k, b), md.rank2_dimY(k, b)
                if k in (2, 3):
                    r = md.rank2_exact_dim(k, b)
                    yield {**inp, "check": "exact=ed"}, ed, r.dim_M
                elif b >= k - 4:
                    r = md.rank2_dim_bounds(k, b)
                    yield {**inp, "check": "lower=ed"}, ed, md.bounds(r.dim_M)[0]

            yield from _guard(inp, checks)


def suite_moduli_rank3(g: Grids) -> Iterator[Check]:
    """Quadric and cubic theorems: h1 - h2 = ed, branch overlaps, agreement with the general count."""
    r = range(0, g.ab_max + 1)
    for k in (2, 3):
        for a in r:
            for b in r:
                spec = md.rank3_spec(k, a, b)
                if bd.classify_rank3(spec).status is not bd.Status.STABLE:
                    continue
                inp = {"k": k, "a": a, "b": b}

                def checks(spec=spec, k=k, a=a, b=b, inp=inp):
                    c = bd.rank3_chern(spec)
                    ed = md.rank3_ed(c.c1, c.c2)
                    rep = md.rank3II_report_k2(a, b) if k == 2 else md.rank3II_report_k3(a, b)
                    yield {**inp, "check": "h1-h2=ed"}, ed, rep.h1_end - rep.h2_end
                    yield {**inp, "check": "dimY general"}, md.rank3II_dimY(k, a, b), rep.dim_Y
                    if k == 2:
                        if max(a, b) == 3:
                            yield {**inp, "check": "dimY overlap"}, 3 * (a + 1) * (b + 1), 12 * a + 12 * b - 24
                        if min(a, b) == 3:
                            yield {**inp, "check": "h1 overlap"}, 3 * (a + 1) * (b + 1), 12 * a + 12 * b - 24
                    if k == 3 and min(a, b) >= 4 and md._k3_upper_branch(a, b):
                        h2 = 3 * co.h0_master(a - 4, b - 4, lt.SurfaceClass(3))
                        yield {**inp, "check": "h2 via sections"}, h2, rep.h2_end

                yield from _guard(inp, checks)


def suite_parameter_count(g: Grids) -> Iterator[Check]:
    """Closed forms for dim Y against the parameter count with engine h0 values."""
    r = range(0, g.klarge_ab_max + 1)
    for k in range(2, g.klarge_k_max + 1):
        for a in r:
            for b in r:
                if not bd.classify_rank3(md.rank3_spec(k, a, b)).admissible:
                    continue
                inp = {"k": k, "a": a, "b": b}

                def checks(k=k, a=a, b=b, inp=inp):
                    yield {**inp, "check": "dimY count"}, md.rank3II_dimY_by_count(k, a, b), md.rank3II_dimY(k, a, b)

                yield from _guard(inp, checks)


def suite_klarge(g: Grids) -> Iterator[Check]:
    """Under the large-k hypothesis: dim Y <= h1(End E) with gap at most max(k-3, 0)."""
    r = range(0, g.klarge_ab_max + 1)
    for k in range(2, g.klarge_k_max + 1):
        nu, c1 = bd.nu_c1_for_degree(k, 3)
        s = lt.SurfaceClass(k)
        for a in r:
            for b in r:
                if not md.klarge_hypothesis(k, a, b):
                    continue
                inp = {"k": k, "a": a, "b": b}

                def checks(k=k, nu=nu, c1=c1, a=a, b=b, s=s, inp=inp):
                    rep = md.rank3II_h1_klarge(k, nu, c1, a, b)
                    hi = md.bounds(rep.h1_end)[1]
                    yield {**inp, "check": "dimY<=h1"}, True, rep.dim_Y <= hi
                    yield {**inp, "check": "gap"}, True, hi - rep.dim_Y <= max(k - 3, 0)
                    yield {**inp, "check": "h0(K'-D)=0"}, 0, co.h0_master(k - a, k - b, s)
                    if k in (2, 3):
                        exact = md.rank3II_report_k2(a, b) if k == 2 else md.rank3II_report_k3(a, b)
                        yield {**inp, "check": "h1 exact"}, exact.h1_end, rep.h1_end

                yield from _guard(inp, checks)


SUITES: dict[str, Callable[[Grids], Iterable[Check]]] = {
    "cohomology": suite_cohomology,
    "vanishing": suite_vanishing,
    "regimes": suite_regimes,
    "rank2": suite_rank2,
    "rank3": suite_rank3,
    "hyperplane": suite_hyperplane,
    "moduli_rank2": suite_moduli_rank2,
    "moduli_rank3": suite_moduli_rank3,
    "parameter_count": suite_parameter_count,
    "klarge": suite_klarge,
}


def run_suites(names: Optional[Iterable[str]] = None, grids: Optional[Grids] = None) -> VerifyReport:
    grids = grids or Grids()
    names = list(SUITES) if names is None else list(names)
    report = VerifyReport()
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        report.suites_run.append(name)
        for inputs, expected, actual in SUITES[name](grids):
            if expected == actual:
                report.checks_passed += 1
            else:
                report.failures.append(Failure(name, inputs, expected, actual))
    return report
