import pytest
from hypothesis import given, strategies as st

from nlbundles.bundles import Status, classify, rank2_chern, rank3_chern
from nlbundles.errors import ArithmeticFault, NotAdmissibleError, OutOfRegimeError, PreconditionError
from nlbundles.moduli import (
    Interval,
    ModuliReport,
    bounds,
    klarge_hypothesis,
    rank2_dim_bounds,
    rank2_dimY,
    rank2_dimY_by_count,
    rank2_ed,
    rank2_exact_dim,
    rank2_spec,
    rank3_ed,
    rank3_spec,
    rank3I_report,
    rank3II_dimY,
    rank3II_dimY_by_count,
    rank3II_h1_klarge,
    rank3II_report_k2,
    rank3II_report_k3,
    span,
)
from nlbundles.cohomology import h0_master
from nlbundles.lattice import SurfaceClass, count_binom

ab30 = st.integers(min_value=0, max_value=30)


def test_interval():
    assert span(3, 3) == 3
    assert span(2, 5) == Interval(2, 5)
    assert 4 in Interval(2, 5)
    assert bounds(Interval(2, 5)) == (2, 5)
    assert bounds(7) == (7, 7)
    assert bounds(None) == (None, None)
    with pytest.raises(ArithmeticFault):
        Interval(3, 2)


def test_report_invariants():
    with pytest.raises(ArithmeticFault):
        ModuliReport(dim_Y=1, ed=5, h1_end=5, h2_end=1, dim_M=5, smooth_at_E=True)
    with pytest.raises(ArithmeticFault):
        ModuliReport(dim_Y=9, ed=5, h1_end=5, h2_end=0, dim_M=5, smooth_at_E=True)


# rank 2


@pytest.mark.parametrize("k, b, expected", [(2, 2, 5), (3, 3, 21), (3, 4, 25), (4, 3, 29), (3, 2, 11), (2, 5, 17)])
def test_rank2_dimY_examples(k, b, expected):
    assert rank2_dimY(k, b) == expected


def test_rank2_dimY_rejects_unstable():
    with pytest.raises(NotAdmissibleError):
        rank2_dimY(4, 2)


@pytest.mark.parametrize("c1, c2, expected", [(0, 1, 5), (0, 2, 13), (-1, 2, 11)])
def test_rank2_ed(c1, c2, expected):
    assert rank2_ed(c1, c2) == expected


@pytest.mark.parametrize("k, b, dim", [(2, 2, 5), (2, 3, 13), (3, 2, 11)])
def test_rank2_exact_dim(k, b, dim):
    r = rank2_exact_dim(k, b)
    assert r.dim_M == dim == r.h1_end
    assert r.h2_end == 0
    assert r.smooth_at_E is True


def test_rank2_exact_dim_scope():
    with pytest.raises(OutOfRegimeError):
        rank2_exact_dim(4, 5)


@pytest.mark.parametrize("k, b, lo, hi", [(4, 5, 85, 94), (5, 5, 107, 133)])
def test_rank2_dim_bounds(k, b, lo, hi):
    r = rank2_dim_bounds(k, b)
    assert r.dim_M == Interval(lo, hi)
    assert r.h1_end == Interval(lo, hi)
    assert r.codim_bound == hi - r.dim_Y
    assert any("differs" in n for n in r.notes)


def test_rank2_dim_bounds_rejects():
    with pytest.raises(NotAdmissibleError):
        rank2_dim_bounds(4, 0)
    with pytest.raises(OutOfRegimeError):
        rank2_dim_bounds(3, 5)
    with pytest.raises(OutOfRegimeError):
        rank2_dim_bounds(12, 7)


def test_rank2_dim_bounds_boundary_flag():
    r = rank2_dim_bounds(10, 6)
    assert any("boundary" in n for n in r.notes)


@given(st.sampled_from([2, 3]), st.integers(min_value=2, max_value=30))
def test_rank2_exact_equals_ed(k, b):
    c = rank2_chern(rank2_spec(k, b))
    assert rank2_exact_dim(k, b).dim_M == rank2_ed(c.c1, c.c2) == 8 * b * (k - 1) - 2 * k * k - 3


@given(st.integers(min_value=3, max_value=12), ab30)
def test_rank2_dimY_parameter_count(k, b):
    if classify(rank2_spec(k, b)).status is not Status.STABLE:
        return
    assert rank2_dimY(k, b) == rank2_dimY_by_count(k, b)


# rank 3, hyperplane family


@pytest.mark.parametrize("c1, c2, expected", [(-1, 7, 72), (0, 9, 100), (-2, 2, 0)])
def test_rank3_ed(c1, c2, expected):
    assert rank3_ed(c1, c2) == expected


def test_rank3I_fixed_point():
    r = rank3I_report(1, 1, -2, 1)
    assert (r.dim_Y, r.ed, r.h1_end, r.h2_end, r.dim_M) == (0, 0, 0, 0, 0)
    assert r.smooth_at_E


@pytest.mark.parametrize("l, dim", [(1, 64), (2, 103)])
def test_rank3I_cubic(l, dim):
    r = rank3I_report(3, 1, 0, l)
    assert r.dim_Y == dim == r.h1_end


def test_rank3I_mismatch():
    with pytest.raises(PreconditionError):
        rank3I_report(4, 1, 0, 1)


@given(st.integers(min_value=1, max_value=4), st.sampled_from([0, -1, -2]), st.integers(min_value=1, max_value=10))
def test_rank3I_identity(nu, c1, l):
    k = 3 * nu + c1
    r = rank3I_report(k, nu, c1, l)
    assert r.h1_end - r.h2_end == r.ed
    assert r.h2_end >= 0


# rank 3, divisor family


@pytest.mark.parametrize("k, a, b, expected", [(3, 4, 4, 103), (2, 3, 3, 48), (4, 4, 5, 162), (2, 2, 0, 0)])
def test_rank3II_dimY_examples(k, a, b, expected):
    assert rank3II_dimY(k, a, b) == expected


def test_rank3II_dimY_count_example():
    assert rank3II_dimY_by_count(4, 4, 5) == 35 - 1 - 10 + 3 * 46 - 0


def test_rank3II_dimY_rejects():
    with pytest.raises(NotAdmissibleError):
        rank3II_dimY(3, 2, 1)


def test_rank3II_dimY_accepts_unknown():
    assert classify(rank3_spec(12, 1, 10)).status is Status.UNKNOWN
    assert rank3II_dimY(12, 1, 10) == rank3II_dimY_by_count(12, 1, 10)


@given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=20), st.integers(min_value=0, max_value=20))
def test_rank3II_dimY_parameter_count(k, a, b):
    if not classify(rank3_spec(k, a, b)).admissible:
        return
    assert rank3II_dimY(k, a, b) == rank3II_dimY_by_count(k, a, b)


def test_klarge_examples():
    r = rank3II_h1_klarge(3, 1, 0, 4, 4)
    assert r.h1_end == 103 == rank3II_dimY(3, 4, 4)
    r = rank3II_h1_klarge(4, 2, -2, 5, 6)
    top = 35 - 10 + 3 * h0_master(5, 6, SurfaceClass(4))
    assert r.h1_end == Interval(top - 1, top)
    assert r.codim_bound == 1
    assert r.delta_assumption
    r = rank3II_h1_klarge(2, 1, -1, 4, 4)
    assert r.h1_end == 75 == rank3II_report_k2(4, 4).h1_end


def test_klarge_hypothesis_violated():
    with pytest.raises(OutOfRegimeError):
        rank3II_h1_klarge(4, 2, -2, 3, 3)
    with pytest.raises(PreconditionError):
        rank3II_h1_klarge(5, 2, -2, 6, 6)


@given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=20), st.integers(min_value=0, max_value=20))
def test_klarge_bound_coherence(k, a, b):
    if not klarge_hypothesis(k, a, b):
        return
    spec = rank3_spec(k, a, b)
    r = rank3II_h1_klarge(k, spec.nu, spec.c1, a, b)
    hi = bounds(r.h1_end)[1]
    assert r.dim_Y <= hi
    assert hi - r.dim_Y <= max(k - 3, 0)
    assert h0_master(k - a, k - b, SurfaceClass(k)) == 0


@pytest.mark.parametrize("a, b, dim, h1, h2", [(4, 4, 75, 75, 3), (2, 2, 24, 24, 0), (3, 3, 48, 48, 0)])
def test_report_k2_examples(a, b, dim, h1, h2):
    r = rank3II_report_k2(a, b)
    assert (r.dim_Y, r.h1_end, r.h2_end, r.dim_M) == (dim, h1, h2, h1)
    assert r.smooth_at_E


def test_report_k2_gap():
    r = rank3II_report_k2(5, 1)
    assert r.dim_Y < r.dim_M
    assert r.notes


@pytest.mark.parametrize("a, b, dim", [(4, 4, 103), (2, 3, 52), (1, 3, 37)])
def test_report_k3_examples(a, b, dim):
    assert rank3II_report_k3(a, b).dim_Y == dim


def test_report_k3_full():
    r = rank3II_report_k3(4, 4)
    assert (r.h1_end, r.h2_end, r.ed) == (103, 3, 100)


def test_report_k3_unsettled_branch():
    # min >= 4 with b < 2 + a/2 and not b = a/2 + 3/2
    r = rank3II_report_k3(10, 5)
    assert r.smooth_at_E is None
    assert isinstance(r.dim_M, Interval)
    # b = a/2 + 3/2 with a odd is smooth
    assert rank3II_report_k3(9, 6).smooth_at_E is True


@given(ab30, ab30)
def test_quadric_identity(a, b):
    if classify(rank3_spec(2, a, b)).status is not Status.STABLE:
        return
    r = rank3II_report_k2(a, b)
    assert r.h1_end - r.h2_end == 12 * (a + b - 1) - 12 == rank3_ed(-1, rank3_chern(rank3_spec(2, a, b)).c2)
    if max(a, b) == 3:
        assert 3 * (a + 1) * (b + 1) == 12 * a + 12 * b - 24
    assert r.dim_Y == rank3II_dimY(2, a, b)


@given(ab30, ab30)
def test_cubic_identity(a, b):
    if classify(rank3_spec(3, a, b)).status is not Status.STABLE:
        return
    r = rank3II_report_k3(a, b)
    assert r.h1_end - r.h2_end == 12 * a + 24 * b - 44 == r.ed
    assert r.dim_Y == rank3II_dimY(3, a, b)
    assert r.dim_Y <= bounds(r.dim_M)[1]
    if min(a, b) >= 4 and (b >= a or 2 * b >= a + 4):
        assert r.h2_end == 3 * h0_master(a - 4, b - 4, SurfaceClass(3))
