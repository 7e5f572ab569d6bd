import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ophh.errors import InputError
from ophh.functions import Affine, Cubic, ExampleFamily, Power, Quadratic
from ophh.matrices import rng_stream
from ophh.scalar import (
    check_kirmaci,
    check_pachpatte,
    check_scalar_hh,
    check_sense_comparisons,
    grid_falsify,
    is_s_convex_first,
    is_s_convex_second,
)
from ophh.special import beta

S_GRID = [round(0.1 * k, 1) for k in range(1, 11)]


def second_violation(f, s, witness):
    x, y, lam = witness
    return float(f(lam * x + (1 - lam) * y) - lam**s * f(x) - (1 - lam) ** s * f(y))


def first_violation(f, s, witness):
    x, y, alpha = witness
    b = (1 - alpha**s) ** (1 / s)
    return float(f(alpha * x + b * y) - alpha**s * f(x) - (1 - alpha**s) * f(y))


class TestSecondSense:
    @pytest.mark.parametrize("s", S_GRID)
    def test_power_not_refuted(self, s):
        v = is_s_convex_second(Power(s), s)
        assert v.holds and v.witness is None
        assert v.describe() == "not refuted on grid"

    def test_example_branch_i(self):
        assert is_s_convex_second(ExampleFamily(a=1, b=1, c=0.5, s=0.5), 0.5).holds

    def test_example_branch_ii(self):
        f = ExampleFamily(a=0, b=1, c=-0.5, s=0.5)
        v = is_s_convex_second(f, 0.5)
        assert not v.holds
        assert second_violation(f, 0.5, v.witness) == pytest.approx(v.max_violation)
        assert v.max_violation > 1e-12
        assert "refuted" in v.describe()

    def test_zero_is_a_grid_point(self):
        # the only violation of this function involves t = 0
        f = ExampleFamily(a=-1.0, b=0.0, c=0.0, s=0.5)
        v = is_s_convex_second(f, 0.5)
        assert not v.holds and 0.0 in v.witness[:2]

    def test_multi_column(self):
        pts = np.linspace(0, 1, 11)
        vs = grid_falsify(lambda t: np.stack([t**2, -(t**2)], axis=1), 1.0, pts, pts)
        assert vs[0].holds and not vs[1].holds

    def test_bad_arguments(self):
        with pytest.raises(InputError):
            is_s_convex_second(Power(0.5), 0.0)
        with pytest.raises(InputError):
            is_s_convex_second(Power(0.5), 0.5, grid_density=1)


class TestFirstSense:
    def test_affine_linear(self):
        assert is_s_convex_first(Affine(1, 0), 1.0).holds

    @pytest.mark.parametrize("s", S_GRID)
    def test_power_not_refuted(self, s):
        assert is_s_convex_first(Power(s), s).holds

    def test_example_with_a_below_c(self):
        # x = 0 forces c <= a; with a < c the grid must find a violation
        f = ExampleFamily(a=-1.0, b=1.0, c=-0.5, s=0.5)
        v = is_s_convex_first(f, 0.5)
        assert not v.holds
        assert first_violation(f, 0.5, v.witness) == pytest.approx(v.max_violation)


class TestSenseComparisons:
    def test_power_ii_consistent(self):
        rep = check_sense_comparisons(Power(0.8), 0.3, 0.8)
        assert rep.row("(ii)").status == "consistent"
        assert rep.consistent

    def test_nonzero_at_origin_is_vacuous(self):
        rep = check_sense_comparisons(ExampleFamily(1.0, 1.0, 0.5, 0.5), 0.3, 0.5)
        assert rep.row("(i)").status == "vacuous"
        assert rep.row("(ii)").status == "vacuous"

    def test_affine_i(self):
        rep = check_sense_comparisons(Affine(1, 0), 0.4, 1.0)
        assert rep.row("(i)").status == "consistent"

    def test_order_enforced(self):
        with pytest.raises(InputError):
            check_sense_comparisons(Power(0.5), 0.5, 0.5)


class TestScalarHH:
    def test_sqrt_sharp_right(self):
        rep = check_scalar_hh(Power(0.5), 0.5, 0.0, 1.0)
        assert rep.values["mean"] == pytest.approx(2 / 3, abs=1e-10)
        assert rep.values["endpoint_term"] == pytest.approx(2 / 3)
        assert rep.side("right").slack == pytest.approx(0.0, abs=1e-10)
        # 2^(-1/2) * (1/2)^(1/2) = 1/2
        assert rep.values["midpoint_term"] == pytest.approx(0.5, abs=1e-15)

    def test_linear_equalities(self):
        rep = check_scalar_hh(Affine(1, 0), 1.0, 0.0, 1.0)
        for key in ("midpoint_term", "mean", "endpoint_term"):
            assert rep.values[key] == pytest.approx(0.5, abs=1e-12)

    def test_bad_interval(self):
        with pytest.raises(InputError):
            check_scalar_hh(Power(0.5), 0.5, 1.0, 1.0)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_slacks_nonnegative_for_members(self, seed):
        rng = rng_stream(seed)
        a, b = np.sort(rng.uniform(0, 10, 2))
        if b - a < 1e-6:
            return
        s = float(rng.choice(S_GRID))
        for f, sf in ((Power(s), s), (Affine(1, 0), 1.0), (Quadratic(1, 0, 0), 1.0),
                      (ExampleFamily(1.0, 1.0, 0.5, 0.5), 0.5)):
            rep = check_scalar_hh(f, sf, a, b)
            assert rep.min_slack >= -1e-9


class TestPachpatte:
    def test_identity_squared(self):
        rep = check_pachpatte(Affine(1, 0), Affine(1, 0), 0.0, 1.0)
        assert rep.values["mean"] == pytest.approx(1 / 3, abs=1e-12)
        assert rep.values["first_bound"] == pytest.approx(1 / 3)
        assert rep.side("first").slack == pytest.approx(0.0, abs=1e-12)

    def test_constants(self):
        one = Quadratic(0, 0, 1)
        rep = check_pachpatte(one, one, 0.0, 1.0)
        assert rep.values["mean"] == pytest.approx(1.0)
        assert rep.values["first_bound"] == pytest.approx(1.0)
        assert rep.verdict == "pass"

    def test_cube_mean(self):
        rep = check_pachpatte(Quadratic(1, 0, 0), Affine(1, 0), 0.0, 1.0)
        assert rep.values["mean"] == pytest.approx(0.25, abs=1e-12)
        assert rep.values["first_bound"] == pytest.approx(1 / 3)
        assert rep.holds

    def test_precondition_flagged(self):
        rep = check_pachpatte(Affine(-1, 0), Affine(1, 0), 0.0, 1.0)
        assert rep.verdict == "vacuous" and "negative" in rep.skipped
        rep = check_pachpatte(Power(0.5), Affine(1, 0), 0.0, 1.0)
        assert rep.verdict == "vacuous" and "convex" in rep.skipped


class TestKirmaci:
    def test_reduces_to_pachpatte(self):
        rep = check_kirmaci(Affine(1, 0), 1.0, Affine(1, 0), 1.0, 0.0, 1.0)
        assert rep.values["coef_M"] == 1 / 3
        assert rep.values["coef_N"] == pytest.approx(1 / 6, abs=1e-15)
        pach = check_pachpatte(Affine(1, 0), Affine(1, 0), 0.0, 1.0)
        assert rep.values["bound"] == pytest.approx(pach.values["first_bound"])

    @pytest.mark.parametrize("s1,s2", [(0.3, 0.7), (0.5, 0.5), (0.2, 0.9)])
    def test_powers_equality(self, s1, s2):
        rep = check_kirmaci(Power(s1), s1, Power(s2), s2, 0.0, 1.0)
        assert rep.values["mean"] == pytest.approx(1 / (s1 + s2 + 1), abs=1e-10)
        assert rep.values["N"] == 0.0
        assert rep.side("bound").slack == pytest.approx(0.0, abs=1e-10)
        assert rep.values["coef_N"] == beta(s1 + 1, s2 + 1)

    def test_constants(self):
        one = Quadratic(0, 0, 1)
        rep = check_kirmaci(one, 1.0, one, 1.0, 0.0, 1.0)
        assert rep.values["bound"] == pytest.approx(1.0)
        assert rep.holds

    def test_mixed_exponents(self):
        rep = check_kirmaci(Cubic(), 1.0, Power(0.5), 0.5, 0.0, 1.0)
        assert rep.verdict == "pass"


def _branch_i(rng):
    s = rng.uniform(0.05, 0.95)
    c = rng.uniform(0, 2)
    return ExampleFamily(a=c + rng.uniform(0, 2), b=rng.uniform(0, 2), c=c, s=s)


def test_example_family_branch_i_sample():
    rng = rng_stream(99)
    for _ in range(15):
        f = _branch_i(rng)
        assert is_s_convex_second(f, f.s, grid_density=101).holds
