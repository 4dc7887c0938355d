import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thermoifs import (IfsSpec, InputError, NumericalError, PotentialSpec, ResourceError,
                       admissibility_check, beta, birkhoff_sum, dim_nu_tangent,
                       dimension_report, middle_thirds, oracle, pressure, solve_delta)
from thermoifs.thermo import BetaFunction, resolve

from conftest import DELTA_CANTOR, darst_01_05, darst_001_08, nonlinear_system


class TestBirkhoff:
    def test_cantor_word(self, cantor):
        for x in (0.0, 0.3, 1.0):
            assert birkhoff_sum(cantor, PotentialSpec.geometric(), (0, 1), x) == pytest.approx(
                math.log(1 / 9))

    def test_fig1_single(self):
        assert birkhoff_sum(darst_01_05(), PotentialSpec.geometric(), (1,), 0.2) == pytest.approx(
            math.log(0.5))

    def test_nonlinear_termwise(self):
        spec = nonlinear_system()
        rng = np.random.default_rng(7)
        word = tuple(int(s) for s in rng.integers(0, 2, 8))
        x = 0.41
        # S_n phi at xi = f_word(x): sum of log f'_{xi_k}(sigma^k xi)
        total = 0.0
        for k in range(len(word)):
            y = x
            for s in reversed(word[k + 1:]):
                y = spec.maps[s](y)
            total += math.log(spec.maps[word[k]].derivative(y))
        assert birkhoff_sum(spec, PotentialSpec.geometric(), word, x) == pytest.approx(total, abs=1e-12)

    def test_outside_domain(self, cantor):
        with pytest.raises(InputError):
            birkhoff_sum(cantor, PotentialSpec.geometric(), (0,), 1.5)


class TestPressure:
    def test_zero_at_delta(self, cantor):
        assert pressure(cantor, PotentialSpec.scaled(DELTA_CANTOR), 10).value == pytest.approx(0, abs=1e-12)

    def test_counting(self):
        spec = IfsSpec.affine((0.2, 0.1, 0.3), (0.0, 0.4, 0.7))
        est = pressure(spec, PotentialSpec.scaled(0.0), 6)
        assert est.value == pytest.approx(math.log(3), abs=1e-12)

    def test_fig1_t1(self):
        est = pressure(darst_01_05(), PotentialSpec.scaled(1.0), 8)
        for _, p in est.per_level:
            assert p == pytest.approx(math.log(0.6), abs=1e-12)
        assert est.error_indicator < 1e-12

    def test_budget(self, cantor, monkeypatch):
        monkeypatch.setenv("THERMOIFS_ENUM_BUDGET", "1000")
        with pytest.raises(ResourceError, match="budget"):
            pressure(cantor, PotentialSpec.geometric(), 12)

    def test_nonlinear_converges(self):
        est = pressure(nonlinear_system(), PotentialSpec.geometric(), 12)
        levels = [p for _, p in est.per_level]
        # |P_n - P| = O(1/n): successive differences shrink
        assert abs(levels[-1] - levels[-2]) < abs(levels[2] - levels[1])
        assert est.value < 0


class TestDelta:
    def test_cantor(self, cantor):
        assert solve_delta(cantor, 8) == pytest.approx(DELTA_CANTOR, abs=1e-10)

    def test_equal_ratios(self):
        spec = IfsSpec.affine((0.2, 0.2))
        assert solve_delta(spec, 6) == pytest.approx(oracle.equal_ratio_delta(2, 0.2), abs=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.05, 0.45), st.floats(0.05, 0.45))
    def test_affine_matches_oracle(self, a, b):
        spec = IfsSpec.affine((a, b))
        assert solve_delta(spec, 6) == pytest.approx(oracle.affine_delta((a, b)), abs=1e-9)


class TestAdmissibility:
    def test_ahlfors_passes(self, cantor):
        assert admissibility_check(cantor, PotentialSpec.delta_geometric(), 1.0, 10).passed

    def test_alpha_equal_delta_fails(self, cantor):
        rep = admissibility_check(cantor, PotentialSpec.delta_geometric(), DELTA_CANTOR, 10)
        assert not rep.passed

    def test_darst_passes(self):
        rep = admissibility_check(darst_01_05(), PotentialSpec.darst(), 1.0, 10)
        assert rep.passed and rep.pressure == pytest.approx(0, abs=1e-12)

    def test_positive_psi_fails(self, cantor):
        rep = admissibility_check(cantor, PotentialSpec.symbolic((0.1, -2.0)), None, 6)
        assert not rep.passed

    def test_beta_rejects(self, cantor):
        with pytest.raises(InputError):
            beta(cantor, PotentialSpec.geometric(), 1.0, 0.5, 8)


class TestBeta:
    def test_anchors(self):
        spec = darst_01_05()
        bf = BetaFunction(spec, PotentialSpec.darst(), 1.0, 10)
        delta = solve_delta(spec, 10)
        assert abs(bf(delta)) < 1e-8
        assert abs(bf(1.0) - 1.0) < 1e-8

    @pytest.mark.parametrize("t", [-1.0, 0.0, 0.3, 0.9, 2.0])
    def test_ahlfors_closed_form(self, cantor, t):
        alpha = 1.0
        got = beta(cantor, PotentialSpec.delta_geometric(), alpha, t, 8).beta
        assert got == pytest.approx(oracle.ahlfors_beta(DELTA_CANTOR, alpha, t), abs=1e-8)

    @pytest.mark.parametrize("s", np.linspace(0.0, 1.2, 7))
    def test_darst_identity(self, s):
        got = beta(darst_001_08(), PotentialSpec.darst(), 1.0, s, 8).beta
        assert got == pytest.approx(oracle.darst_beta_closed_form((0.01, 0.8), s), abs=1e-8)

    def test_bracket_failure(self, cantor, monkeypatch):
        from thermoifs import roots
        with pytest.raises(NumericalError):
            roots.expand_bracket(lambda b: 1.0 + b * b, max_width=64.0, what="test")


class TestMeasureDimension:
    def test_ahlfors(self, cantor):
        got = dim_nu_tangent(cantor, PotentialSpec.delta_geometric(), 1.0, 8)
        assert got == pytest.approx(DELTA_CANTOR, abs=1e-6)

    @pytest.mark.parametrize("make,ratios", [(darst_01_05, (0.1, 0.5)), (darst_001_08, (0.01, 0.8))])
    def test_darst_bernoulli(self, make, ratios):
        got = dim_nu_tangent(make(), PotentialSpec.darst(), 1.0, 8)
        want = oracle.bernoulli_dimension(oracle.darst_probabilities(ratios), ratios)
        assert got == pytest.approx(want, abs=1e-4)

    def test_report(self):
        rep = dimension_report(darst_01_05(), PotentialSpec.darst(), 1.0, 8, richardson=True)
        assert abs(rep.beta_anchor_zero) < 1e-8
        assert rep.beta_anchor_one == pytest.approx(1.0, abs=1e-8)


def test_resolve_darst_is_bernoulli():
    g = resolve(darst_01_05(), PotentialSpec.darst(), 8)
    p = [math.exp(g(darst_01_05(), a, 0.3)) for a in (0, 1)]
    assert p == pytest.approx([1 / 6, 5 / 6], abs=1e-12)
