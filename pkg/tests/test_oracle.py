import math

import pytest

from thermoifs import InputError, oracle


def test_affine_pressure():
    assert oracle.affine_pressure((1 / 3, 1 / 3), math.log(2) / math.log(3)) == pytest.approx(0, abs=1e-15)
    assert oracle.affine_pressure((0.2, 0.3, 0.1), 0.0) == pytest.approx(math.log(3))
    assert oracle.affine_pressure((0.1, 0.5), 1.0) == pytest.approx(math.log(0.6))


def test_deltas():
    assert oracle.affine_delta((1 / 3, 1 / 3)) == pytest.approx(math.log(2) / math.log(3), abs=1e-14)
    assert oracle.equal_ratio_delta(2, 0.2) == pytest.approx(oracle.affine_delta((0.2, 0.2)), abs=1e-14)


def test_falconer():
    d = math.log(2) / math.log(3)
    assert oracle.falconer_dimension(d, 1.0) == pytest.approx(0.3980723539417)
    assert oracle.falconer_dimension(0.5, 1.0) == 0.25
    with pytest.raises(InputError):
        oracle.falconer_dimension(d, d)


def test_bernoulli_dimension():
    d = oracle.affine_delta((0.2, 0.3))
    p = [0.2 ** d, 0.3 ** d]
    p = [x / sum(p) for x in p]
    assert oracle.bernoulli_dimension(p, (0.2, 0.3)) == pytest.approx(d, abs=1e-12)
    eq = oracle.equal_ratio_delta(2, 0.25)
    assert oracle.bernoulli_dimension((0.5, 0.5), (0.25, 0.25)) == pytest.approx(eq)
    with pytest.raises(InputError):
        oracle.bernoulli_dimension((1.0, 0.0), (0.1, 0.5))


def test_darst_closed_form():
    r = (0.1, 0.5)
    assert oracle.darst_beta_closed_form(r, 1.0) == pytest.approx(1.0)
    assert oracle.darst_beta_closed_form(r, oracle.affine_delta(r)) == pytest.approx(0, abs=1e-14)
    assert oracle.darst_beta_closed_form(r, 0.3) == pytest.approx(
        math.log(0.1 ** 0.3 + 0.5 ** 0.3) / math.log(0.6))
    with pytest.raises(InputError):
        oracle.darst_beta_closed_form((0.4, 0.6), 0.5)
    assert oracle.darst_probabilities(r) == pytest.approx([1 / 6, 5 / 6])


def test_cantor_function():
    assert oracle.cantor_function(0.25) == pytest.approx(1 / 3, abs=1e-15)
    assert oracle.cantor_function(0.5) == 0.5
    assert oracle.cantor_function(2 / 9 + 1e-12) == pytest.approx(0.25, abs=1e-6)


def test_ahlfors():
    assert oracle.ahlfors_beta(0.6, 1.0, 0.6) == 0.0
    assert oracle.ahlfors_beta(0.6, 1.0, 1.0) == pytest.approx(1.0)
