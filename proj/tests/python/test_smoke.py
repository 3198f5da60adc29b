import math

import numpy as np
import pytest

import specvar


def test_whitenoise_variance_is_n():
    m = specvar.gallery.whitenoise()
    for n in (1, 7, 1000):
        assert specvar.variance_spectral(m, n) == pytest.approx(n, rel=1e-12)


def test_routes_agree():
    m = specvar.gallery.power_law(0.5)
    assert specvar.variance_covariance(m, 64) == pytest.approx(specvar.variance_spectral(m, 64), rel=1e-9)
    assert specvar.variance_many(m, [1, 2, 3])[2] == pytest.approx(specvar.variance_spectral(m, 3), rel=1e-9)


def test_constants_and_bounds():
    assert specvar.c_gamma(1.0) == pytest.approx(1 / math.pi, rel=1e-14)
    b = specvar.sandwich(specvar.gallery.quadratic(), 64, 2.0)
    assert b["lower"] <= b["variance"] <= b["upper"]


def test_json_round_trip():
    m = specvar.gallery.counterexample(10)
    again = specvar.SpectralMeasure.from_json(m.to_json())
    assert again.to_json() == m.to_json()
    assert len(again.atoms) == 10


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        specvar.gallery.power_law(2.5)
    with pytest.raises(ValueError):
        specvar.SpectralMeasure.from_json("{")
    code, out, err = specvar.run_cli(["estimate", "--input", "/nonexistent.csv"])
    assert code == 3


def test_simulation_is_deterministic():
    m = specvar.gallery.quadratic()
    a, method = specvar.simulate(m, 256, 20, 5)
    b, _ = specvar.simulate(m, 256, 20, 5)
    assert method == "circulant"
    assert a.shape == (20, 256)
    assert np.array_equal(a, b)
    est, se = specvar.empirical_variance(a, 16)
    assert est > 0 and se > 0


def test_cli_entry_point():
    code, out, _ = specvar.run_cli(["variance", "--measure", "gallery:whitenoise", "--n", "1,2"])
    assert code == 0
    assert out.splitlines()[0] == "n,variance"
