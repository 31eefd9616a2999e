import math
from fractions import Fraction

import pytest

import tycz_lab


def test_series_coefficients():
    c = tycz_lab.calabi_series(0.0, 2, 12)
    expected = [Fraction(1, 2), Fraction(1, 32), Fraction(7, 2304), Fraction(49, 147456)]
    for k, q in enumerate(expected):
        assert c[2 * k + 2] == pytest.approx(float(q), rel=1e-14)
    assert all(c[k] == 0.0 for k in range(1, 13, 2))


def test_profile_boundary():
    p = tycz_lab.solve_profile(0.0, 2)
    assert p["a"] == pytest.approx(2.624550017242767, rel=1e-9)
    assert p["r"] == sorted(p["r"])
    assert tycz_lab.solve_profile(1.0, 2)["a"] == pytest.approx(p["a"] * math.exp(-0.25), rel=1e-8)


def test_profile_csv_header():
    assert "r,y,yp,ypp,yppp,ypppp" in tycz_lab.profile_csv(0.0, 2)


def test_model_coefficients():
    p = tycz_lab.model_coefficients("projective", 3)
    h = tycz_lab.model_coefficients("hyperbolic", 3)
    assert (p["a1"], p["a2"], p["a3"]) == pytest.approx((6, 11, 6))
    assert (h["a1"], h["a2"], h["a3"]) == pytest.approx((-6, 11, -6))


def test_epsilon_models():
    z = [0.3 + 0.1j]
    assert tycz_lab.epsilon_flat(4.0, z) == pytest.approx(4 / math.pi, rel=1e-12)
    assert tycz_lab.epsilon_disc(5.0, 1.0, z) == pytest.approx(4 / math.pi, rel=1e-10)
    assert tycz_lab.epsilon_projective(3, z) == pytest.approx(4 / math.pi, rel=1e-12)
    with pytest.raises(ValueError):
        tycz_lab.epsilon_disc(0.5, 1.0, z)


def test_criterion_and_cli():
    assert tycz_lab.criterion_count() == 13
    r = tycz_lab.run_criterion(1)
    assert r["pass"] is True
    code, doc, _ = tycz_lab.cli_json("tycz", "--model", "projective", "--n", "2")
    assert code == 0
    assert doc["coefficients"]["a1"] == pytest.approx(3.0)
    code, _, _ = tycz_lab.cli_json("--bogus")
    assert code == 3
