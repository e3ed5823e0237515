import math

import numpy as np
import pytest

from wpcomm.model import (InterferenceParams, SystemParams, db_to_linear, derive_constants,
                          fig11_d3, format_config, load_config, parse_config, sinr_factored,
                          sinr_interference, snr_noise)


def test_defaults_constants():
    k = derive_constants(SystemParams(p_db=40.0))
    assert k.gamma_th == 1.0
    assert k.c1 == pytest.approx(8 ** 2.5 * 15 ** 2.5 / (0.4 * 1e4), rel=1e-15)
    assert k.rho1 == pytest.approx(1e4 / 8 ** 2.5, rel=1e-15)
    assert k.rho_i is None and k.b1 is None


def test_unit_distances():
    k = derive_constants(SystemParams(d1=1.0, d2=1.0, alpha=3.7, eta=0.5, p_db=0.0))
    assert k.c1 == pytest.approx(2.0, rel=1e-15)


def test_distance_swap_symmetry():
    a = derive_constants(SystemParams(d1=8.0, d2=15.0))
    b = derive_constants(SystemParams(d1=15.0, d2=8.0))
    assert a.c1 == pytest.approx(b.c1, rel=1e-15)
    assert snr_noise(0.3, 2.0, 0.7, a) == pytest.approx(snr_noise(0.3, 2.0, 0.7, b), rel=1e-15)


def test_interference_constants():
    k = derive_constants(SystemParams(alpha=2.0), InterferenceParams(pi_db=20.0, d3=5.0, d4=10.0))
    assert k.rho_i == pytest.approx(100.0 / 25.0)
    assert k.b1 == pytest.approx(1.0)
    assert k.b2(0.5) == pytest.approx(0.4 * 1.0 / 15.0 ** 2)


def test_snr_noise_examples():
    k = derive_constants(SystemParams())
    tau = 0.3
    assert snr_noise(tau, (1 - tau) * k.c1 / tau, 1.0, k) == pytest.approx(1.0)
    assert snr_noise(tau, 3.0, 0.0, k) == 0.0
    unit = derive_constants(SystemParams(d1=1.0, d2=1.0, eta=0.5, p_db=10 * math.log10(2.0)))
    assert unit.c1 == pytest.approx(1.0)
    assert snr_noise(0.5, 4.0, 0.25, unit) == pytest.approx(1.0)


def test_snr_monotone():
    k = derive_constants(SystemParams())
    taus = np.linspace(0.01, 0.99, 50)
    assert np.all(np.diff(snr_noise(taus, 2.0, 0.5, k)) > 0)
    assert np.all(np.diff(snr_noise(0.4, np.linspace(0.1, 5, 50), 0.5, k)) > 0)


def test_sinr_factorisations_agree():
    rng = np.random.default_rng(1)
    k = derive_constants(SystemParams(), InterferenceParams(pi_db=25.0, d3=7.0, d4=12.0))
    h2, g2, f1, f2 = rng.exponential(size=(4, 10000))
    tau = rng.uniform(0.01, 0.99, 10000)
    a = sinr_interference(tau, h2, g2, f1, f2, k)
    b = sinr_factored(tau, h2, g2, f1, f2, k)
    np.testing.assert_allclose(a, b, rtol=1e-13)


def test_sinr_reduces_to_snr_without_interference():
    params = SystemParams()
    k0 = derive_constants(params)
    k = derive_constants(params, InterferenceParams(pi_db=-200.0))
    a = sinr_interference(0.4, 2.0, 0.8, 1.3, 0.9, k)
    assert a == pytest.approx(snr_noise(0.4, 2.0, 0.8, k0), rel=1e-12)
    # with zero interferer fading the interference form is the noise form
    k1 = derive_constants(params, InterferenceParams(pi_db=30.0))
    assert sinr_interference(0.4, 2.0, 0.8, 0.0, 0.0, k1) == pytest.approx(
        snr_noise(0.4, 2.0, 0.8, k0), rel=1e-12)


def test_sinr_monotonicity():
    k = derive_constants(SystemParams(), InterferenceParams())
    xs = np.linspace(0.1, 5, 30)
    assert np.all(np.diff(sinr_interference(0.4, xs, 1.0, 1.0, 1.0, k)) > 0)
    assert np.all(np.diff(sinr_interference(0.4, 1.0, 1.0, xs, 1.0, k)) > 0)
    assert np.all(np.diff(sinr_interference(0.4, 1.0, 1.0, 1.0, xs, k)) < 0)


@pytest.mark.parametrize("kwargs", [
    dict(n_antennas=0), dict(nakagami_m=1.5), dict(eta=1.0), dict(eta=0.0),
    dict(alpha=0.0), dict(d1=-1.0), dict(rate=0.0),
])
def test_invalid_params(kwargs):
    with pytest.raises(ValueError):
        SystemParams(**kwargs)


def test_db_conversion():
    assert db_to_linear(30.0) == pytest.approx(1000.0)
    assert db_to_linear(-10.0) == pytest.approx(0.1)


def test_parse_config_roundtrip(tmp_path):
    text = "# sample\nN = 2\nm=4\nP_dB=45  # comment\nPI_dB=30\nd3=5\nd4=15\n"
    params, interf = parse_config(text)
    assert params == SystemParams(n_antennas=2, nakagami_m=4, p_db=45.0)
    assert interf == InterferenceParams(pi_db=30.0, d3=5.0, d4=15.0)
    path = tmp_path / "c.cfg"
    path.write_text(format_config(params, interf))
    assert load_config(path) == (params, interf)


def test_parse_config_noise_only():
    params, interf = parse_config("alpha=3\n")
    assert params.alpha == 3.0 and interf is None


@pytest.mark.parametrize("text", ["foo=1", "N=2.5", "N", "d3=4", "eta=abc", "eta=2"])
def test_parse_config_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_law_of_cosines():
    assert fig11_d3(15.0, 15.0, math.pi / 3) == pytest.approx(15.0)
    assert fig11_d3(3.0, 4.0, math.pi / 2) == pytest.approx(5.0)
