"""Smoke tests for the Python bindings: spectral solve, hypothesis checks,
config parsing, observability estimate, and a small control round trip."""

import math

import pytest

import wavemem


@pytest.fixture(scope="module")
def params():
    p = wavemem.ModelParams()
    p.validate()
    return p


@pytest.fixture(scope="module")
def branches(params):
    return wavemem.solve_branches(params)


def test_spectral_residuals(params, branches):
    assert len(branches) == params.N
    for br in branches:
        for root in br.roots():
            assert wavemem.quintic_residual(params, br.n, root) < 1e-9
        assert br.omega.real > 0.0
        assert br.p.real > 0.0
        assert abs(br.lam - br.n**2) == 0.0


def test_hypotheses(params, branches):
    rep = wavemem.validate_hypotheses(branches, params)
    assert rep.all_pass
    assert 0.9 < rep.gamma_hat < 1.1
    assert rep.a0_hat > 0.0
    assert params.T > 2.0 * math.pi / rep.gamma_hat


def test_validation_errors():
    p = wavemem.ModelParams()
    p.beta = p.eta
    with pytest.raises(ValueError):
        p.validate()


def test_config_parsing():
    cfg = wavemem.parse_config('{"beta": 0.4, "N": 6, "seed": 11}')
    assert cfg["params"].beta == 0.4
    assert cfg["params"].N == 6
    assert cfg["seed"] == 11
    with pytest.raises(ValueError):
        wavemem.parse_config('{"unknown_key": 1}')


def test_norm_equivalence():
    c1, c2 = wavemem.norm_equivalence_constants(0.5, 1.0, 7.0, 20, 7)
    assert 0.0 < c1 <= c2
    assert math.isfinite(c2)


def test_inverse_constant(params, branches):
    rep = wavemem.validate_hypotheses(branches, params)
    value = wavemem.estimate_inverse_constant(
        branches, params, 100, params.T, 20260823, rep.gamma_hat
    )
    assert value > 0.0


def test_control_round_trip():
    p = wavemem.ModelParams()
    p.N = 4
    target = wavemem.FinalData(2)
    target.alpha1 = [0.3, -0.1]
    target.rho1 = [0.1, 0.2]
    target.alpha2 = [-0.2, 0.1]
    target.rho2 = [0.05, -0.1]
    ctl = wavemem.hum_controls(target, p)
    assert ctl["gram_min_eigenvalue"] > 0.0
    assert ctl["solve_residual"] < 1e-8
    sim = wavemem.simulate_controls(
        ctl["g1"], ctl["g2"], p, 4, p.T / 8000.0, target
    )
    assert sim["combined_error"] < 1e-2
    assert sim["spillover_relative"] >= 0.0
