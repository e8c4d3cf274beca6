import math

import pytest

import pullin


def graphene_device():
    p = pullin.DeviceParams()
    p.E = 1.0e12
    p.D = 2.0e12
    p.A_c = 3.35e-16
    p.A = 1.0e-12
    p.L = 1.0e-6
    p.d = 5.0e-8
    p.m = 1.0e-15
    p.eps0 = 8.8541878128e-12
    p.V_dc = 1.0
    return p


def test_linear_threshold_is_exact():
    assert pullin.kappa(0.0) == 0.125
    assert pullin.static_pull_in_reference() > pullin.kappa(0.0)


def test_classify_regimes():
    assert pullin.classify(pullin.OscParams(0.0, 0.0)).kind == pullin.RegimeKind.Rest
    assert pullin.classify(pullin.OscParams(0.0, 0.124)).kind == pullin.RegimeKind.Periodic
    assert pullin.classify(pullin.OscParams(0.0, 0.126)).kind == pullin.RegimeKind.PullIn


def test_simulated_period_matches_integral():
    cfg = pullin.SimConfig()
    cfg.q = pullin.OscParams(0.0, 0.1)
    cfg.t_end = 40.0
    traj = pullin.simulate(cfg)
    assert traj.outcome == pullin.SimOutcome.Completed
    T_sim = pullin.detect_period(traj)
    T_int = pullin.period(cfg.q)
    assert T_sim == pytest.approx(T_int, rel=1e-6)


def test_pull_in_event_and_time():
    cfg = pullin.SimConfig()
    cfg.q = pullin.OscParams(0.0, 1.0)
    traj = pullin.simulate(cfg)
    assert traj.outcome == pullin.SimOutcome.PullInDetected
    assert traj.t_event == pytest.approx(pullin.pull_in_time(cfg.q), rel=1e-4)


def test_regime_errors_raise():
    with pytest.raises(pullin.RegimeError):
        pullin.period(pullin.OscParams(0.0, 0.2))
    with pytest.raises(pullin.RegimeError):
        pullin.pull_in_time(pullin.OscParams(0.0, 0.1))
    with pytest.raises(pullin.RestError):
        pullin.amplitude_x_max(pullin.OscParams(0.0, 0.0))


def test_voltage_round_trip():
    p = graphene_device()
    p.V_dc = pullin.pull_in_voltage(p)
    nd = pullin.nondimensionalize(p)
    kap = pullin.kappa(nd.params.alpha)
    assert nd.params.K == pytest.approx(kap, rel=1e-12)


def test_config_parse_error():
    with pytest.raises(pullin.ConfigParseError):
        pullin.parse_device_config("E_pa = 1e12\nbogus_key = 3\n")


def test_quadrature_engine():
    res = pullin.integrate_endpoint_singular(
        lambda s: 1.0 / math.sqrt(s), 0.0, 1.0, True, False
    )
    assert res.value == pytest.approx(2.0, abs=1e-10)
