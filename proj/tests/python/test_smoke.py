import json
import math

import pytest

import comotion as cm


def make_params(**kw):
    # "lambda" is a keyword in python; the binding accepts it via **kwargs.
    return cm.OscillatorParams(**kw)


def test_damping_classification():
    under = cm.classify_damping(make_params(m=1, omega=1, **{"lambda": 0.1}))
    assert under.kind == cm.DampingKind.Underdamped
    crit = cm.classify_damping(make_params(m=1, omega=1, **{"lambda": 2.0}))
    assert crit.kind == cm.DampingKind.Critical
    over = cm.classify_damping(make_params(m=1, omega=1, **{"lambda": 3.0}))
    assert over.kind == cm.DampingKind.Overdamped


def test_particular_solution_nonresonant():
    p = make_params(m=1, omega=1, amp=1, cap_omega=2)
    ps = cm.particular_solution_sinusoidal(p)
    for t in (0.0, 0.7, 2.3, 9.1):
        assert ps.alpha(t) == pytest.approx(-math.sin(2 * t) / 3, abs=1e-12)
        assert ps.beta(t) == pytest.approx(-2 * math.cos(2 * t) / 3, abs=1e-12)


def test_invariant_constant_along_flow():
    p = make_params(m=1, omega=1, amp=1, cap_omega=2)
    inv = cm.k_undamped_forced_nonresonant(p)
    sys = cm.to_system(p)
    traj = cm.integrate(sys, 1.0, 0.0, cm.TimeGrid(0.0, 10.0, 1e-3))
    report = cm.drift(inv, traj)
    assert report.max_rel_drift < 1e-8
    data = json.loads(report.to_json())
    assert data["policy"] == "principal"
    assert data["arcs"]


def test_shift_invariant_composition():
    p = make_params(m=1, omega=1, amp=1, cap_omega=2)
    ps = cm.particular_solution_sinusoidal(p)
    energy = cm.energy_invariant(p)
    shifted = cm.shift_invariant(energy, ps)
    closed = cm.k_undamped_forced_nonresonant(p)
    diffs = [
        shifted(x, v, t) - closed(x, v, t)
        for x, v, t in [(0.3, -0.2, 0.0), (1.5, 0.8, 2.0), (-0.9, 1.1, 7.5)]
    ]
    assert max(diffs) - min(diffs) < 1e-12


def test_pde_residual_study():
    p = make_params(m=1, omega=1, amp=1, cap_omega=2)
    inv = cm.k_undamped_forced_nonresonant(p)
    r = cm.residual_study(inv, cm.to_system(p), 10, [1e-2, 5e-3, 2.5e-3], 42)
    assert len(r.samples) == 10
    assert r.order_estimate == pytest.approx(2.0, abs=0.2)


def test_singular_evaluation_raises():
    p = make_params(m=1, omega=1, **{"lambda": 0.1})
    inv = cm.k_autonomous_damped(p)
    with pytest.raises(Exception):
        inv(0.0, 0.0, 0.0)


def test_invalid_params_raise():
    with pytest.raises(Exception):
        cm.to_system(make_params(m=-1, omega=1))
