import math

import pytest
from hypothesis import given, strategies as st

from tqm_disp.scatter import (DispersionLedger, NegativeVarianceError, RelaxationPolicy, absorb,
                              emit, parse_chain, relax, resonant, run_chain)

var = st.floats(0, 100)
pos = st.floats(1e-3, 100)


def test_absorb_adds():
    assert absorb(DispersionLedger(1.0), 0.5).current == 1.5
    assert absorb(DispersionLedger(1.0), 0.0).current == 1.0
    with pytest.raises(ValueError):
        absorb(DispersionLedger(1.0), -0.1)


def test_emit_subtracts():
    assert emit(DispersionLedger(2.0), 0.5).current == 1.5
    with pytest.raises(NegativeVarianceError):
        emit(DispersionLedger(1.0), 1.5)
    with pytest.raises(ValueError):
        emit(DispersionLedger(1.0), -0.5)


def test_negative_initial_rejected():
    with pytest.raises(ValueError):
        DispersionLedger(-1.0)


@given(var, var, var)
def test_absorbs_commute(s, a, b):
    x = DispersionLedger(s).absorb(a).absorb(b).current
    y = DispersionLedger(s).absorb(b).absorb(a).current
    assert x == pytest.approx(y, rel=1e-15, abs=1e-15)


@given(var, var)
def test_absorb_emit_inverse(s, g):
    assert DispersionLedger(s).absorb(g).emit(g).current == pytest.approx(s, abs=1e-12)


@given(var, var)
def test_emit_absorb_inverse(s, g):
    if g <= s:
        assert DispersionLedger(s).emit(g).absorb(g).current == pytest.approx(s, abs=1e-12)
    else:
        with pytest.raises(NegativeVarianceError):
            DispersionLedger(s).emit(g)


@given(var, st.lists(st.tuples(st.sampled_from(["absorb", "emit"]), var), max_size=20))
def test_nonnegative_or_error(s, ops):
    led = DispersionLedger(s)
    for kind, g in ops:
        try:
            led = absorb(led, g) if kind == "absorb" else emit(led, g)
        except NegativeVarianceError:
            assert kind == "emit" and g > led.current
        assert led.current >= 0
        assert all(e.sigma2_in >= 0 and e.sigma2_out >= 0 for e in led.entries)


def test_entries_record_history():
    led = DispersionLedger(1.0).absorb(0.5).emit(0.2)
    assert [e.event for e in led.entries] == ["absorb", "emit"]
    assert led.entries[0].sigma2_in == 1.0 and led.entries[0].sigma2_out == 1.5
    assert led.current == led.entries[-1].sigma2_out
    assert DispersionLedger(3.0).current == 3.0


def test_policy_validation():
    with pytest.raises(ValueError):
        RelaxationPolicy(1.0, "exponential")
    with pytest.raises(ValueError):
        RelaxationPolicy(1.0, "exponential", rate=0.0)
    with pytest.raises(ValueError):
        RelaxationPolicy(1.0, "linear")
    with pytest.raises(ValueError):
        RelaxationPolicy(-1.0)


def test_relax_instant():
    assert relax(DispersionLedger(5.0), RelaxationPolicy(1.0)).current == 1.0


def test_relax_exponential_examples():
    pol = RelaxationPolicy(1.0, "exponential", rate=2.0)
    assert relax(DispersionLedger(3.0), pol, 0.0).current == 3.0
    half = relax(DispersionLedger(3.0), pol, math.log(2) / 2.0).current
    assert half == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ValueError):
        relax(DispersionLedger(3.0), pol, -1.0)


@given(var, var, pos, st.floats(0, 10), st.floats(0, 10))
def test_relax_monotone_approach(s, target, rate, t1, t2):
    pol = RelaxationPolicy(target, "exponential", rate)
    lo, hi = sorted((t1, t2))
    a = relax(DispersionLedger(s), pol, lo).current
    b = relax(DispersionLedger(s), pol, hi).current
    assert abs(b - target) <= abs(a - target) + 1e-12
    assert min(s, target) - 1e-12 <= b <= max(s, target) + 1e-12


@given(var, pos, st.floats(0, 100))
def test_relax_fixed_point(target, rate, t):
    for pol in (RelaxationPolicy(target), RelaxationPolicy(target, "exponential", rate)):
        assert relax(DispersionLedger(target), pol, t).current == pytest.approx(target)


@given(var, var, var)
def test_resonant_zero_dwell(s1, g_in, g_out):
    led = DispersionLedger(s1)
    if g_out <= s1 + g_in:
        out = resonant(led, g_in, g_out, 0.0, RelaxationPolicy(0.0))
        assert out.current == pytest.approx(s1 + g_in - g_out, abs=1e-12)
        assert out.entries[-1].event == "resonant"
    else:
        with pytest.raises(NegativeVarianceError):
            resonant(led, g_in, g_out)


@given(var, var)
def test_resonant_same_photon_identity(s, g):
    assert resonant(DispersionLedger(s), g, g).current == pytest.approx(s, abs=1e-12)


@given(st.floats(0.5, 10), st.floats(0, 5), st.floats(0, 0.5), pos)
def test_long_dwell_limit(s, g_in, g_out, rate):
    target = s
    pol = RelaxationPolicy(target, "exponential", rate)
    long = resonant(DispersionLedger(s), g_in, g_out, 1e6 / rate, pol).current
    ref = DispersionLedger(s).absorb(g_in).relax(RelaxationPolicy(target)).emit(g_out).current
    assert abs(long - ref) <= 1e-9


@given(var, st.lists(st.tuples(st.sampled_from(["absorb", "emit", "relax", "resonant"]),
                               var, var, st.floats(0, 5)), max_size=15))
def test_replay_determinism(s, ops):
    led = DispersionLedger(s)
    pol = RelaxationPolicy(1.0, "exponential", 0.7)
    for kind, a, b, t in ops:
        try:
            if kind == "absorb":
                led = led.absorb(a)
            elif kind == "emit":
                led = led.emit(a)
            elif kind == "relax":
                led = led.relax(pol, t)
            else:
                led = led.resonant(a, b, t, pol)
        except NegativeVarianceError:
            pass
    again = led.replay()
    assert again.current == led.current
    assert [(e.event, e.sigma2_in, e.sigma2_out) for e in again.entries] == \
        [(e.event, e.sigma2_in, e.sigma2_out) for e in led.entries]


def test_csv_output():
    led = DispersionLedger(1.0).absorb(0.5).relax(RelaxationPolicy(1.0)).emit(0.3)
    lines = led.to_csv("hello").splitlines()
    assert lines[0] == "# hello"
    assert lines[1] == "step,event,sigma2_in,sigma2_out,photon_sigma2"
    assert lines[2] == "1,absorb,1.00000000000e+00,1.50000000000e+00,5.00000000000e-01"
    assert lines[3].endswith(",")
    assert lines[4].startswith("3,emit,1.00000000000e+00,7.00000000000e-01")


def test_parse_and_run_chain():
    ops = parse_chain("absorb:0.5, relax:instant ,emit:0.3", 1.0)
    assert run_chain(1.0, ops).current == pytest.approx(0.7)
    ops = parse_chain("absorb:1,relax:exp:2:0.34657359027997264", 1.0)
    assert run_chain(1.0, ops).current == pytest.approx(1.5)
    ops = parse_chain("resonant:0.4:0.1", 1.0)
    assert run_chain(1.0, ops).current == pytest.approx(1.3)
    ops = parse_chain("resonant:0.4:0.1:100:5", 1.0)
    assert run_chain(1.0, ops).current == pytest.approx(0.9)


@pytest.mark.parametrize("bad", ["absorb", "absorb:x", "relax:slow", "jump:1", "resonant:1"])
def test_parse_chain_rejects(bad):
    with pytest.raises(ValueError):
        parse_chain(bad, 1.0)
