import threading
import time

import pytest

from tqm_disp.sweep import THREADS_ENV, sweep, thread_count
from tqm_disp.validate import SUITES, mu_calibration_cases, taylor_cases, validate_all


def test_thread_cap(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "2")
    assert thread_count(8) == 2
    assert thread_count(1) == 1
    monkeypatch.delenv(THREADS_ENV)
    assert thread_count(3) == 3


@pytest.mark.parametrize("bad", ["0", "-1", "two"])
def test_thread_env_validation(monkeypatch, bad):
    monkeypatch.setenv(THREADS_ENV, bad)
    with pytest.raises(ValueError):
        thread_count()


def test_sweep_preserves_input_order(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "4")
    seen = set()

    def slow_first(i):
        # early points finish last
        time.sleep(0.02 * (5 - i) if i < 5 else 0)
        seen.add(threading.get_ident())
        return i * i

    assert sweep(slow_first, range(10)) == [i * i for i in range(10)]


def test_sweep_serial_when_capped(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "1")
    ids = set()
    sweep(lambda i: ids.add(threading.get_ident()), range(5))
    assert ids == {threading.get_ident()}


def test_sweep_empty():
    assert sweep(lambda x: x, []) == []


def test_validate_all_passes():
    rep = validate_all()
    assert rep["passed"]
    groups = {c["group"] for c in rep["cases"]}
    assert groups == set(SUITES)
    assert sum(c["group"] == "residues" for c in rep["cases"]) == 20
    assert sum(c["group"] == "propagation" for c in rep["cases"]) == 9
    for c in rep["cases"]:
        assert {"case", "max_error", "passed"} <= set(c)
        assert c["max_error"] >= 0


def test_mu_override_breaks_calibration():
    rep = validate_all(["mu_calibration"], mu=2.0)
    assert not rep["passed"]
    assert mu_calibration_cases(1.0)[0]["passed"]


def test_taylor_cases_within_bound():
    assert all(c["passed"] for c in taylor_cases())


def test_unknown_suite():
    with pytest.raises(ValueError):
        validate_all(["nope"])


def test_validate_deterministic(monkeypatch):
    a = validate_all(["residues", "propagation"])
    monkeypatch.setenv(THREADS_ENV, "1")
    b = validate_all(["residues", "propagation"])
    assert a == b
