import pytest

from checks.suites import run_suite
from tasks import _as_case, dispatch_suite, run_suite_case
from worker import BROKER_URL, celery_app


pytestmark = pytest.mark.skipif(bool(BROKER_URL), reason="these tests run Celery eagerly")


def test_app_runs_eagerly_without_a_broker():
    assert celery_app.conf.task_always_eager


def test_dispatch_matches_in_process_run():
    dispatched = dispatch_suite("closed", seed=4, size=1, ns=(2, 3))
    local = run_suite("closed", seed=4, size=1, ns=(2, 3))
    assert dispatched.results == local.results
    assert dispatched.ok


def test_dispatch_with_no_cases():
    report = dispatch_suite("kuperberg", seed=1, size=1, ns=(2,))
    assert report.results == []
    assert report.ok


def test_task_payload_round_trips():
    payload = run_suite_case("classical", 2, 5, 0, 1)
    assert payload["ok"] is True
    assert _as_case(payload).as_dict() == payload
