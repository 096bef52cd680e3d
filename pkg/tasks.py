"""Celery tasks that run property-suite cases."""

from __future__ import annotations

from typing import Dict, Sequence

from celery import group

from checks.suites import CaseResult, SuiteReport, plan, run_case
from worker import celery_app
from utils import logger


@celery_app.task(name="tasks.run_suite_case")
def run_suite_case(suite: str, n: int, seed: int, index: int, size: int | None = None) -> Dict[str, object]:
    """Rebuild one case from its seed and run it; the diagram never travels."""
    return run_case(suite, n, seed, index, size).as_dict()


def _as_case(payload: Dict[str, object]) -> CaseResult:
    """Reassemble a CaseResult from the JSON dict a worker returned."""
    return CaseResult(
        suite=str(payload["suite"]),
        n=int(payload["n"]),  # type: ignore[arg-type]
        seed=int(payload["seed"]),  # type: ignore[arg-type]
        index=int(payload["index"]),  # type: ignore[arg-type]
        ok=bool(payload["ok"]),
        detail=str(payload.get("detail", "")),
    )


def dispatch_suite(name: str, *, seed: int, size: int, ns: Sequence[int] | None = None) -> SuiteReport:
    """Fan a suite out as a Celery group and collect it in canonical order.

    With no broker configured the app runs eagerly, so this is the same code
    path for a laptop run and for a worker fleet.
    """
    cases = plan(name, size, ns)
    report = SuiteReport(name, seed, size)
    if not cases:
        logger.warning("Suite has no cases for the requested n", suite=name, ns=list(ns or ()))
        return report
    job = group(run_suite_case.s(name, n, seed, index, size) for n, index in cases)
    payloads = job.apply_async().get()
    results = sorted((_as_case(payload) for payload in payloads), key=lambda result: (result.n, result.index))
    report.results.extend(results)
    logger.info(
        "Suite dispatched",
        suite=name,
        seed=seed,
        size=size,
        cases=len(results),
        failures=len(report.failures),
        eager=bool(celery_app.conf.task_always_eager),
    )
    return report
