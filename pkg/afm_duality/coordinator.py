"""Coordinator fanning independent checks out across a worker pool."""
from __future__ import annotations

import asyncio
import logging
import math
import os
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Generic, Protocol, Sequence, TypeVar

from .const import DOMAIN
from .solvers.exceptions import AfmError

_LOGGER = logging.getLogger(__name__)

ItemT = TypeVar("ItemT")
ResultT = TypeVar("ResultT")

CHUNKS_PER_WORKER = 4


class CheckResult(Protocol):
    """Result shape the summary understands."""

    @property
    def passed(self) -> bool:
        ...

    @property
    def rel_residual(self) -> float:
        ...


@dataclass(frozen=True)
class SweepSummary:
    """Outcome of a coordinator run, results kept in input order."""

    results: tuple[Any, ...]
    passed: int
    failed: int
    worst_residual: float
    elapsed: float

    @classmethod
    def from_results(cls, results: Sequence[CheckResult], elapsed: float) -> SweepSummary:
        """Count passes and track the largest finite residual."""
        passed = sum(1 for result in results if result.passed)
        residuals = [r.rel_residual for r in results if math.isfinite(r.rel_residual)]
        return cls(
            results=tuple(results),
            passed=passed,
            failed=len(results) - passed,
            worst_residual=max(residuals, default=0.0),
            elapsed=elapsed,
        )

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _run_chunk(worker: Callable[[ItemT], ResultT], chunk: Sequence[ItemT]) -> list[ResultT]:
    return [worker(item) for item in chunk]


def _chunks(items: Sequence[ItemT], size: int) -> list[Sequence[ItemT]]:
    return [items[start : start + size] for start in range(0, len(items), size)]


class SweepCoordinator(Generic[ItemT, ResultT]):
    """Run a worker over many items and collect results in order.

    More than one job uses a process pool; a single job runs in one
    worker thread so the event loop stays free.
    """

    def __init__(self, jobs: int | None = None, name: str = DOMAIN) -> None:
        """Initialize coordinator."""
        self.name = name
        self.jobs = max(1, jobs if jobs is not None else (os.cpu_count() or 1))
        self.last_run_seconds: float | None = None
        self.last_run_success = True

    def _executor(self) -> Executor:
        if self.jobs > 1:
            return ProcessPoolExecutor(max_workers=self.jobs)
        return ThreadPoolExecutor(max_workers=1, thread_name_prefix=self.name)

    async def async_run(
        self, worker: Callable[[ItemT], ResultT], items: Sequence[ItemT]
    ) -> list[ResultT]:
        """Run ``worker`` on every item; order of results follows ``items``."""
        if not items:
            return []
        loop = asyncio.get_running_loop()
        size = max(1, math.ceil(len(items) / (self.jobs * CHUNKS_PER_WORKER)))
        start = time.perf_counter()
        _LOGGER.debug(
            "%s: %d items in chunks of %d on %d jobs",
            self.name,
            len(items),
            size,
            self.jobs,
        )

        with self._executor() as executor:
            futures = [
                loop.run_in_executor(executor, _run_chunk, worker, chunk)
                for chunk in _chunks(items, size)
            ]
            try:
                chunks = await asyncio.gather(*futures)
            except AfmError:
                self.last_run_success = False
                raise
            except Exception as err:
                self.last_run_success = False
                raise AfmError(f"Worker failed: {err}") from err

        self.last_run_seconds = time.perf_counter() - start
        self.last_run_success = True
        return [result for chunk in chunks for result in chunk]

    def run(self, worker: Callable[[ItemT], Any], items: Sequence[ItemT]) -> SweepSummary:
        """Run synchronously and summarize the results."""
        results = asyncio.run(self.async_run(worker, items))
        summary = SweepSummary.from_results(results, self.last_run_seconds or 0.0)
        if summary.failed:
            _LOGGER.warning(
                "%s: %d of %d checks failed", self.name, summary.failed, len(results)
            )
        return summary

    def map(self, worker: Callable[[ItemT], ResultT], items: Sequence[ItemT]) -> list[ResultT]:
        """Run synchronously and return the raw results in input order."""
        return asyncio.run(self.async_run(worker, items))
