"""Batch execution of optimization cells, optionally in worker processes."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import anyio
import anyio.to_process

from nvdnp.observability.tracing import span
from nvdnp.optimize.optimizer import optimize
from nvdnp.types.results import OptimizationProblem, OptimizationResult

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, int, OptimizationResult], None]


async def run_cells(
    problems: Sequence[OptimizationProblem],
    workers: int = 1,
    on_result: ProgressCallback | None = None,
) -> list[OptimizationResult]:
    """Optimize every problem; results come back in input order for any worker count."""
    results: list[OptimizationResult | None] = [None] * len(problems)
    done = 0

    def finish(index: int, result: OptimizationResult) -> None:
        nonlocal done
        results[index] = result
        done += 1
        if on_result is not None:
            on_result(done, len(problems), result)

    if workers <= 1:
        for i, problem in enumerate(problems):
            with span("optimize.cell", {"family": problem.family.value,
                                        "linewidth": problem.linewidth}):
                finish(i, optimize(problem))
    else:
        limiter = anyio.CapacityLimiter(workers)
        logger.debug("running %d cells on %d worker processes", len(problems), workers)

        async def run_one(index: int, problem: OptimizationProblem) -> None:
            with span("optimize.cell", {"family": problem.family.value,
                                        "linewidth": problem.linewidth}):
                result = await anyio.to_process.run_sync(optimize, problem, limiter=limiter)
            finish(index, result)

        async with anyio.create_task_group() as tg:
            for i, problem in enumerate(problems):
                tg.start_soon(run_one, i, problem)

    return [r for r in results if r is not None]


def run_cells_sync(
    problems: Sequence[OptimizationProblem],
    workers: int = 1,
    on_result: ProgressCallback | None = None,
) -> list[OptimizationResult]:
    return anyio.run(run_cells, problems, workers, on_result)
