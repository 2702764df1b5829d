import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from gbsm.core.config import settings
from gbsm.core.errors import TooLargeError
from gbsm.services.bounds import builder_alpha, greedy_factor
from gbsm.services.generator_service import GeneratorSpec
from gbsm.services.oracle_service import oracle_service
from gbsm.services.solver_service import SolverConfig, solver_service

logger = logging.getLogger(__name__)

COLUMNS = [
    "instance_id",
    "n",
    "m",
    "k",
    "builder",
    "epsilon",
    "beta",
    "depth",
    "profit",
    "opt_profit",
    "ratio",
    "bound",
    "bound_satisfied",
    "wall_ms",
]


class BenchConfig(BaseModel):
    seed: int = 0
    repetitions: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)
    record_timing: bool = True
    generators: list[GeneratorSpec] = Field(default_factory=list)
    solvers: list[SolverConfig] = Field(default_factory=lambda: [SolverConfig()])


def instance_seed(seed: int, generator_index: int, index: int) -> int:
    """Independent, reproducible seed per generated instance."""
    return int(np.random.SeedSequence([seed, generator_index, index]).generate_state(1)[0])


class BenchService:
    """Sweeps generators x solver configs and scores every solve against the exact optimum."""

    def run(self, config: BenchConfig) -> pd.DataFrame:
        tasks = [
            (gi, spec, i)
            for gi, spec in enumerate(config.generators)
            for i in range(spec.count)
        ]
        logger.info("Bench started. instances=%d solvers=%d", len(tasks), len(config.solvers))
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(lambda task: self._run_instance(config, *task), tasks))
        rows = [row for chunk in chunks for row in chunk]
        unmet = sum(1 for row in rows if row["bound_satisfied"] == "false")
        logger.info("Bench complete. rows=%d bound_violations=%d", len(rows), unmet)
        return pd.DataFrame(rows, columns=COLUMNS)

    def to_csv(self, frame: pd.DataFrame) -> str:
        buffer = io.StringIO()
        frame.to_csv(
            buffer,
            index=False,
            float_format=f"%.{settings.GBSM_FLOAT_DIGITS}g",
            lineterminator="\n",
        )
        return buffer.getvalue()

    def _run_instance(self, config: BenchConfig, gi: int, spec: GeneratorSpec, i: int) -> list[dict]:
        instance, oracle = spec.build(instance_seed(config.seed, gi, i))
        try:
            _, _, opt_profit = oracle_service.brute_force_opt(instance, oracle, instance.budget)
        except TooLargeError as exc:
            logger.warning("Skipping exact optimum. instance=%s-%d reason=%s", spec.kind, i, exc)
            opt_profit = None

        rows = []
        for solver in config.solvers:
            started = time.perf_counter()
            for _ in range(config.repetitions):
                solution, _ = solver_service.solve(instance, oracle, solver)
            wall_ms = (time.perf_counter() - started) * 1000.0 / config.repetitions

            bound = greedy_factor(builder_alpha(solver.list_builder, solver.epsilon), solver.beta)
            ratio: Optional[float] = None
            satisfied = ""
            if opt_profit is not None:
                ratio = 1.0 if opt_profit <= 0 else solution.profit / opt_profit
                satisfied = "true" if ratio >= bound - settings.GBSM_TOLERANCE else "false"
            rows.append(
                {
                    "instance_id": f"{spec.kind}-{gi}-{i}",
                    "n": instance.n,
                    "m": instance.m,
                    "k": instance.budget,
                    "builder": solver.list_builder,
                    "epsilon": solver.epsilon,
                    "beta": solver.beta,
                    "depth": solver.depth if solver.list_builder == "expbudget" else None,
                    "profit": solution.profit,
                    "opt_profit": opt_profit,
                    "ratio": ratio,
                    "bound": bound,
                    "bound_satisfied": satisfied,
                    "wall_ms": wall_ms if config.record_timing else None,
                }
            )
        return rows


bench_service = BenchService()
