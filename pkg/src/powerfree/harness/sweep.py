"""Grid sweeps comparing exact counts with the saddle-point asymptotics."""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

from ..errors import PowerFreeError
from ..exact import Occupancy, count_power_free
from ..saddle import asymptotic_count
from ..semigroup import LOG_MODEL, SemigroupModel, SemigroupParams
from .config import RunConfig


@dataclass(frozen=True)
class ExperimentRow:
    rho: float
    k: Occupancy
    x: float
    exact: Optional[int]
    asymptotic_log: Optional[float]
    asymptotic: Optional[float]  # None: overflowed double range
    ratio: Optional[float]
    beta: Optional[float]
    runtime_ms: int
    status: str = "ok"

    @property
    def sort_key(self):
        return (self.rho, self.k, self.x)


def build_model(cfg: RunConfig, rho: float) -> SemigroupModel:
    if cfg.kind == LOG_MODEL:
        return SemigroupModel.log_model(rho)
    return SemigroupModel.explicit(
        cfg.degrees, SemigroupParams(rho, cfg.gamma, cfg.delta), complete=True
    )


def run_cell(cfg: RunConfig, rho: float, k: Occupancy, x: float) -> ExperimentRow:
    """One (rho, k, x) cell; failures land in ``status`` instead of raising."""
    start = time.perf_counter()
    exact = log_est = linear = ratio = beta = None
    problems = []
    model = build_model(cfg, rho)
    try:
        exact = count_power_free(model, k, x).count
    except (PowerFreeError, ValueError) as exc:
        problems.append(f"exact: {type(exc).__name__}: {exc}")
    if x > 0:
        try:
            est = asymptotic_count(model, k, x, cfg.tol, cfg.max_primes)
            log_est, linear, beta = est.log_value, est.linear_value, est.saddle.beta
            if linear is None:
                problems.append("asymptotic: overflow")
        except (PowerFreeError, ValueError) as exc:
            problems.append(f"asymptotic: {type(exc).__name__}: {exc}")
    else:
        problems.append("asymptotic: undefined at x = 0")
    if exact and log_est is not None:
        try:
            ratio = math.exp(log_est - math.log(exact))
        except OverflowError:
            problems.append("ratio: overflow")
    elapsed = int(round((time.perf_counter() - start) * 1000))
    status = "ok" if not problems else "; ".join(problems)
    return ExperimentRow(rho, k, x, exact, log_est, linear, ratio, beta, elapsed, status)


def _cell_args(cfg):
    return itertools.product(cfg.rho_values, cfg.k_set, cfg.x_grid)


def _run_packed(args):
    return run_cell(*args)


def run_sweep(cfg: RunConfig) -> List[ExperimentRow]:
    """All cells of the configured grid, sorted by (rho, k, x)."""
    cfg.validate()
    jobs = [(cfg, rho, k, x) for rho, k, x in _cell_args(cfg)]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(_run_packed, jobs))
    else:
        rows = [_run_packed(job) for job in jobs]
    return sorted(rows, key=lambda r: r.sort_key)
