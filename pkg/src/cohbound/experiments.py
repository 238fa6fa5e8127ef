"""Seeded Monte Carlo drivers for bound statistics and recovery checks.

Trial ``t`` of a run with master seed ``S`` uses the seed

    derive_seed(S, t) = splitmix64(S ^ (GOLDEN * (t + 1) mod 2**64))

where ``splitmix64`` is the standard SplitMix64 finalizer. Per-trial seeds
do not depend on trial order or thread count, so results are identical
however the trials are scheduled.
"""
from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .coherence import BoundReport, bound_report
from .ensembles import EnsembleSpec, generate
from .linalg import as_matrix, is_real, measure
from .recovery import SparseSignal, exact_recovery_check, omp_reconstruct

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
BOUND_NAMES = ("standard", "alpha", "improved")
VALUE_MODELS = ("unit_random_phase", "standard_normal")
RECOVERY_TOL = 1e-6
OMP_TOL = 1e-10


def splitmix64(x: int) -> int:
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, trial: int) -> int:
    return splitmix64((master_seed & MASK64) ^ ((GOLDEN * (trial + 1)) & MASK64))


def summarize(values) -> tuple[float, float]:
    """Mean and sample standard deviation (n - 1 denominator)."""
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("need at least one value")
    n = len(vals)
    mean = math.fsum(vals) / n
    if not math.isfinite(mean):
        return mean, math.nan
    if n == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
    return mean, math.sqrt(var)


@dataclass(frozen=True)
class ExperimentConfig:
    ensemble: EnsembleSpec
    trials: int
    master_seed: int
    mode: str = "bound_stats"
    sparsity: int | None = None
    k_from_bound: str | None = None
    value_model: str = "unit_random_phase"
    pairing_mode: str = "paper"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in ("bound_stats", "recovery_check"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.value_model not in VALUE_MODELS:
            raise ValueError(f"unknown value model {self.value_model!r}")
        if self.mode == "recovery_check":
            if (self.sparsity is None) == (self.k_from_bound is None):
                raise ValueError("recovery mode needs exactly one of sparsity / k_from_bound")
            if self.sparsity is not None and self.sparsity < 1:
                raise ValueError("sparsity must be >= 1")
            if self.k_from_bound is not None and self.k_from_bound not in BOUND_NAMES:
                raise ValueError(f"unknown bound {self.k_from_bound!r}")

    def to_dict(self) -> dict:
        ens = self.ensemble
        d = {
            "ensemble": ens.kind,
            "rows": ens.rows,
            "cols": ens.cols,
            "trials": self.trials,
            "mode": self.mode,
            "pairing_mode": self.pairing_mode,
        }
        if ens.row_list is not None:
            d["row_list"] = list(ens.row_list)
        if ens.graph is not None:
            d["vertex_count"] = ens.graph.vertex_count
            d["edge_count"] = len(ens.graph.edges)
            d["missing"] = list(ens.graph.missing)
        if self.mode == "recovery_check":
            d["sparsity"] = self.sparsity
            d["k_from_bound"] = self.k_from_bound
            d["value_model"] = self.value_model
        return d


@dataclass
class ExperimentSummary:
    config: dict
    master_seed: int
    trials: int
    mean: dict = field(default_factory=dict)
    sd: dict = field(default_factory=dict)
    best: dict = field(default_factory=dict)
    successes: int | None = None
    failures: int | None = None
    first_failure_seed: int | None = None
    first_failure_trial: int | None = None
    sparsity: int | None = None
    matrix_bounds: dict | None = None
    rows: list = field(default_factory=list, repr=False)
    duration: float = 0.0

    def to_dict(self) -> dict:
        """JSON-ready dict; wall-clock duration is left out to keep output reproducible."""
        d = {"config": self.config, "seed": self.master_seed, "trials": self.trials}
        if self.successes is None:
            d.update(mean=self.mean, sd=self.sd, max=self.best)
        else:
            d.update(
                sparsity=self.sparsity,
                successes=self.successes,
                failures=self.failures,
                first_failure_seed=self.first_failure_seed,
                first_failure_trial=self.first_failure_trial,
                bounds=self.matrix_bounds,
            )
        return _finite(d)

    def write_csv(self, path) -> None:
        if not self.rows:
            return
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(self.rows[0]))
            writer.writeheader()
            writer.writerows(self.rows)


def _finite(obj):
    """Replace non-finite floats by None so the JSON stays strict."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _trial_spec(spec: EnsembleSpec, seed: int) -> EnsembleSpec:
    return replace(spec, seed=seed)


def run_bound_statistics(config: ExperimentConfig, threads: int = 1) -> ExperimentSummary:
    if config.mode != "bound_stats":
        raise ValueError("config is not in bound_stats mode")
    start = time.perf_counter()

    def one(t):
        seed = derive_seed(config.master_seed, t)
        try:
            a = generate(_trial_spec(config.ensemble, seed))
        except Exception as exc:
            raise RuntimeError(f"trial {t} (seed {seed}) failed: {exc}") from exc
        return seed, bound_report(a, config.pairing_mode)

    results = _map(one, range(config.trials), threads)
    reports = [r for _, r in results]

    mean, sd, best = {}, {}, {}
    mean["mu"], sd["mu"] = summarize(r.mu for r in reports)
    best["mu"] = max(r.mu for r in reports)
    for name in BOUND_NAMES:
        fr = [getattr(r, name).fractional for r in reports]
        km = [getattr(r, name).k_max for r in reports]
        fm, fs = summarize(fr)
        km_mean, km_sd = summarize(km)
        mean[name] = {"fractional": fm, "k_max": km_mean}
        sd[name] = {"fractional": fs, "k_max": km_sd}
        best[name] = {"fractional": max(fr), "k_max": max(km)}

    rows = []
    for t, (seed, r) in enumerate(results):
        row = {"trial": t, "seed": seed, "mu": repr(r.mu)}
        for name in BOUND_NAMES:
            b = getattr(r, name)
            row[f"{name}_fractional"] = repr(b.fractional)
            row[f"{name}_k_max"] = b.k_max
        rows.append(row)

    summary = ExperimentSummary(
        config=config.to_dict(),
        master_seed=config.master_seed,
        trials=config.trials,
        mean=mean,
        sd=sd,
        best=best,
        rows=rows,
        duration=time.perf_counter() - start,
    )
    log.info("bound statistics: %d trials in %.2fs", config.trials, summary.duration)
    return summary


def draw_signal(n: int, k: int, rng: np.random.Generator, value_model: str, real: bool) -> SparseSignal:
    support = np.sort(rng.choice(n, size=k, replace=False))
    if value_model == "unit_random_phase":
        if real:
            values = rng.choice([-1.0, 1.0], size=k).astype(np.complex128)
        else:
            values = np.exp(2j * np.pi * rng.random(k))
    elif value_model == "standard_normal":
        if real:
            values = rng.standard_normal(k).astype(np.complex128)
        else:
            values = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) / np.sqrt(2)
    else:
        raise ValueError(f"unknown value model {value_model!r}")
    return SparseSignal(n, tuple(int(i) for i in support), values)


def recovery_trial(a: np.ndarray, k: int, seed: int, value_model: str = "unit_random_phase"):
    """One seeded recovery attempt; returns (success, truth, result).

    Rerunning with a recorded failure seed replays that failure exactly.
    """
    rng = np.random.default_rng(seed)
    truth = draw_signal(a.shape[1], k, rng, value_model, is_real(a))
    y = measure(a, truth.dense())
    result = omp_reconstruct(a, y, k, tol=OMP_TOL)
    return exact_recovery_check(truth, result, RECOVERY_TOL), truth, result


def run_recovery_trials(a, k: int, trials: int, master_seed: int, value_model: str = "unit_random_phase",
                        threads: int = 1) -> ExperimentSummary:
    a = as_matrix(a)
    m, n = a.shape
    cap = min(m, n - 1)
    if not 1 <= k <= cap:
        raise ValueError(f"sparsity {k} outside [1, {cap}] for a {m}x{n} matrix")
    start = time.perf_counter()

    def one(t):
        seed = derive_seed(master_seed, t)
        ok, _, result = recovery_trial(a, k, seed, value_model)
        return seed, ok, result.residual_norm

    results = _map(one, range(trials), threads)
    failed = [t for t, (_, ok, _) in enumerate(results) if not ok]
    rows = [{"trial": t, "seed": s, "success": int(ok), "residual_norm": repr(res)}
            for t, (s, ok, res) in enumerate(results)]
    return ExperimentSummary(
        config={},
        master_seed=master_seed,
        trials=trials,
        successes=trials - len(failed),
        failures=len(failed),
        first_failure_seed=results[failed[0]][0] if failed else None,
        first_failure_trial=failed[0] if failed else None,
        sparsity=k,
        rows=rows,
        duration=time.perf_counter() - start,
    )


def run_recovery_check(config: ExperimentConfig, threads: int = 1) -> ExperimentSummary:
    """Recovery trials on one matrix generated from the master seed.

    The matrix uses ``master_seed`` directly, so ``generate`` with the same
    seed reproduces it; signals use the derived per-trial seeds.
    """
    if config.mode != "recovery_check":
        raise ValueError("config is not in recovery_check mode")
    a = generate(_trial_spec(config.ensemble, config.master_seed))
    report: BoundReport = bound_report(a, config.pairing_mode)
    k = config.sparsity if config.sparsity is not None else getattr(report, config.k_from_bound).k_max
    summary = run_recovery_trials(a, k, config.trials, config.master_seed, config.value_model, threads)
    summary.config = config.to_dict()
    summary.matrix_bounds = report.to_dict()
    log.info("recovery check K=%d: %d/%d succeeded in %.2fs", k, summary.successes, summary.trials,
             summary.duration)
    return summary


def run(config: ExperimentConfig, threads: int = 1) -> ExperimentSummary:
    if config.mode == "bound_stats":
        return run_bound_statistics(config, threads)
    return run_recovery_check(config, threads)


__all__ = [
    "ExperimentConfig",
    "ExperimentSummary",
    "derive_seed",
    "draw_signal",
    "recovery_trial",
    "run",
    "run_bound_statistics",
    "run_recovery_check",
    "run_recovery_trials",
    "splitmix64",
    "summarize",
]
