"""Reproducible Monte Carlo ensembles of zero counts.

Determinism contract: trial t draws its coefficients from a counter-based
generator keyed by seed XOR splitmix64(t), so the counts sequence depends
only on (seed, configuration) and never on scheduling or worker count.
Results from parallel workers are merged in trial-index order.

The rootfinder is the count of record; on a 1% subsample of trials the
argument-principle count audits it.  Trials whose roots cannot be certified
(NoConvergence, degenerate leading coefficient) are recorded as exclusions;
more than 0.1% of them aborts the ensemble rather than biasing it quietly.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import multiprocessing as _mp

import numpy as np

from .cpoly import ComplexPoly
from .errors import (
    BoundaryProximity,
    DegenerateLeadingCoefficient,
    ExclusionBudgetExceeded,
    NoConvergence,
    UsageError,
)
from .opuc import AlphaFamily, OpucBasis, regularity_report
from .zerocount import Region, count_by_argument_principle, count_in_region, roots

_M64 = (1 << 64) - 1
_BOOT_SALT = 0x0B00757261700000  # distinct stream for the bootstrap resampler
BOOTSTRAP_RESAMPLES = 1000
AUDIT_STRIDE = 100
EXCLUSION_BUDGET = 1e-3


def splitmix64(x: int) -> int:
    """The splitmix64 finalizer; a bijective 64-bit mix."""
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def trial_seed(seed: int, t: int) -> int:
    return (seed & _M64) ^ splitmix64(t)


@dataclass
class CoeffModel:
    """Coefficient law with mean 0 and E|eta|^2 = 1."""

    kind: str

    def draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if self.kind == "complex_gaussian":
            re = rng.standard_normal(count)
            im = rng.standard_normal(count)
            return (re + 1j * im) / math.sqrt(2)
        if self.kind == "uniform_disk":
            # uniform on the disk of radius sqrt(2): E|eta|^2 = R^2/2 = 1
            r = np.sqrt(2.0 * rng.random(count))
            th = 2 * np.pi * rng.random(count)
            return r * np.exp(1j * th)
        if self.kind == "quaternary":
            table = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / math.sqrt(2)
            return table[rng.integers(0, 4, count)]
        raise UsageError(f"unknown coefficient model {self.kind!r}")


def coeff_model(name: str) -> CoeffModel:
    canon = {
        "gaussian": "complex_gaussian",
        "complex_gaussian": "complex_gaussian",
        "uniform_disk": "uniform_disk",
        "uniform-disk": "uniform_disk",
        "quaternary": "quaternary",
    }.get(name.strip().lower())
    if canon is None:
        raise UsageError(f"unknown coefficient model {name!r}")
    return CoeffModel(canon)


def sample_poly(basis: OpucBasis, model: CoeffModel, trial_seed: int) -> ComplexPoly:
    """One random combination sum eta_k phi_k, k = 0..basis.order."""
    rng = np.random.Generator(np.random.Philox(key=trial_seed & _M64))
    eta = model.draw(rng, basis.order + 1)
    return ComplexPoly(eta @ basis.coeff_matrix)


@dataclass
class EnsembleStats:
    counts: np.ndarray
    mean: float
    variance: float
    se_mean: float
    se_var: float
    seed: int
    n: int
    trials: int
    region: Region
    trial_indices: np.ndarray = None  # original trial index of each count
    excluded: int = 0
    excluded_trials: Tuple[int, ...] = ()
    audited: int = 0
    audit_mismatches: int = 0
    audit_flagged: int = 0


def _count_one(basis, model, region, seed, t) -> Optional[int]:
    p = sample_poly(basis, model, trial_seed(seed, t))
    try:
        return count_in_region(roots(p), region)
    except (NoConvergence, DegenerateLeadingCoefficient):
        return None


def _chunk_counts(args):
    basis, model, region, seed, lo, hi = args
    return [_count_one(basis, model, region, seed, t) for t in range(lo, hi)]


def run_ensemble(basis: OpucBasis, model: CoeffModel, region: Region,
                 trials: int, seed: int, workers: int = 1) -> EnsembleStats:
    """Count zeros in `region` over `trials` independent samples.

    Identical (seed, config) give bit-identical counts for any `workers`.
    """
    if trials < 2:
        raise UsageError("need at least 2 trials")
    if workers < 1:
        raise UsageError("workers must be >= 1")

    raw: list = [None] * trials
    if workers == 1:
        for t in range(trials):
            raw[t] = _count_one(basis, model, region, seed, t)
    else:
        nchunks = min(trials, workers * 4)
        edges = np.linspace(0, trials, nchunks + 1).astype(int)
        jobs = [(basis, model, region, seed, int(lo), int(hi))
                for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
        ctx = _mp.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            for (_, _, _, _, lo, _), out in zip(jobs, pool.map(_chunk_counts, jobs)):
                raw[lo : lo + len(out)] = out

    excluded_trials = tuple(t for t, c in enumerate(raw) if c is None)
    if len(excluded_trials) > EXCLUSION_BUDGET * trials:
        raise ExclusionBudgetExceeded(
            f"{len(excluded_trials)} of {trials} trials excluded")
    counts = np.array([c for c in raw if c is not None], dtype=np.int64)
    kept = np.array([t for t, c in enumerate(raw) if c is not None],
                    dtype=np.int64)

    audited = mismatches = flagged = 0
    for t in range(0, trials, AUDIT_STRIDE):
        if raw[t] is None:
            continue
        p = sample_poly(basis, model, trial_seed(seed, t))
        try:
            check = count_by_argument_principle(p, region)
        except BoundaryProximity:
            flagged += 1
            continue
        audited += 1
        if check != raw[t]:
            mismatches += 1

    m = counts.size
    mean = float(counts.mean())
    variance = float(counts.var(ddof=1))
    se_mean = float(counts.std(ddof=1) / math.sqrt(m))
    boot_rng = np.random.Generator(
        np.random.Philox(key=splitmix64((seed & _M64) ^ _BOOT_SALT)))
    idx = boot_rng.integers(0, m, size=(BOOTSTRAP_RESAMPLES, m))
    boot_vars = counts[idx].var(axis=1, ddof=1)
    se_var = float(boot_vars.std(ddof=1))

    return EnsembleStats(
        counts=counts, mean=mean, variance=variance, se_mean=se_mean,
        se_var=se_var, seed=seed, n=basis.order, trials=trials, region=region,
        trial_indices=kept, excluded=len(excluded_trials),
        excluded_trials=excluded_trials, audited=audited,
        audit_mismatches=mismatches, audit_flagged=flagged)


@dataclass
class ConvergenceRow:
    n: int
    mean_abs_dev: float
    var_over_n2: float
    envelope_sqrtlogn: float
    envelope_eps14: float
    stats: EnsembleStats = field(repr=False, default=None)


def convergence_study(basis_family: AlphaFamily, model: CoeffModel,
                      region: Region, ns: Sequence[int], trials: int,
                      seed: int, workers: int = 1) -> list:
    """Sector-count deviations against the angular fraction, one row per n.

    Rows report E|N_n/n - (beta-alpha)/(2 pi)| and Var[N_n]/n^2 next to the
    reference envelopes sqrt(log n / n) and max(sqrt(log n / n), eps_n^(1/4)).
    The same master seed drives every row (common random numbers), which
    sharpens trend comparisons across n without touching per-row validity.
    """
    ns = list(ns)
    if any(b <= a for a, b in zip(ns, ns[1:])) or not ns:
        raise UsageError("ns must be strictly increasing and non-empty")
    if ns[0] < 1:
        raise UsageError("degrees must be >= 1")
    if region.kind != "sector":
        raise UsageError("convergence study needs a sector region")
    frac = region.angular_fraction()
    basis_family.alphas(max(ns))  # one warm-up fill of the family cache
    rows = []
    for n in ns:
        basis = basis_family.build(n)
        stats = run_ensemble(basis, model, region, trials, seed, workers=workers)
        dev = float(np.mean(np.abs(stats.counts / n - frac)))
        eps_n = float(regularity_report(basis).epsilons[-1])
        env1 = math.sqrt(math.log(n) / n) if n > 1 else 1.0
        env2 = max(env1, eps_n ** 0.25 if eps_n > 0 else 0.0)
        rows.append(ConvergenceRow(
            n=n, mean_abs_dev=dev, var_over_n2=stats.variance / n**2,
            envelope_sqrtlogn=env1, envelope_eps14=env2, stats=stats))
    return rows
