"""Deterministic chunked Monte Carlo estimation of ensemble averages, tail
frequencies and the dimension sweep of the average mixed-state coherence.

Chunk c always draws from stream index c of the master seed, and per-chunk
statistics merge in ascending chunk order, so every estimate is bit-identical
regardless of how many worker threads execute the chunks.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from . import closed_forms
from .sampling import RngStream, haar_pure_batch, hs_mixed_batch

DEFAULT_CHUNK_SIZE = 1024

# Complex draws per RNG call when a chunk is evaluated in blocks; fixed so the
# stream consumption order (hence the result) never depends on memory limits.
_BLOCK_DRAWS = 1 << 21

_MEASURES = {"skew": "skew", "rel-ent": "rel-ent", "relative-entropy": "rel-ent"}


@dataclass(frozen=True)
class EstimatorResult:
    mean: float
    stderr: float
    n_samples: int
    master_seed: int
    chunk_size: int


@dataclass(frozen=True)
class TailEstimate:
    frequency: float
    bound: float
    epsilon: float
    n_samples: int
    center: float


@dataclass(frozen=True)
class SweepRow:
    n: int
    analytic: float
    mc_mean: float
    mc_stderr: float
    n_samples: int
    seed: int


def stats_of(values: np.ndarray):
    """(count, mean, sum of squared deviations) of a sample block."""
    count = int(values.size)
    mean = float(values.mean())
    m2 = float(((values - mean) ** 2).sum())
    return count, mean, m2


def merge_stats(a, b):
    """Pairwise combination of two (count, mean, M2) partials."""
    na, mean_a, m2_a = a
    nb, mean_b, m2_b = b
    if na == 0:
        return b
    if nb == 0:
        return a
    n = na + nb
    delta = mean_b - mean_a
    return n, mean_a + delta * nb / n, m2_a + m2_b + delta * delta * na * nb / n


def _finish(stats, master_seed, chunk_size) -> EstimatorResult:
    n, mean, m2 = stats
    stderr = math.sqrt(m2 / (n - 1) / n) if n > 1 else 0.0
    return EstimatorResult(mean=mean, stderr=stderr, n_samples=n,
                           master_seed=master_seed, chunk_size=chunk_size)


def run_chunked(task, total_samples: int, chunk_size: int = DEFAULT_CHUNK_SIZE,
                master_seed: int = 0, threads: int = 1) -> EstimatorResult:
    """Evaluate ``task(rng, count) -> values`` over deterministic chunks.

    Chunk c owns RngStream(master_seed, c) exclusively; a short final chunk
    absorbs any remainder so the total sample count is respected exactly.
    Threads only change wall time, never the result, because the merge order
    is fixed by chunk index.
    """
    if total_samples < 1:
        raise ValueError(f"total_samples must be >= 1, got {total_samples}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    counts = [chunk_size] * (total_samples // chunk_size)
    if total_samples % chunk_size:
        counts.append(total_samples % chunk_size)

    def one_chunk(job):
        index, count = job
        return stats_of(task(RngStream(master_seed, index), count))

    jobs = list(enumerate(counts))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(one_chunk, jobs))
    else:
        partials = [one_chunk(job) for job in jobs]

    merged = partials[0]
    for part in partials[1:]:
        merged = merge_stats(merged, part)
    return _finish(merged, master_seed, chunk_size)


def _pure_task(n: int, measure: str):
    def task(rng, count):
        p = np.abs(haar_pure_batch(rng, n, count)) ** 2
        if measure == "skew":
            return 1.0 - (p * p).sum(axis=1)
        return -xlogy(p, p).sum(axis=1)

    return task


def _mixed_task(n: int, measure: str):
    block = max(1, _BLOCK_DRAWS // (n * n))

    def task(rng, count):
        out = np.empty(count)
        done = 0
        while done < count:
            b = min(block, count - done)
            rho = hs_mixed_batch(rng, n, b)
            if measure == "skew":
                w, v = np.linalg.eigh(rho)
                root = np.sqrt(np.clip(w, 0.0, None))
                diag = np.einsum("bka,ba->bk", np.abs(v) ** 2, root)
                out[done:done + b] = 1.0 - (diag * diag).sum(axis=1)
            else:
                spectrum = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
                populations = np.clip(np.diagonal(rho, axis1=1, axis2=2).real, 0.0, None)
                out[done:done + b] = (xlogy(spectrum, spectrum).sum(axis=1)
                                      - xlogy(populations, populations).sum(axis=1))
            done += b
        return out

    return task


def _coherence_task(ensemble: str, n: int, measure: str):
    if measure not in _MEASURES:
        raise ValueError(f"unknown measure {measure!r}; expected 'skew' or 'rel-ent'")
    measure = _MEASURES[measure]
    if ensemble == "pure":
        return _pure_task(n, measure)
    if ensemble == "mixed":
        return _mixed_task(n, measure)
    raise ValueError(f"unknown ensemble {ensemble!r}; expected 'pure' or 'mixed'")


def estimate_average(ensemble: str, n: int, samples: int, seed: int,
                     measure: str = "skew", chunk_size: int = DEFAULT_CHUNK_SIZE,
                     threads: int = 1) -> EstimatorResult:
    """Chunked Monte Carlo mean of a coherence measure over a state ensemble."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if samples < 2:
        raise ValueError(f"need at least 2 samples for a standard error, got {samples}")
    task = _coherence_task(ensemble, n, measure)
    return run_chunked(task, samples, chunk_size, seed, threads)


def estimate_tail(ensemble: str, n: int, epsilon: float, samples: int, seed: int,
                  chunk_size: int = DEFAULT_CHUNK_SIZE, threads: int = 1) -> TailEstimate:
    """Empirical frequency of |C - analytic mean| > epsilon with its bound.

    Deviations are measured from the analytic ensemble average (the quantity
    the concentration statements are about), not the empirical mean.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if ensemble == "pure":
        center = closed_forms.avg_coherence_pure(n)
        bound = closed_forms.tail_bound_pure(n, epsilon)
    elif ensemble == "mixed":
        center = closed_forms.avg_coherence_mixed(n)
        bound = closed_forms.tail_bound_mixed(n, epsilon)
    else:
        raise ValueError(f"unknown ensemble {ensemble!r}; expected 'pure' or 'mixed'")
    base = _coherence_task(ensemble, n, "skew")

    def task(rng, count):
        return (np.abs(base(rng, count) - center) > epsilon).astype(float)

    result = run_chunked(task, samples, chunk_size, seed, threads)
    return TailEstimate(frequency=result.mean, bound=bound, epsilon=epsilon,
                        n_samples=result.n_samples, center=center)


def figure1_sweep(max_exp: int, samples: int, seed: int,
                  chunk_size: int = DEFAULT_CHUNK_SIZE, threads: int = 1):
    """Analytic vs Monte Carlo average mixed-state coherence for n = 2^m.

    One row per m = 1..max_exp. The analytic column comes from the validated
    moment table, so a series/quadrature disagreement aborts the sweep.
    """
    if max_exp < 1:
        raise ValueError(f"max_exp must be >= 1, got {max_exp}")
    rows = []
    for m in range(1, max_exp + 1):
        n = 2**m
        analytic = closed_forms.avg_coherence_mixed(n)
        est = estimate_average("mixed", n, samples, seed, "skew", chunk_size, threads)
        rows.append(SweepRow(n=n, analytic=analytic, mc_mean=est.mean,
                             mc_stderr=est.stderr, n_samples=samples, seed=seed))
    return rows
