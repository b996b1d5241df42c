"""Independent verification engines.

Each quantity checked here is reachable by two unrelated routes: the
closed-form series against exact generalized Gauss-Laguerre quadrature, the
unitary twirl formula against brute-force Haar averaging, and the spectral
closed forms against Monte Carlo over the actual samplers. The quadrature
route never touches the series code in :mod:`haar_coherence.closed_forms`.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .closed_forms import MomentTable
from .estimators import EstimatorResult, merge_stats, stats_of
from .linalg import swap_operator
from .sampling import RngStream, haar_unitary_batch, hs_mixed_batch

# Exponential(1) draws per RNG call in the Monte Carlo loops; fixed because it
# determines the stream consumption order.
_BLOCK_DRAWS = 1 << 21

# Above this dimension the heavy-tailed Vandermonde integrand makes the plain
# Monte Carlo estimate useless at desk-scale sample counts.
_VANDERMONDE_MAX_DIM = 4


@dataclass(frozen=True)
class QuadratureRule:
    alpha: float
    nodes: np.ndarray
    weights: np.ndarray


def _scaled_rule(alpha: float, n_nodes: int):
    """Nodes plus weights premultiplied by e^{x} (the Christoffel function of
    the e^{-x/2}-scaled orthonormal polynomials).

    Working in scaled space keeps every intermediate O(1); the raw weights at
    the largest nodes of a 100+ point rule are ~1e-220 and their eigenvector
    components underflow when squared.
    """
    i = np.arange(n_nodes, dtype=float)
    nodes = eigh_tridiagonal(2 * i + alpha + 1, np.sqrt(i[1:] * (i[1:] + alpha)),
                             eigvals_only=True)
    mu0 = math.exp(math.lgamma(alpha + 1.0))
    prev = np.zeros_like(nodes)
    cur = np.exp(-nodes / 2) / math.sqrt(mu0)
    norm_sum = cur**2
    for k in range(1, n_nodes):
        a_prev = 2 * (k - 1) + alpha + 1
        b_prev = math.sqrt((k - 1) * (k - 1 + alpha)) if k >= 2 else 0.0
        b_cur = math.sqrt(k * (k + alpha))
        prev, cur = cur, ((nodes - a_prev) * cur - b_prev * prev) / b_cur
        norm_sum += cur**2
    return nodes, 1.0 / norm_sum


def gauss_laguerre_rule(alpha: float, n_nodes: int) -> QuadratureRule:
    """Golub-Welsch generalized Gauss-Laguerre rule for weight x^alpha e^{-x}.

    Nodes are the eigenvalues of the symmetric Jacobi matrix of the
    generalized Laguerre recurrence; the rule integrates polynomials up to
    degree 2 n_nodes - 1 exactly.
    """
    if alpha <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {alpha}")
    if n_nodes < 1:
        raise ValueError(f"need at least one node, got {n_nodes}")
    nodes, scaled = _scaled_rule(alpha, n_nodes)
    return QuadratureRule(alpha=alpha, nodes=nodes, weights=scaled * np.exp(-nodes))


def _scaled_laguerre_rows(n_rows: int, x: np.ndarray) -> np.ndarray:
    # L_k(x) e^{-x/2} for k = 0..n_rows-1; the scaling commutes with the
    # linear recurrence and avoids the ~1e100 magnitudes of the raw L_k.
    rows = np.empty((n_rows, x.size))
    rows[0] = np.exp(-x / 2)
    if n_rows > 1:
        rows[1] = (1.0 - x) * rows[0]
    for k in range(1, n_rows - 1):
        rows[k + 1] = ((2 * k + 1 - x) * rows[k] - k * rows[k - 1]) / (k + 1)
    return rows


def laguerre_moment_quadrature(k: int, l: int, q: float, n_nodes: int = None) -> float:
    """Quadrature value of the weighted moment of L_k L_l against x^q e^{-x}.

    The default node count floor((k + l)/2) + 2 sits one above the exactness
    threshold, so the degree k + l polynomial part is integrated exactly and
    the only error is round-off.
    """
    if k < 0 or l < 0:
        raise ValueError("moment indices must be >= 0")
    if q <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {q}")
    if n_nodes is None:
        n_nodes = (k + l) // 2 + 2
    nodes, scaled = _scaled_rule(q, n_nodes)
    rows = _scaled_laguerre_rows(max(k, l) + 1, nodes)
    return float((scaled * rows[k] * rows[l]).sum())


def quadrature_moment_table(n: int, q: float) -> MomentTable:
    """Full moment table for degrees 0..n-1 from one shared (n + 2)-node rule."""
    if n < 1:
        raise ValueError(f"table size must be >= 1, got {n}")
    nodes, scaled = _scaled_rule(q, n + 2)
    rows = _scaled_laguerre_rows(n, nodes)
    values = (rows * scaled) @ rows.T
    values = (values + values.T) / 2
    values.flags.writeable = False
    return MomentTable(q=q, values=values, method="quadrature")


def vandermonde_sqrt_integral_mc(n: int, samples: int, rng: RngStream,
                                 block: int = None) -> EstimatorResult:
    """Monte Carlo estimate of the integral of sqrt(mu1 mu2) e^{-sum mu}
    |Delta(mu)|^2 over the positive orthant.

    Samples each mu_j ~ Exponential(1) and averages
    sqrt(mu1 mu2) prod_{i<j} (mu_i - mu_j)^2. Capped at n = 4: the squared
    Vandermonde factor is heavy-tailed under exponential sampling and the
    estimator variance explodes beyond that.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if n > _VANDERMONDE_MAX_DIM:
        raise ValueError(
            f"Monte Carlo route is limited to dimension <= {_VANDERMONDE_MAX_DIM}, got {n}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if block is None:
        block = max(1, _BLOCK_DRAWS // n)
    stats = (0, 0.0, 0.0)
    done = 0
    while done < samples:
        b = min(block, samples - done)
        mu = rng.exponential(b * n).reshape(b, n)
        f = np.sqrt(mu[:, 0] * mu[:, 1])
        for i in range(n):
            for j in range(i + 1, n):
                f = f * (mu[:, i] - mu[:, j]) ** 2
        stats = merge_stats(stats, stats_of(f))
        done += b
    count, mean, m2 = stats
    stderr = math.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
    return EstimatorResult(mean=mean, stderr=stderr, n_samples=count,
                           master_seed=rng.master_seed, chunk_size=samples)


def twofold_twirl(a, n: int) -> np.ndarray:
    """Closed form of the Haar average of (U x U) A (U x U)†.

    The average lands in span{identity, swap}; the coefficients are grouped
    as (n Tr A - Tr(AF)) / (n (n^2 - 1)) and its mirror so that identity and
    swap inputs are fixed points exactly, even in floating point.
    """
    a = np.asarray(a, dtype=complex)
    if n < 2:
        raise ValueError(f"local dimension must be >= 2, got {n}")
    if a.shape != (n * n, n * n):
        raise ValueError(f"expected a {n * n}x{n * n} matrix, got shape {a.shape}")
    f = swap_operator(n)
    tr_a = np.trace(a)
    tr_af = np.trace(a @ f)
    denom = n * (n * n - 1)
    coeff_id = (n * tr_a - tr_af) / denom
    coeff_swap = (n * tr_af - tr_a) / denom
    return coeff_id * np.eye(n * n) + coeff_swap * f


def twofold_twirl_mc(a, n: int, samples: int, rng: RngStream,
                     block: int = 4096) -> np.ndarray:
    """Brute-force Haar average of (U x U) A (U x U)† over sampled unitaries."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (n * n, n * n):
        raise ValueError(f"expected a {n * n}x{n * n} matrix, got shape {a.shape}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    total = np.zeros((n * n, n * n), dtype=complex)
    done = 0
    while done < samples:
        b = min(block, samples - done)
        u = haar_unitary_batch(rng, n, b)
        w = np.einsum("bij,bkl->bikjl", u, u).reshape(b, n * n, n * n)
        total += np.einsum("bij,jk,blk->il", w, a, w.conj())
        done += b
    return total / samples


def trace_sqrt_squared_mc(n: int, samples: int, rng: RngStream,
                          block: int = None) -> EstimatorResult:
    """Monte Carlo mean of (Tr sqrt(rho))^2 over Hilbert-Schmidt random states."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if block is None:
        block = max(1, _BLOCK_DRAWS // (n * n))
    stats = (0, 0.0, 0.0)
    done = 0
    while done < samples:
        b = min(block, samples - done)
        rho = hs_mixed_batch(rng, n, b)
        spectrum = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
        values = np.sqrt(spectrum).sum(axis=1) ** 2
        stats = merge_stats(stats, stats_of(values))
        done += b
    count, mean, m2 = stats
    stderr = math.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
    return EstimatorResult(mean=mean, stderr=stderr, n_samples=count,
                           master_seed=rng.master_seed, chunk_size=samples)
