"""Closed-form expressions: Laguerre weighted moments, ensemble-average
coherence, concentration bounds and the comparison averages.

The mixed-state average is driven by the symmetric table of weighted Laguerre
moments

    I_kl(q) = integral of L_k(x) L_l(x) x^q e^{-x} over [0, inf),

evaluated here by its closed-form series. The series route is independently
cross-checked against the quadrature route in :mod:`haar_coherence.oracles`;
`avg_coherence_mixed` refuses to return a value if the two routes disagree.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Exponent denominator 9 pi^3 ln 2 of the sphere concentration bound; the
# pure/mixed tail bounds use 72 pi^3 ln 2 = 8 times this.
_LEVY_DENOM = 9.0 * math.pi**3 * math.log(2.0)

# Maximum tolerated series-vs-quadrature disagreement per table entry.
MOMENT_GATE = 1e-9


class PrecisionError(RuntimeError):
    """Two independent evaluation routes disagreed beyond tolerance."""


@dataclass(frozen=True)
class MomentTable:
    """Symmetric table of weighted Laguerre moments with its provenance."""

    q: float
    values: np.ndarray  # (n, n), values[k, l] = I_kl(q)
    method: str         # "series" or "quadrature"


def laguerre(k: int, x):
    """Laguerre polynomial L_k(x) by the three-term recurrence."""
    if k < 0:
        raise ValueError(f"polynomial degree must be >= 0, got {k}")
    xa = np.asarray(x, dtype=float)
    cur = np.ones_like(xa)
    if k >= 1:
        prev, cur = cur, 1.0 - xa
        for j in range(1, k):
            prev, cur = cur, ((2 * j + 1 - xa) * cur - j * prev) / (j + 1)
    return cur if isinstance(x, np.ndarray) else float(cur)


def gen_binomial(q: float, m: int) -> float:
    """Generalized binomial coefficient binom(q, m) for real q."""
    if m < 0:
        raise ValueError(f"lower index must be >= 0, got {m}")
    out = 1.0
    for i in range(m):
        out *= (q - i) / (i + 1)
    return out


def _gen_binomial_array(q: float, m: int) -> np.ndarray:
    b = np.empty(m + 1)
    b[0] = 1.0
    for i in range(m):
        b[i + 1] = b[i] * (q - i) / (i + 1)
    return b


def _moment_from_binomials(k: int, l: int, q: float, b: np.ndarray) -> float:
    sign = -1.0 if (k + l) % 2 else 1.0
    # Gamma ratio in log space (overflows double near degree 170 otherwise);
    # fsum keeps the alternating binomial series accurate at large degrees.
    terms = (
        b[k - r] * b[l - r] * math.exp(math.lgamma(q + r + 1.0) - math.lgamma(r + 1.0))
        for r in range(min(k, l) + 1)
    )
    return sign * math.fsum(terms)


def laguerre_moment(k: int, l: int, q: float) -> float:
    """Weighted moment of L_k L_l against x^q e^{-x}, from the closed-form series.

    Symmetric in (k, l); reduces to the Kronecker delta at q = 0 by
    orthogonality.
    """
    if k < 0 or l < 0:
        raise ValueError("moment indices must be >= 0")
    if q <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {q}")
    return _moment_from_binomials(k, l, q, _gen_binomial_array(q, max(k, l)))


def moment_table(n: int, q: float) -> MomentTable:
    """Symmetric n x n moment table for degrees 0..n-1, from the series."""
    if n < 1:
        raise ValueError(f"table size must be >= 1, got {n}")
    if q <= -1.0:
        raise ValueError(f"weight exponent must exceed -1, got {q}")
    b = _gen_binomial_array(q, n - 1)
    values = np.empty((n, n))
    for k in range(n):
        for l in range(k, n):
            v = _moment_from_binomials(k, l, q, b)
            values[k, l] = v
            values[l, k] = v
    values.flags.writeable = False
    return MomentTable(q=q, values=values, method="series")


@lru_cache(maxsize=None)
def validated_half_moment_table(n: int) -> MomentTable:
    """q = 1/2 series table, gated against the independent quadrature route.

    Raises PrecisionError if any entry differs by more than MOMENT_GATE; a
    silently wrong table would poison every mixed-ensemble average built on it.
    """
    from . import oracles  # function-level import breaks the module cycle

    series = moment_table(n, 0.5)
    quadrature = oracles.quadrature_moment_table(n, 0.5)
    gap = float(np.abs(series.values - quadrature.values).max())
    if gap > MOMENT_GATE:
        raise PrecisionError(
            f"moment table routes disagree by {gap:.3e} (gate {MOMENT_GATE:.0e}) at n={n}")
    return series


def moment_bracket(values: np.ndarray) -> float:
    """(sum_k I_kk)^2 - sum_{k,l} I_kl^2 with compensated summation."""
    n = values.shape[0]
    diag = math.fsum(values[k, k] for k in range(n))
    squares = math.fsum(values[k, l] ** 2 for k in range(n) for l in range(n))
    return diag * diag - squares


def avg_coherence_pure(n: int) -> float:
    """Average coherence of Haar-random pure states: (n - 1)/(n + 1)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return (n - 1) / (n + 1)


def avg_coherence_mixed(n: int, validate: bool = True) -> float:
    """Average coherence of Hilbert-Schmidt random mixed states.

    Evaluates 1 - (2 + bracket/n^2)/(n + 1) from the q = 1/2 moment table over
    degrees 0..n-1. With validate=True (the default) the table is checked
    against the quadrature oracle first.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 0.0
    table = validated_half_moment_table(n) if validate else moment_table(n, 0.5)
    return 1.0 - (2.0 + moment_bracket(table.values) / n**2) / (n + 1)


def vandermonde_sqrt_integral(n: int) -> float:
    """Closed form of the integral of sqrt(mu1 mu2) e^{-sum mu} |Delta(mu)|^2
    over the positive orthant: (n-2)! prod_j Gamma(j)^2 times the moment
    bracket of the q = 1/2 table."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    log_prefactor = math.lgamma(n - 1) + 2.0 * math.fsum(math.lgamma(j) for j in range(1, n + 1))
    return math.exp(log_prefactor) * moment_bracket(validated_half_moment_table(n).values)


def trace_sqrt_squared_average(n: int) -> float:
    """Spectral average of (Tr sqrt(rho))^2 over the Hilbert-Schmidt ensemble:
    1 + bracket/n^2."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 1.0
    return 1.0 + moment_bracket(validated_half_moment_table(n).values) / n**2


def max_coherence(n: int) -> float:
    """Largest attainable coherence in dimension n: 1 - 1/n."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return 1.0 - 1.0 / n


def pure_average_gap(n: int) -> float:
    """Gap between the maximal and the average pure-state coherence,
    (1 - 1/n) - (n-1)/(n+1), in its cancellation-free form (n-1)/(n(n+1))."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return (n - 1) / (n * (n + 1))


def levy_bound(sphere_dim: int, epsilon: float, lipschitz: float) -> float:
    """Sphere concentration bound 2 exp(-(k+1) eps^2 / (9 pi^3 eta^2 ln 2))."""
    if sphere_dim < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {sphere_dim}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if lipschitz <= 0:
        raise ValueError(f"lipschitz constant must be > 0, got {lipschitz}")
    return 2.0 * math.exp(-(sphere_dim + 1) * epsilon**2 / (_LEVY_DENOM * lipschitz**2))


def tail_bound_pure(n: int, epsilon: float) -> float:
    """Pure-state tail bound 2 exp(-n^3 eps^2 / (72 pi^3 ln 2))."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    return 2.0 * math.exp(-(n**3) * epsilon**2 / (8.0 * _LEVY_DENOM))


def tail_bound_mixed(n: int, epsilon: float) -> float:
    """Mixed-state tail bound 2 exp(-n eps^2 / (72 pi^3 ln 2))."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    return 2.0 * math.exp(-n * epsilon**2 / (8.0 * _LEVY_DENOM))


def coherent_subspace_dim(n: int, epsilon: float) -> int:
    """Dimension floor((n^3 eps^2 - 1) / (3095 (3 - ln(eps n)))) of a subspace
    whose pure states almost always carry near-typical coherence.

    Only defined for 0 < eps < 1/n. A non-positive numerator clamps to 0,
    since a subspace dimension cannot be negative.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if not 0.0 < epsilon < 1.0 / n:
        raise ValueError(f"epsilon must lie in (0, 1/{n}), got {epsilon}")
    numerator = n**3 * epsilon**2 - 1.0
    if numerator <= 0.0:
        return 0
    return int(math.floor(numerator / (3095.0 * (3.0 - math.log(epsilon * n)))))


def lipschitz_constant_pure(n: int) -> float:
    """Lipschitz scale 4/n used by the pure-state concentration bound."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return 4.0 / n


def lipschitz_constant_mixed() -> float:
    """Dimension-independent Lipschitz constant 4 for the reduced-state map."""
    return 4.0


def avg_cr_pure(n: int) -> float:
    """Average relative entropy of coherence of pure states: H_n - 1."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return math.fsum(1.0 / k for k in range(1, n + 1)) - 1.0


def avg_cr_mixed(n: int) -> float:
    """Average relative entropy of coherence of mixed states: (n - 1)/(2n)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return (n - 1) / (2 * n)


def beta_function(alpha: float, beta: float) -> float:
    """Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("beta function arguments must be positive")
    return math.exp(math.lgamma(alpha) + math.lgamma(beta) - math.lgamma(alpha + beta))
