"""Skew information and coherence measures relative to the computational basis."""

import numpy as np
from scipy.special import xlogy

from .linalg import eig_hermitian, hermitian_part, hs_norm, sqrt_psd

# Round-off slack on the admissible coherence range [0, 1 - 1/N].
_RANGE_SLACK = 1e-10
_DIAG_IMAG_TOL = 1e-12
_UNITARY_TOL = 1e-10


def _as_coherence(value: float, dim: int) -> float:
    upper = 1.0 - 1.0 / dim
    if value < -_RANGE_SLACK or value > upper + _RANGE_SLACK:
        raise ValueError(f"coherence {value!r} outside [0, {upper}] for dimension {dim}")
    return max(value, 0.0)


def sqrt_diagonal(rho) -> np.ndarray:
    """Diagonal <k|sqrt(rho)|k> as a real vector.

    The imaginary parts must vanish (below 1e-12); they are checked rather
    than silently dropped.
    """
    diag = np.diagonal(sqrt_psd(rho))
    if diag.size and np.abs(diag.imag).max() >= _DIAG_IMAG_TOL:
        raise ValueError("sqrt(rho) diagonal has a non-negligible imaginary part")
    return diag.real.copy()


def skew_information(rho, k) -> float:
    """Skew information of a state with respect to an observable.

    Equals Tr(K^2 rho) - Tr(sqrt(rho) K sqrt(rho) K); zero exactly when rho
    and K commute, and the variance of K when rho is pure.
    """
    rho = np.asarray(rho, dtype=complex)
    k = np.asarray(k, dtype=complex)
    if rho.shape != k.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape} vs observable {k.shape}")
    root = sqrt_psd(rho)
    rk = root @ k
    value = float((np.trace(k @ k @ rho) - np.trace(rk @ rk)).real)
    return max(value, 0.0) if value > -_RANGE_SLACK else value


def skew_coherence(rho) -> float:
    """Coherence of a density matrix: 1 - sum_k <k|sqrt(rho)|k>^2.

    Equals the sum of skew informations against all basis projectors and lies
    in [0, 1 - 1/N], with the maximum attained by uniform-amplitude states.
    """
    diag = sqrt_diagonal(rho)
    return _as_coherence(1.0 - float(diag @ diag), diag.size)


def skew_coherence_pure(psi) -> float:
    """Coherence of a pure state: 1 - sum_k |psi_k|^4."""
    psi = np.asarray(psi, dtype=complex).ravel()
    p = np.abs(psi) ** 2
    if abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("state vector is not normalized")
    return _as_coherence(1.0 - float(p @ p), psi.size)


def relative_entropy_coherence(rho) -> float:
    """Relative entropy of coherence S(diag rho) - S(rho), natural log.

    0 log 0 is taken as 0. Zero for diagonal states; for pure states this is
    the Shannon entropy of the basis populations.
    """
    rho = np.asarray(rho, dtype=complex)
    values = eig_hermitian(rho).values
    populations = np.clip(np.diagonal(rho).real, 0.0, None)
    spectrum = np.clip(values, 0.0, None)
    value = float(xlogy(spectrum, spectrum).sum() - xlogy(populations, populations).sum())
    return max(value, 0.0)


def skew_coherence_in_basis(rho, u) -> float:
    """Coherence of rho relative to the basis formed by the columns of u.

    Computes skew_coherence(U† rho U); u must be unitary within 1e-10.
    """
    u = np.asarray(u, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if u.shape != rho.shape:
        raise ValueError(f"dimension mismatch: state {rho.shape} vs basis {u.shape}")
    if hs_norm(u.conj().T @ u - np.eye(u.shape[0])) >= _UNITARY_TOL:
        raise ValueError("basis matrix is not unitary within 1e-10")
    return skew_coherence(hermitian_part(u.conj().T @ rho @ u))
