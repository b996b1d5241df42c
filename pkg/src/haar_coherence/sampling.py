"""Reproducible sampling of Haar pure states, Haar unitaries and
Hilbert-Schmidt distributed mixed states.

Every sample is a pure function of (master_seed, stream_index, call sequence).
Distinct stream indices give statistically independent streams, so parallel
estimators assign one stream per work chunk and stay bit-reproducible for any
worker count.
"""

import numpy as np

from .linalg import hermitian_part

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    # Standard splitmix64 finalizer: full avalanche of one 64-bit word.
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class RngStream:
    """Counter-based random stream: Philox keyed by a splitmix64 avalanche mix
    of (master_seed, stream_index).

    Uniform doubles come straight from the raw 64-bit Philox output, and
    Gaussians use the polar Box-Muller transform (radius from the first
    uniform block, phase from the second). Both choices are fixed because
    they determine the bit-level output.

    A stream must not be shared between concurrent workers; create one stream
    per chunk instead.
    """

    def __init__(self, master_seed: int, stream_index: int = 0):
        self.master_seed = int(master_seed) & _MASK64
        self.stream_index = int(stream_index) & _MASK64
        k0 = _splitmix64(_splitmix64(self.master_seed) ^ self.stream_index)
        k1 = _splitmix64(k0)
        self._bits = np.random.Philox(key=np.array([k0, k1], dtype=np.uint64))

    def uniform(self, n: int) -> np.ndarray:
        """n doubles uniform on [0, 1)."""
        raw = self._bits.random_raw(n)
        return (raw >> np.uint64(11)) * 2.0 ** -53

    def complex_normal(self, n: int) -> np.ndarray:
        """n iid standard complex normals, E|z|^2 = 1 (Re/Im variance 1/2 each)."""
        u1 = self.uniform(n)
        u2 = self.uniform(n)
        radius = np.sqrt(-np.log1p(-u1))
        return radius * np.exp(2j * np.pi * u2)

    def exponential(self, n: int) -> np.ndarray:
        """n iid Exponential(1) variates by inverse transform."""
        return -np.log1p(-self.uniform(n))


def _require_dim(n):
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")


def haar_pure_batch(rng: RngStream, n: int, count: int) -> np.ndarray:
    """(count, n) array of Haar-random pure states (normalized Gaussian vectors)."""
    _require_dim(n)
    z = rng.complex_normal(count * n).reshape(count, n)
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_unitary_batch(rng: RngStream, n: int, count: int) -> np.ndarray:
    """(count, n, n) array of Haar-random unitaries.

    QR of a Gaussian matrix with each column of Q divided by the phase of the
    corresponding R diagonal entry; plain QR alone is not Haar distributed.
    """
    _require_dim(n)
    g = rng.complex_normal(count * n * n).reshape(count, n, n)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d.conj() / np.abs(d))[:, None, :]


def hs_mixed_batch(rng: RngStream, n: int, count: int) -> np.ndarray:
    """(count, n, n) array of Hilbert-Schmidt random density matrices.

    Gram construction G G† / Tr(G G†) with G an n x n complex Gaussian matrix,
    which is distributed exactly as the partial trace of a Haar bipartite pure
    state on an n*n product space.
    """
    _require_dim(n)
    g = rng.complex_normal(count * n * n).reshape(count, n, n)
    w = g @ np.conj(np.swapaxes(g, 1, 2))
    w = (w + np.conj(np.swapaxes(w, 1, 2))) / 2
    trace = np.einsum("bii->b", w).real
    return w / trace[:, None, None]


def sample_gaussian_complex(rng: RngStream, n: int) -> np.ndarray:
    """Vector of n iid standard complex normals."""
    _require_dim(n)
    return rng.complex_normal(n)


def sample_haar_pure(rng: RngStream, n: int) -> np.ndarray:
    """One Haar-random pure state of dimension n."""
    return haar_pure_batch(rng, n, 1)[0]


def sample_haar_unitary(rng: RngStream, n: int) -> np.ndarray:
    """One Haar-random n x n unitary."""
    return haar_unitary_batch(rng, n, 1)[0]


def sample_hs_mixed(rng: RngStream, n: int) -> np.ndarray:
    """One Hilbert-Schmidt random density matrix of dimension n."""
    return hermitian_part(hs_mixed_batch(rng, n, 1)[0])


def sample_bipartite_pure(rng: RngStream, n: int) -> np.ndarray:
    """One Haar-random pure state on the n*n bipartite product space."""
    return sample_haar_pure(rng, n * n)
