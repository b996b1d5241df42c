"""Named verification suites behind the ``verify`` command.

The oracle suite pits every closed form against an independent evaluation
route; the invariant suite exercises the coherence measures on random states.
All randomness derives deterministically from the given seed, with a distinct
sub-seed per check so no two checks share a stream.
"""

import math
from dataclasses import dataclass
from zlib import crc32

import numpy as np
from scipy.stats import ks_2samp

from . import closed_forms, oracles
from .coherence import skew_coherence, skew_coherence_pure, skew_information
from .estimators import _mixed_task, estimate_average
from .linalg import hermitian_part, partial_trace_b, swap_operator
from .sampling import (RngStream, _splitmix64, haar_pure_batch,
                       haar_unitary_batch, hs_mixed_batch)

SUITES = ("oracles", "invariants", "all")

_DIMS = (2, 3, 4, 8)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _subseed(seed: int, label: str) -> int:
    # Stable per-check seed; hash() is process-salted so crc32 is used instead.
    return _splitmix64(seed ^ crc32(label.encode()))


def _stream(seed, label, index=0):
    return RngStream(_subseed(seed, label), index)


def _basis_projector(k, n):
    p = np.zeros((n, n), dtype=complex)
    p[k, k] = 1.0
    return p


# ---------------------------------------------------------------------------
# oracle checks


def check_quadrature_exactness():
    worst = 0.0
    # small rule: every exact monomial degree directly
    rule = oracles.gauss_laguerre_rule(0.5, 8)
    for j in range(16):
        approx = float((rule.weights * rule.nodes**j).sum())
        exact = math.exp(math.lgamma(0.5 + j + 1.0))
        worst = max(worst, abs(approx - exact) / exact)
    # large rule: highest exact degrees, evaluated in log space since both the
    # monomial values and the target Gamma(q + j + 1) overflow a double
    big = oracles.gauss_laguerre_rule(0.5, 130)
    log_w = np.log(big.weights)
    for j in (200, 259):
        terms = np.exp(log_w + j * np.log(big.nodes) - math.lgamma(0.5 + j + 1.0))
        worst = max(worst, abs(float(terms.sum()) - 1.0))
    return CheckResult("gauss-laguerre exactness (alpha=1/2)", worst < 1e-12,
                       f"worst relative moment error {worst:.2e} (tol 1e-12)")


def check_orthogonality():
    eye = np.eye(7)
    gap_series = float(np.abs(closed_forms.moment_table(7, 0.0).values - eye).max())
    gap_quad = float(np.abs(oracles.quadrature_moment_table(7, 0.0).values - eye).max())
    worst = max(gap_series, gap_quad)
    return CheckResult("laguerre orthogonality (q=0, degrees <= 6)", worst < 1e-10,
                       f"max deviation from identity {worst:.2e} (tol 1e-10)")


def check_moment_routes():
    series = closed_forms.moment_table(128, 0.5)
    quad = oracles.quadrature_moment_table(128, 0.5)
    gap = float(np.abs(series.values - quad.values).max())
    return CheckResult("moment table series vs quadrature (q=1/2, degrees <= 127)",
                       gap <= closed_forms.MOMENT_GATE,
                       f"max |series - quadrature| = {gap:.2e} (gate 1e-09)")


def check_moment_values():
    targets = {(0, 0): math.sqrt(math.pi) / 2,
               (0, 1): -math.sqrt(math.pi) / 4,
               (1, 1): 7 * math.sqrt(math.pi) / 8}
    worst = 0.0
    for (k, l), exact in targets.items():
        worst = max(worst, abs(closed_forms.laguerre_moment(k, l, 0.5) - exact))
        worst = max(worst, abs(oracles.laguerre_moment_quadrature(k, l, 0.5) - exact))
    return CheckResult("low-order q=1/2 moments vs exact values", worst < 1e-12,
                       f"worst absolute error {worst:.2e} (tol 1e-12)")


def check_vandermonde_mc(seed):
    failures = []
    est2 = oracles.vandermonde_sqrt_integral_mc(2, 10**6, _stream(seed, "vandermonde-2"))
    target = 3 * math.pi / 4
    z_moment = abs(est2.mean - target) / est2.stderr
    z_closed = abs(est2.mean - closed_forms.vandermonde_sqrt_integral(2)) / est2.stderr
    if max(z_moment, z_closed) > 4:
        failures.append(f"n=2 off by {max(z_moment, z_closed):.1f} sigma")
    est3 = oracles.vandermonde_sqrt_integral_mc(3, 10**7, _stream(seed, "vandermonde-3"))
    z3 = abs(est3.mean - closed_forms.vandermonde_sqrt_integral(3)) / est3.stderr
    if z3 > 4:
        failures.append(f"n=3 off by {z3:.1f} sigma")
    detail = (f"n=2: {est2.mean:.4f} vs 3pi/4 = {target:.4f} ({z_moment:.1f} sigma); "
              f"n=3: {est3.mean:.2f} vs closed form ({z3:.1f} sigma)")
    return CheckResult("exp-weighted Vandermonde integral, MC vs closed form",
                       not failures, detail if not failures else "; ".join(failures))


def check_twirl_fixed_points():
    ok = True
    for n in (2, 3):
        eye = np.eye(n * n, dtype=complex)
        f = swap_operator(n).astype(complex)
        ok &= np.array_equal(oracles.twofold_twirl(eye, n), eye)
        ok &= np.array_equal(oracles.twofold_twirl(f, n), f)
    return CheckResult("twirl closed form fixes identity and swap exactly", ok,
                       "bit-exact fixed points" if ok else "fixed point violated")


def check_twirl_mc(seed):
    samples = 10**5
    worst = 0.0
    for n in (2, 3):
        rng = _stream(seed, f"twirl-{n}")
        for rep in range(5):
            g = rng.complex_normal((n * n) ** 2).reshape(n * n, n * n)
            a = hermitian_part(g)
            limit = 5 * float(np.linalg.norm(a)) / math.sqrt(samples)
            emp = oracles.twofold_twirl_mc(a, n, samples, rng)
            gap = float(np.abs(emp - oracles.twofold_twirl(a, n)).max())
            worst = max(worst, gap / limit)
    return CheckResult("twirl MC vs closed form (N=2,3; 5 matrices each)", worst < 1.0,
                       f"worst entrywise error at {worst:.2f} of the 5/sqrt(S) budget")


def check_spectral_average(seed):
    failures = []
    details = []
    for n, exact in ((2, 1 + 3 * math.pi / 16), (3, None)):
        est = oracles.trace_sqrt_squared_mc(n, 10**6, _stream(seed, f"spectral-{n}"))
        closed = closed_forms.trace_sqrt_squared_average(n)
        z = abs(est.mean - closed) / est.stderr
        details.append(f"n={n}: {est.mean:.5f} vs {closed:.5f} ({z:.1f} sigma)")
        if z > 4:
            failures.append(f"n={n} off by {z:.1f} sigma")
        if exact is not None and abs(closed - exact) > 1e-12:
            failures.append(f"n={n} closed form differs from 1 + 3pi/16")
    return CheckResult("spectral average of (Tr sqrt(rho))^2, MC vs closed form",
                       not failures, "; ".join(details if not failures else failures))


# ---------------------------------------------------------------------------
# invariant checks


def check_range(seed):
    worst_low, worst_high = 0.0, 0.0
    for n in _DIMS:
        values = _mixed_task(n, "skew")(_stream(seed, f"range-{n}"), 10**4)
        worst_low = min(worst_low, float(values.min()))
        worst_high = max(worst_high, float((values - (1 - 1 / n)).max()))
    ok = worst_low >= -1e-10 and worst_high <= 1e-10
    return CheckResult("coherence range [0, 1 - 1/N] (10^4 mixed states per N)", ok,
                       f"min {worst_low:.1e}, max excess {worst_high:.1e} (slack 1e-10)")


def check_projector_sum(seed):
    worst = 0.0
    for n in _DIMS:
        rng = _stream(seed, f"projsum-{n}")
        projectors = [_basis_projector(k, n) for k in range(n)]
        for rho in hs_mixed_batch(rng, n, 1000):
            rho = hermitian_part(rho)
            total = math.fsum(skew_information(rho, p) for p in projectors)
            worst = max(worst, abs(total - skew_coherence(rho)))
    return CheckResult("projector-sum form equals diagonal form (10^3 states per N)",
                       worst < 1e-10, f"max |difference| {worst:.2e} (tol 1e-10)")


def check_pure_mixed_consistency(seed):
    worst = 0.0
    for n in _DIMS:
        for psi in haar_pure_batch(_stream(seed, f"purecons-{n}"), n, 1000):
            rho = hermitian_part(np.outer(psi, psi.conj()))
            worst = max(worst, abs(skew_coherence_pure(psi) - skew_coherence(rho)))
    return CheckResult("pure-state formula vs density-matrix formula (10^3 per N)",
                       worst < 1e-12, f"max |difference| {worst:.2e} (tol 1e-12)")


def check_lipschitz_pure(seed):
    worst = 0.0
    for n in _DIMS:
        rng = _stream(seed, f"lippure-{n}")
        psi = haar_pure_batch(rng, n, 10**4)
        phi = haar_pure_batch(rng, n, 10**4)
        p, q = np.abs(psi) ** 2, np.abs(phi) ** 2
        delta = np.abs((1 - (p * p).sum(axis=1)) - (1 - (q * q).sum(axis=1)))
        allowed = (4.0 / n) * np.linalg.norm(psi - phi, axis=1) + 1e-12
        worst = max(worst, float((delta - allowed).max()))
    return CheckResult("pure-state Lipschitz bound, slope 4/N (10^4 random pairs per N)",
                       worst <= 0.0, f"max violation {worst:.2e}")


def check_lipschitz_bipartite(seed):
    worst = 0.0
    for n in (2, 3):
        rng = _stream(seed, f"lipmix-{n}")
        psi = haar_pure_batch(rng, n * n, 1000)
        phi = haar_pure_batch(rng, n * n, 1000)
        dist = np.linalg.norm(psi - phi, axis=1)
        p, q = np.abs(psi) ** 2, np.abs(phi) ** 2
        full = np.abs((p * p).sum(axis=1) - (q * q).sum(axis=1))
        worst = max(worst, float((full - 4.0 * dist - 1e-10).max()))
        for k in range(psi.shape[0]):
            rho = partial_trace_b(np.outer(psi[k], psi[k].conj()), n, n)
            sigma = partial_trace_b(np.outer(phi[k], phi[k].conj()), n, n)
            reduced = abs(skew_coherence(hermitian_part(rho))
                          - skew_coherence(hermitian_part(sigma)))
            worst = max(worst, reduced - 4.0 * dist[k] - 1e-10)
    return CheckResult("bipartite Lipschitz bound, slope 4 (10^3 pairs, N=2,3)",
                       worst <= 0.0, f"max violation {worst:.2e}")


def check_polygamy(seed):
    worst = -1.0
    for n in (2, 3):
        for psi in haar_pure_batch(_stream(seed, f"polygamy-{n}"), n * n, 1000):
            projector = np.outer(psi, psi.conj())
            rho_a = hermitian_part(partial_trace_b(projector, n, n))
            rho_b = hermitian_part(
                np.einsum("kakb->ab", projector.reshape(n, n, n, n)))
            lhs = 1.0 - skew_coherence_pure(psi)
            rhs = (1.0 - skew_coherence(rho_a)) * (1.0 - skew_coherence(rho_b))
            worst = max(worst, lhs - rhs)
    return CheckResult("polygamy inequality on bipartite pure states (10^3, N=2,3)",
                       worst <= 1e-10, f"max violation {worst:.2e} (slack 1e-10)")


def check_convexity(seed):
    worst = -1.0
    for n in (2, 3, 4):
        rng = _stream(seed, f"convex-{n}")
        rhos = hs_mixed_batch(rng, n, 1000)
        sigmas = hs_mixed_batch(rng, n, 1000)
        for rho, sigma in zip(rhos, sigmas):
            c_rho = skew_coherence(hermitian_part(rho))
            c_sigma = skew_coherence(hermitian_part(sigma))
            for p in (0.25, 0.5, 0.75):
                mix = skew_coherence(hermitian_part(p * rho + (1 - p) * sigma))
                worst = max(worst, mix - p * c_rho - (1 - p) * c_sigma)
    return CheckResult("convexity spot checks (10^3 pairs, p in {1/4, 1/2, 3/4})",
                       worst <= 1e-10, f"max violation {worst:.2e} (slack 1e-10)")


def check_extremes(seed):
    worst = 0.0
    for n in _DIMS:
        rng = _stream(seed, f"extremes-{n}")
        phases = np.exp(2j * np.pi * rng.uniform(1000 * n).reshape(1000, n))
        for row in phases / math.sqrt(n):
            worst = max(worst, abs(skew_coherence_pure(row) - (1 - 1 / n)))
        weights = rng.exponential(1000 * n).reshape(1000, n)
        weights /= weights.sum(axis=1, keepdims=True)
        for w in weights:
            worst = max(worst, abs(skew_coherence(np.diag(w.astype(complex)))))
    return CheckResult("maximally coherent and diagonal extremes (10^3 per N)",
                       worst < 1e-12, f"max deviation {worst:.2e} (tol 1e-12)")


def check_haar_invariance(seed):
    failures = []
    for n in (2, 4):
        rotation = haar_unitary_batch(_stream(seed, f"haarinv-rot-{n}"), n, 1)[0]
        plain = haar_pure_batch(_stream(seed, f"haarinv-a-{n}"), n, 10**4)
        rotated = haar_pure_batch(_stream(seed, f"haarinv-b-{n}"), n, 10**4) @ rotation.T
        values_plain = 1 - (np.abs(plain) ** 4).sum(axis=1)
        values_rot = 1 - (np.abs(rotated) ** 4).sum(axis=1)
        gap = abs(values_plain.mean() - values_rot.mean())
        combined = math.hypot(values_plain.std(ddof=1), values_rot.std(ddof=1)) / 100.0
        if gap > 4 * combined:
            failures.append(f"N={n} means differ by {gap / combined:.1f} sigma")
    return CheckResult("Haar invariance of the coherence distribution (10^4, N=2,4)",
                       not failures, "; ".join(failures) or "means agree within 4 sigma")


def check_sampler_consistency(seed):
    worst_ks, worst_route = 0.0, 0.0
    for n in (2, 3):
        direct = _mixed_task(n, "skew")(_stream(seed, f"cons-direct-{n}"), 10**4)
        psi = haar_pure_batch(_stream(seed, f"cons-bipartite-{n}"), n * n, 10**4)
        amp = psi.reshape(-1, n, n)
        gram = amp @ np.conj(np.swapaxes(amp, 1, 2))
        gram = (gram + np.conj(np.swapaxes(gram, 1, 2))) / 2
        # the batched Gram matrices must be the partial trace, entry for entry
        for k in range(200):
            reduced = partial_trace_b(np.outer(psi[k], psi[k].conj()), n, n)
            worst_route = max(worst_route, float(np.abs(reduced - gram[k]).max()))
        w, v = np.linalg.eigh(gram)
        root = np.sqrt(np.clip(w, 0.0, None))
        diag = np.einsum("bka,ba->bk", np.abs(v) ** 2, root)
        routed = 1.0 - (diag * diag).sum(axis=1)
        worst_ks = max(worst_ks, float(ks_2samp(direct, routed).statistic))
    return CheckResult("Gram sampler vs bipartite partial-trace route (KS, 10^4, N=2,3)",
                       worst_ks < 0.02 and worst_route < 1e-14,
                       f"max KS distance {worst_ks:.4f} (tol 0.02); "
                       f"partial-trace mismatch {worst_route:.1e}")


def check_mean_agreement(seed):
    failures = []
    for ensemble, analytic in (("pure", closed_forms.avg_coherence_pure),
                               ("mixed", closed_forms.avg_coherence_mixed)):
        for n in (2, 4):
            est = estimate_average(ensemble, n, 2 * 10**4,
                                   _subseed(seed, f"agree-{ensemble}-{n}"))
            z = abs(est.mean - analytic(n)) / est.stderr
            if z > 4:
                failures.append(f"{ensemble} N={n} off by {z:.1f} sigma")
    return CheckResult("MC ensemble means vs closed forms (2x10^4 samples)",
                       not failures, "; ".join(failures) or "all within 4 sigma")


def oracle_checks(seed: int):
    return [
        check_quadrature_exactness(),
        check_orthogonality(),
        check_moment_routes(),
        check_moment_values(),
        check_vandermonde_mc(seed),
        check_twirl_fixed_points(),
        check_twirl_mc(seed),
        check_spectral_average(seed),
    ]


def invariant_checks(seed: int):
    return [
        check_range(seed),
        check_projector_sum(seed),
        check_pure_mixed_consistency(seed),
        check_lipschitz_pure(seed),
        check_lipschitz_bipartite(seed),
        check_polygamy(seed),
        check_convexity(seed),
        check_extremes(seed),
        check_haar_invariance(seed),
        check_sampler_consistency(seed),
        check_mean_agreement(seed),
    ]


def run_suite(suite: str, seed: int):
    """Run one of the named suites; returns the list of CheckResults."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    results = []
    if suite in ("oracles", "all"):
        results.extend(oracle_checks(seed))
    if suite in ("invariants", "all"):
        results.extend(invariant_checks(seed))
    return results
