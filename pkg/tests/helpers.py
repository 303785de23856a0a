"""Shared test utilities: oracles and Monte Carlo drivers."""

from fractions import Fraction
from itertools import combinations

import numpy as np

from sparselms import FilterConfig, MeasurementStream, run_stream


def exhaustive_top_energy(v, s):
    """Brute-force hard threshold for short vectors.

    Enumerates every size-s index set, finds the maximum retained energy
    and keeps the union of all maximizing sets (so entry-level ties are
    resolved exactly like the conservative rule).  Subset energies are
    accumulated in exact rational arithmetic over the same float
    magnitudes the implementation ranks by; float sums would invent ties
    (1.0 + 1e-300 rounds back to 1.0).
    """
    v = np.asarray(v)
    n = v.shape[0]
    energy = [Fraction(float(m)) ** 2 for m in np.abs(v)]
    best = None
    keep = set()
    for subset in combinations(range(n), s):
        e = sum(energy[i] for i in subset)
        if best is None or e > best:
            best = e
            keep = set(subset)
        elif e == best:
            keep |= set(subset)
    out = np.zeros_like(v)
    idx = sorted(keep)
    out[idx] = v[idx]
    return out


def sza_ensemble(
    w_true,
    mu,
    rho,
    noise_std,
    n_runs,
    n_steps,
    tail,
    seed,
    capture_steps=0,
):
    """Vectorized multi-run SZA-LMS with fresh white Gaussian inputs.

    Every step draws an independent standard-normal input vector per run
    (no tap-delay overlap), applies the selective zero-attractor update
    to all runs at once and accumulates tail averages of the estimate and
    of the penalty pattern, both taken on the pre-update state.

    Returns (tail_mean_w, tail_mean_p, hit_fraction, capture) where the
    first two are (n_runs, N) arrays, hit_fraction is the per-run share
    of tail steps whose top-s support matches the true support exactly,
    and capture holds run 0's first ``capture_steps`` inputs, outputs and
    post-update estimates for cross-checking against the scalar stepper.
    """
    w_true = np.asarray(w_true, dtype=float)
    n = w_true.shape[0]
    s = int(np.count_nonzero(w_true))
    sup = np.flatnonzero(w_true)
    off = np.setdiff1d(np.arange(n), sup)
    rng = np.random.default_rng(seed)

    W = np.zeros((n_runs, n))
    sum_w = np.zeros((n_runs, n))
    sum_p = np.zeros((n_runs, n))
    hits = np.zeros(n_runs, dtype=int)
    tail_start = n_steps - tail
    cap_x, cap_y, cap_w = [], [], []

    for step_idx in range(n_steps):
        X = rng.standard_normal((n_runs, n))
        v = noise_std * rng.standard_normal(n_runs)
        y = X @ w_true + v
        e = y - np.einsum("ij,ij->i", X, W)
        mags = np.abs(W)
        cut = np.partition(mags, n - s, axis=1)[:, n - s][:, None]
        penalty = np.sign(W)
        penalty[mags >= cut] = 0.0
        if step_idx >= tail_start:
            sum_w += W
            sum_p += penalty
            hits += np.min(mags[:, sup], axis=1) > np.max(mags[:, off], axis=1)
        W = W + mu * e[:, None] * X - rho * penalty
        if step_idx < capture_steps:
            cap_x.append(X[0].copy())
            cap_y.append(float(y[0]))
            cap_w.append(W[0].copy())

    capture = (np.array(cap_x), np.array(cap_y), np.array(cap_w)) if capture_steps else None
    return sum_w / tail, sum_p / tail, hits / tail, capture


def replay_sza_run(w_true, mu, rho, cap_x, cap_y):
    """Run the scalar SZA stepper over a captured input/output sequence."""
    n = len(w_true)
    s = int(np.count_nonzero(w_true))
    cfg = FilterConfig("sza_lms", n_taps=n, mu=mu, rho=rho, sparsity=s)
    stream = MeasurementStream(np.asarray(cap_x), np.asarray(cap_y), np.asarray(w_true))
    records = run_stream(cfg, stream, snapshot_every=1)
    return np.stack([r.estimate_snapshot for r in records])
