"""Executable support-recovery guarantees and the batch IHT baseline.

The two support guarantees are implemented as runtime checkers: each one
evaluates its hypothesis on a (true, estimate) pair and, whenever the
hypothesis holds, verifies the promised support relation before
returning.  A verification failure raises, which cannot happen unless the
threshold operator is broken, so the checkers double as regression traps.
"""

from dataclasses import dataclass

import numpy as np

from .thresholding import hard_threshold, support

__all__ = [
    "GUARANTEE_EXACT",
    "GUARANTEE_SUPERSET",
    "GUARANTEE_NONE",
    "RecoveryCertificate",
    "theorem1_condition",
    "theorem2_condition",
    "ser_lower_bound",
    "sza_bias_residual",
    "batch_iht",
]

GUARANTEE_EXACT = "exact_support"
GUARANTEE_SUPERSET = "superset_support"
GUARANTEE_NONE = "none"


@dataclass
class RecoveryCertificate:
    """Outcome of a support-recovery condition check.

    ``q`` is the smallest nonzero magnitude of the true vector,
    ``error_sq`` the squared l2 estimation error, ``s`` the true sparsity
    and ``tau`` the relaxation amount (None for the exact-support check).
    ``guarantee`` names the support relation that is certified when
    ``condition_holds`` is True.
    """

    q: float
    error_sq: float
    s: int
    tau: int | None
    condition_holds: bool
    guarantee: str


def _true_vector_stats(w_true, w_hat):
    w = np.asarray(w_true, dtype=float)
    wh = np.asarray(w_hat, dtype=float)
    if w.shape != wh.shape:
        raise ValueError(f"shape mismatch: {w.shape} vs {wh.shape}")
    sup = support(w)
    if sup.size == 0:
        raise ValueError("true vector must have at least one nonzero entry")
    q = float(np.min(np.abs(w[sup])))
    err_sq = float(np.sum((w - wh) ** 2))
    return w, wh, sup, q, err_sq


def theorem1_condition(w_true, w_hat):
    """Exact-support certificate: error^2 < q^2 / 2.

    When the condition holds the top-s entries of the estimate are
    guaranteed to sit exactly on the true support; this is verified
    before returning.
    """
    w, wh, sup, q, err_sq = _true_vector_stats(w_true, w_hat)
    s = int(sup.size)
    holds = err_sq < 0.5 * q * q
    if holds and not np.array_equal(support(hard_threshold(wh, s)), sup):
        raise RuntimeError("exact-support guarantee violated; threshold operator is broken")
    return RecoveryCertificate(q, err_sq, s, None, holds, GUARANTEE_EXACT if holds else GUARANTEE_NONE)


def theorem2_condition(w_true, w_hat, d):
    """Superset certificate for a relaxed keep-count d = s + tau.

    The hypothesis has two parts: error^2 <= q^2 * (1 - 1/(tau+2)) and
    the estimate itself has at least d nonzeros.  When both hold, the
    top-d support of the estimate is guaranteed to contain the true
    support; this is verified before returning.
    """
    w, wh, sup, q, err_sq = _true_vector_stats(w_true, w_hat)
    s = int(sup.size)
    tau = int(d) - s
    if tau <= 0 or d >= w.shape[0]:
        raise ValueError(f"d must satisfy s < d < len(w), got d={d} with s={s}, len={w.shape[0]}")
    bound = q * q * (1.0 - 1.0 / (tau + 2))
    holds = err_sq <= bound and support(wh).size >= d
    if holds and not np.all(np.isin(sup, support(hard_threshold(wh, d)))):
        raise RuntimeError("superset-support guarantee violated; threshold operator is broken")
    return RecoveryCertificate(q, err_sq, s, tau, holds, GUARANTEE_SUPERSET if holds else GUARANTEE_NONE)


def ser_lower_bound(s, tau=None):
    """Signal-to-error ratio required by the support guarantees.

    Returns ``2 s`` for the exact-support condition and the looser
    ``s / (1 - 1/(tau+2))`` when a relaxation ``tau`` is given.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if tau is None:
        return 2.0 * s
    if tau < 1:
        raise ValueError(f"tau must be >= 1 when given, got {tau}")
    return s / (1.0 - 1.0 / (tau + 2))


def sza_bias_residual(w_true, w_inf_mean, R_x, mu, rho, penalty_mean):
    """Stationarity residual of the selective zero-attractor mean limit.

    Measures how far an averaged estimate sits from the predicted fixed
    point ``w_true - (rho/mu) * R_x^-1 * penalty_mean``.  Returns the l2
    norm of the difference; zero means the averages satisfy the limit
    equation exactly.
    """
    w = np.asarray(w_true, dtype=float)
    w_bar = np.asarray(w_inf_mean, dtype=float)
    p_bar = np.asarray(penalty_mean, dtype=float)
    R = np.asarray(R_x, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] != w.shape[0]:
        raise ValueError(f"R_x must be square of size {w.shape[0]}, got shape {R.shape}")
    if not np.allclose(R, R.T, rtol=1e-10, atol=1e-12):
        raise ValueError("R_x must be symmetric")
    target = w - (rho / mu) * np.linalg.solve(R, p_bar)
    return float(np.linalg.norm(w_bar - target))


def batch_iht(A, y, s, mu, iters, return_history=False):
    """Iterative hard thresholding for the batch model y = A w.

    Starts from the zero vector and iterates
    ``w <- H_s(w + mu * A^H (y - A w))`` for ``iters`` iterations.  Real
    measurement matrices use the plain transpose; complex ones the
    conjugate transpose.

    Residuals and gradients are accumulated row by row, with the scalar
    residual as the left factor of each product, so that the M = 1
    special case performs bit-for-bit the same arithmetic as one
    streaming hard-threshold LMS step.

    Returns the final iterate, or ``(final, history)`` with the list of
    all iterates when ``return_history`` is set.
    """
    A = np.asarray(A)
    y = np.asarray(y)
    if A.ndim != 2:
        raise ValueError(f"A must be 2-D, got ndim {A.ndim}")
    n_meas, n = A.shape
    if y.shape != (n_meas,):
        raise ValueError(f"y must have shape ({n_meas},), got {y.shape}")
    if n_meas < 1:
        raise ValueError("at least one measurement row is required")
    dtype = np.result_type(A.dtype, y.dtype, float)
    rows = [A[m] for m in range(n_meas)]
    conj_rows = [np.conj(A[m]) for m in range(n_meas)]
    w = np.zeros(n, dtype=dtype)
    history = []
    for _ in range(iters):
        grad = (y[0] - np.dot(rows[0], w)) * conj_rows[0]
        for m in range(1, n_meas):
            grad = grad + (y[m] - np.dot(rows[m], w)) * conj_rows[m]
        w = hard_threshold(w + mu * grad, s)
        if return_history:
            history.append(w)
    if return_history:
        return w, history
    return w
