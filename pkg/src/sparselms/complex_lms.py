"""Complex-valued LMS and hard-threshold LMS.

The inner product convention is ``w^H x`` (conjugation on the estimate),
and the update adds ``mu * conj(e) * x``.  Observation generators must
produce ``y`` with the same convention; see :mod:`sparselms.signals` for
the partial-DFT measurement model that does.  All-real streams reproduce
the real LMS trajectory exactly.
"""

import numpy as np

from .thresholding import hard_threshold

__all__ = [
    "complex_lms_step",
    "complex_hard_lms_step",
    "run_complex_stream",
    "step_size_from_stream",
]


def complex_lms_step(w, x, y, mu):
    """One complex LMS update.

    Returns ``(new_estimate, error)`` with ``error = y - w^H x`` computed
    on the estimate before the update.
    """
    x = np.asarray(x)
    if x.shape[0] != w.shape[0]:
        raise ValueError(f"input length {x.shape[0]} does not match estimate length {w.shape[0]}")
    err = complex(y) - complex(np.vdot(w, x))
    new = w + mu * (err.conjugate() * x)
    return new, err


def complex_hard_lms_step(w, x, y, mu, s):
    """Complex LMS update followed by a magnitude-ranked hard threshold."""
    new, err = complex_lms_step(w, x, y, mu)
    return hard_threshold(new, s), err


def step_size_from_stream(stream, rtol=1e-9):
    """Step size 1/||x||^2 from the first input row of a stream.

    The squared norm must be constant across the whole stream (relative
    tolerance ``rtol``); rows of an undersampled DFT matrix satisfy this
    by construction.
    """
    inputs = np.asarray(stream.inputs)
    norms = np.sum(np.abs(inputs) ** 2, axis=1)
    first = norms[0]
    if first <= 0:
        raise ValueError("first input row has zero norm")
    if np.max(np.abs(norms - first)) > rtol * first:
        raise ValueError(f"input row norms vary by more than rtol={rtol}")
    return 1.0 / float(first)


def run_complex_stream(stream, mu, sparsity=None, warmup_steps=0, initial=None):
    """Run complex (hard-threshold) LMS over a stream from w(0) = 0.

    Parameters
    ----------
    stream: iterable of (x, y) pairs, complex inputs
    mu: float
        step size
    sparsity: int, optional
        when given, apply a hard threshold of this size after each update
    warmup_steps: int
        number of initial updates that skip the threshold
    initial: ndarray, optional
        starting estimate; defaults to the zero vector

    Returns
    -------
    (estimate, errors): final complex estimate and the per-step a-priori
    errors as a complex ndarray.
    """
    it = iter(stream)
    errors = []
    w = initial
    n = 0
    for x, y in it:
        if w is None:
            w = np.zeros(np.asarray(x).shape[0], dtype=complex)
        if sparsity is not None and n >= warmup_steps:
            w, err = complex_hard_lms_step(w, x, y, mu, sparsity)
        else:
            w, err = complex_lms_step(w, x, y, mu)
        errors.append(err)
        n += 1
    if w is None:
        w = np.zeros(0, dtype=complex)
    return w, np.asarray(errors, dtype=complex)
