"""Hard threshold and selective penalty operators.

The hard threshold operator keeps the entries with the largest absolute
values (magnitudes, for complex input) and zeroes the rest; the penalty
operator emits the sign pattern of everything the threshold would discard.
Both are pure functions shared by every adaptive filter in this package.
"""

import numpy as np

__all__ = ["support", "hard_threshold", "penalty_mask"]


def support(v):
    """Indices of the nonzero entries of ``v``, in increasing order."""
    return np.flatnonzero(np.asarray(v))


def hard_threshold(v, s):
    """Keep the ``s`` largest-magnitude entries of ``v``, zero the rest.

    Entries are ranked by absolute value (magnitude for complex input) and
    an entry survives exactly when its magnitude is >= the s-th largest.
    Ties at the cut are resolved conservatively: every tying entry is
    retained, so the output can have more than ``s`` nonzeros when exact
    (bitwise-equal) magnitude ties occur.  When ``v`` has fewer than ``s``
    nonzeros the cut is zero and the output equals the input.

    Parameters
    ----------
    v: array_like
        dense 1-D vector, real or complex
    s: int
        number of entries to keep, ``1 <= s <= len(v)``; ``s == len(v)``
        is accepted and returns a copy of the input

    Returns
    -------
    ndarray with the same shape and dtype as ``v``, dropped entries set
    to zero.
    """
    v = np.asarray(v)
    n = v.shape[0]
    if not 1 <= s <= n:
        raise ValueError(f"s must satisfy 1 <= s <= {n}, got {s}")
    if s == n:
        return v.copy()
    mags = np.abs(v)
    cut = np.partition(mags, n - s)[n - s]
    out = v.copy()
    out[mags < cut] = 0
    return out


def penalty_mask(v, s):
    """Sign pattern of the entries outside the top-``s`` support of ``v``.

    Entry ``i`` is 0 when ``i`` lies in ``support(hard_threshold(v, s))``
    and ``sgn(v_i)`` otherwise, with ``sgn(0) = 0``.  The conservative tie
    rule of :func:`hard_threshold` carries over, so all tying entries are
    spared the penalty.

    Requires ``1 <= s < len(v)``: keeping nothing would penalize even the
    largest entry, and keeping everything leaves nothing to penalize.
    """
    v = np.asarray(v)
    n = v.shape[0]
    if not 1 <= s < n:
        raise ValueError(f"s must satisfy 1 <= s < {n}, got {s}")
    kept = hard_threshold(v, s)
    out = np.sign(v)
    out[kept != 0] = 0
    return out
