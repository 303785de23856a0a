"""Real-valued LMS family with a uniform step interface.

Seven variants share the signature ``*_step(state, x, y, cfg) ->
(new_state, record)``: plain LMS, the zero-attracting pair (uniform and
reweighted), a selective zero-attractor that spares the current top-``s``
support, and three hard-threshold variants (immediate, warm-started and
relaxed).  States are treated as immutable; each step returns a fresh
estimate, so independent filters can run on concurrent workers.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .thresholding import hard_threshold, penalty_mask

__all__ = [
    "Algorithm",
    "FilterConfig",
    "FilterState",
    "StepRecord",
    "lms_step",
    "za_lms_step",
    "rza_lms_step",
    "sza_lms_step",
    "hard_lms_step",
    "step",
    "run_stream",
]


class Algorithm(str, Enum):
    LMS = "lms"
    ZA_LMS = "za_lms"
    RZA_LMS = "rza_lms"
    SZA_LMS = "sza_lms"
    HARD_LMS = "hard_lms"
    HARD_INIT_LMS = "hard_init_lms"
    HARD_REL_LMS = "hard_rel_lms"


_NEEDS_SPARSITY = {
    Algorithm.SZA_LMS,
    Algorithm.HARD_LMS,
    Algorithm.HARD_INIT_LMS,
}


@dataclass
class FilterConfig:
    """Algorithm selection plus every tuning constant the variants use.

    Fields irrelevant to the chosen algorithm are ignored by the step
    functions but still validated when set.

    Parameters
    ----------
    algorithm: Algorithm or str
    n_taps: int
        filter length N
    mu: float
        gradient step size, > 0
    rho: float
        zero-attractor strength for the ZA/RZA/SZA variants
    epsilon: float
        reweighting constant of RZA
    sparsity: int
        target number of nonzeros s, ``1 <= s < n_taps``
    relaxed_sparsity: int
        relaxed keep-count d for the relaxed hard-threshold variant,
        ``sparsity <= d < n_taps``
    warmup_steps: int
        updates to run without thresholding (warm-started variant only)
    label: str
        name used in experiment outputs; defaults to the algorithm name
    """

    algorithm: Algorithm
    n_taps: int
    mu: float
    rho: float = 0.0
    epsilon: float = 10.0
    sparsity: int | None = None
    relaxed_sparsity: int | None = None
    warmup_steps: int = 0
    label: str = ""

    def __post_init__(self):
        self.algorithm = Algorithm(self.algorithm)
        if self.n_taps < 1:
            raise ValueError(f"n_taps must be positive, got {self.n_taps}")
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.rho < 0:
            raise ValueError(f"rho must be non-negative, got {self.rho}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.warmup_steps < 0:
            raise ValueError(f"warmup_steps must be non-negative, got {self.warmup_steps}")
        if self.sparsity is not None and not 1 <= self.sparsity < self.n_taps:
            raise ValueError(
                f"sparsity must satisfy 1 <= sparsity < n_taps, got {self.sparsity}"
            )
        if self.relaxed_sparsity is not None:
            lo = self.sparsity if self.sparsity is not None else 1
            if not lo <= self.relaxed_sparsity < self.n_taps:
                raise ValueError(
                    "relaxed_sparsity must satisfy "
                    f"sparsity <= relaxed_sparsity < n_taps, got {self.relaxed_sparsity}"
                )
        if self.algorithm in _NEEDS_SPARSITY and self.sparsity is None:
            raise ValueError(f"sparsity is required for {self.algorithm.value}")
        if self.algorithm is Algorithm.HARD_REL_LMS and self.relaxed_sparsity is None:
            raise ValueError("relaxed_sparsity is required for hard_rel_lms")
        if not self.label:
            self.label = self.algorithm.value


@dataclass
class FilterState:
    """Current estimate plus the number of updates applied so far."""

    estimate: np.ndarray
    iteration: int = 0

    @classmethod
    def initial(cls, n_taps, dtype=float):
        return cls(np.zeros(n_taps, dtype=dtype), 0)


@dataclass
class StepRecord:
    """A-priori error of one update, optionally with the new estimate."""

    error: float
    estimate_snapshot: np.ndarray | None = None


def _checked_error(state, x, y, cfg):
    x = np.asarray(x, dtype=float)
    if x.shape[0] != cfg.n_taps:
        raise ValueError(f"input length {x.shape[0]} does not match n_taps {cfg.n_taps}")
    return x, float(y) - float(np.dot(state.estimate, x))


def lms_step(state, x, y, cfg):
    """Plain stochastic-gradient update ``w + mu * e * x``."""
    x, err = _checked_error(state, x, y, cfg)
    new = state.estimate + cfg.mu * (err * x)
    return FilterState(new, state.iteration + 1), StepRecord(err)


def za_lms_step(state, x, y, cfg):
    """LMS update followed by a uniform sign shrink of strength rho."""
    x, err = _checked_error(state, x, y, cfg)
    new = state.estimate + cfg.mu * (err * x) - cfg.rho * np.sign(state.estimate)
    return FilterState(new, state.iteration + 1), StepRecord(err)


def rza_lms_step(state, x, y, cfg):
    """LMS update with the shrink reweighted by 1/(1 + epsilon*|w|).

    Large coefficients are penalized less, small ones by nearly the full
    rho, so established taps keep most of their value.
    """
    x, err = _checked_error(state, x, y, cfg)
    w = state.estimate
    attractor = np.sign(w) / (1.0 + cfg.epsilon * np.abs(w))
    new = w + cfg.mu * (err * x) - cfg.rho * attractor
    return FilterState(new, state.iteration + 1), StepRecord(err)


def sza_lms_step(state, x, y, cfg):
    """LMS update that shrinks only outside the current top-s support.

    The penalty pattern is computed on the estimate *before* the gradient
    step, so the set of spared coefficients depends on w(n), not on the
    intermediate update.
    """
    x, err = _checked_error(state, x, y, cfg)
    w = state.estimate
    u = w + cfg.mu * (err * x)
    new = u - cfg.rho * penalty_mask(w, cfg.sparsity)
    return FilterState(new, state.iteration + 1), StepRecord(err)


def hard_lms_step(state, x, y, cfg):
    """LMS update followed by a hard threshold.

    Covers three variants: the immediate one thresholds to ``sparsity``
    from the first update, the warm-started one skips thresholding for
    the first ``warmup_steps`` updates, and the relaxed one thresholds to
    ``relaxed_sparsity`` instead.
    """
    x, err = _checked_error(state, x, y, cfg)
    u = state.estimate + cfg.mu * (err * x)
    if cfg.algorithm is Algorithm.HARD_REL_LMS:
        keep = cfg.relaxed_sparsity
    else:
        keep = cfg.sparsity
    if cfg.algorithm is Algorithm.HARD_INIT_LMS and state.iteration < cfg.warmup_steps:
        new = u
    else:
        new = hard_threshold(u, keep)
    return FilterState(new, state.iteration + 1), StepRecord(err)


_STEP_FNS = {
    Algorithm.LMS: lms_step,
    Algorithm.ZA_LMS: za_lms_step,
    Algorithm.RZA_LMS: rza_lms_step,
    Algorithm.SZA_LMS: sza_lms_step,
    Algorithm.HARD_LMS: hard_lms_step,
    Algorithm.HARD_INIT_LMS: hard_lms_step,
    Algorithm.HARD_REL_LMS: hard_lms_step,
}


def step(state, x, y, cfg):
    """Apply one update of the algorithm selected by ``cfg``."""
    return _STEP_FNS[cfg.algorithm](state, x, y, cfg)


def run_stream(cfg, stream, snapshot_every=None):
    """Run the configured filter over a measurement stream from w(0) = 0.

    Parameters
    ----------
    cfg: FilterConfig
    stream: iterable of (x, y) pairs
        every x must have length ``cfg.n_taps``
    snapshot_every: int, optional
        store the post-update estimate in every record whose iteration is
        a multiple of this cadence; None disables snapshots

    Returns
    -------
    list of StepRecord, one per stream element.  Errors are recorded for
    every step regardless of the snapshot cadence.
    """
    if snapshot_every is not None and snapshot_every < 1:
        raise ValueError(f"snapshot_every must be a positive integer, got {snapshot_every}")
    step_fn = _STEP_FNS[cfg.algorithm]
    state = FilterState.initial(cfg.n_taps)
    records = []
    for x, y in stream:
        state, rec = step_fn(state, x, y, cfg)
        if snapshot_every is not None and state.iteration % snapshot_every == 0:
            # estimates are never mutated in place, safe to share
            rec.estimate_snapshot = state.estimate
        records.append(rec)
    return records
