"""Boltzmann-rational choice model and simulated teachers.

A teacher with rationality ``beta`` asked to compare items ``i`` and ``j``
answers ``+1`` ("prefers i") with probability ``sigmoid(beta * w.(phi_i -
phi_j))`` under its true weights ``w``. ``beta = 0`` is a fair coin; larger
``beta`` approaches a perfect maximizer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

__all__ = [
    "PREFERS_I",
    "PREFERS_J",
    "SimulatedTeacherWorld",
    "TeacherPool",
    "check_beta",
    "check_preference",
    "log_preference_prob",
    "preference_prob",
    "reward",
    "sample_preference",
]

PREFERS_I = 1
PREFERS_J = -1

_P_FLOOR = np.nextafter(0.0, 1.0)
_P_CEIL = np.nextafter(1.0, 0.0)


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"rationality beta must be finite and >= 0, got {beta}")
    return beta


def check_preference(preference) -> int:
    value = int(preference)
    if value not in (PREFERS_I, PREFERS_J):
        raise ValueError(f"preference must be +1 or -1, got {preference!r}")
    return value


def reward(w, phi) -> float:
    """Linear reward ``w . phi`` of one item."""
    w = np.asarray(w, dtype=float).reshape(-1)
    phi = np.asarray(phi, dtype=float).reshape(-1)
    if w.shape != phi.shape:
        raise ValueError(f"weights have {w.shape[0]} components, features have {phi.shape[0]}")
    return float(w @ phi)


def log_preference_prob(w, phi_diff, beta: float, preference) -> float:
    """Log probability of the stated preference; stable at any logit magnitude."""
    pref = check_preference(preference)
    beta = check_beta(beta)
    return -float(np.logaddexp(0.0, -pref * beta * reward(w, phi_diff)))


def preference_prob(w, phi_diff, beta: float, preference) -> float:
    """Probability that a ``beta``-rational teacher states ``preference``.

    Returned values are nudged inside the open interval (0, 1) so callers can
    always take logs; the two preference directions still sum to 1 within one
    floating-point ulp.
    """
    pref = check_preference(preference)
    beta = check_beta(beta)
    p = float(expit(pref * beta * reward(w, phi_diff)))
    return min(max(p, _P_FLOOR), _P_CEIL)


def sample_preference(w_true, phi_diff, beta: float, rng: np.random.Generator) -> int:
    """Draw one stochastic answer: ``+1`` with the Boltzmann-rational probability.

    Consumes exactly one uniform draw, so two teachers driven by identically
    seeded generators answer the same question identically whenever their
    choice probabilities straddle the draw the same way.
    """
    p = preference_prob(w_true, phi_diff, beta, PREFERS_I)
    return PREFERS_I if rng.random() < p else PREFERS_J


@dataclass(frozen=True)
class TeacherPool:
    """An ordered roster of teacher rationality values (index = teacher id)."""

    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) == 0:
            raise ValueError("teacher pool is empty")
        object.__setattr__(self, "betas", tuple(check_beta(b) for b in self.betas))

    @classmethod
    def from_linspace(cls, low: float, high: float, count: int) -> "TeacherPool":
        if count < 1:
            raise ValueError(f"pool needs at least one teacher, got {count}")
        return cls(tuple(float(b) for b in np.linspace(low, high, count)))

    def __len__(self) -> int:
        return len(self.betas)

    @property
    def betas_array(self) -> np.ndarray:
        return np.asarray(self.betas, dtype=float)

    @property
    def max_beta(self) -> float:
        return max(self.betas)

    def index_nearest(self, target: float) -> int:
        """Index of the pool entry closest to ``target`` (first wins ties)."""
        return int(np.argmin(np.abs(self.betas_array - target)))


class SimulatedTeacherWorld:
    """Hidden true weights plus the private noise stream answering queries.

    One uniform draw is consumed per query, so runs that replay the same
    stream stay coupled: at a given step, two strategies that query the same
    ``beta`` receive the same answer.
    """

    def __init__(self, w_true, rng: np.random.Generator):
        self.w_true = np.asarray(w_true, dtype=float).reshape(-1)
        self._rng = rng

    def answer(self, phi_diff, beta: float) -> int:
        return sample_preference(self.w_true, phi_diff, beta, self._rng)
