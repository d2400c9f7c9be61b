"""Belief distributions over grid cells, stored in log space.

A belief assigns one probability mass per grid cell. Masses are kept as
natural logs because rationality-weighted likelihoods can reach exp(±several
hundred) at grid corners; all updates and normalizations therefore run
through ``logaddexp``-style arithmetic and never overflow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .grid import WeightGrid
from .teachers import check_beta, check_preference

__all__ = [
    "Belief",
    "DegenerateBeliefError",
    "MetricKind",
    "OutOfSupportError",
    "entropy",
    "from_masses",
    "gaussian_prior",
    "load_belief_csv",
    "log_loss",
    "mse",
    "save_belief_csv",
    "uniform_prior",
    "update",
]

NORMALIZATION_ATOL = 1e-10


class DegenerateBeliefError(ValueError):
    """A posterior lost all probability mass and cannot be normalized."""


class OutOfSupportError(ValueError):
    """The queried point falls on a cell with zero probability mass."""


class MetricKind(enum.Enum):
    """Which belief-error measure to optimize or report."""

    MSE = "mse"
    LOG_LOSS = "ll"

    @classmethod
    def parse(cls, text: str) -> "MetricKind":
        key = str(text).strip().lower()
        aliases = {"mse": cls.MSE, "ll": cls.LOG_LOSS, "log_loss": cls.LOG_LOSS}
        if key not in aliases:
            raise ValueError(f"unknown metric {text!r}; expected one of mse, ll")
        return aliases[key]


@dataclass(frozen=True)
class Belief:
    """Normalized probability mass over the cells of a :class:`WeightGrid`.

    ``log_mass[i]`` is the natural log of the mass on cell ``i``; ``-inf``
    marks a zero-mass cell. Instances are immutable; every operation returns
    a new Belief.
    """

    grid: WeightGrid
    log_mass: np.ndarray

    def __post_init__(self):
        lm = np.asarray(self.log_mass, dtype=float)
        if lm.shape != (self.grid.cell_count,):
            raise ValueError(
                f"log_mass has shape {lm.shape}, grid has {self.grid.cell_count} cells"
            )
        if np.isnan(lm).any():
            raise ValueError("log_mass contains NaN")
        if lm.max() == np.inf:
            raise ValueError("log_mass contains +inf")
        total = np.exp(lm).sum()
        if abs(total - 1.0) > NORMALIZATION_ATOL:
            raise ValueError(f"belief is not normalized: masses sum to {total!r}")
        lm = lm.copy()
        lm.setflags(write=False)
        object.__setattr__(self, "log_mass", lm)

    @property
    def masses(self) -> np.ndarray:
        return np.exp(self.log_mass)

    def mass_at(self, cell_index: int) -> float:
        return float(np.exp(self.log_mass[cell_index]))


def uniform_prior(grid: WeightGrid) -> Belief:
    """Uniform belief: every cell carries mass ``1 / cell_count``."""
    n = grid.cell_count
    return Belief(grid, np.full(n, -np.log(n)))


def gaussian_prior(grid: WeightGrid, mu, sigma: float) -> Belief:
    """Normalized isotropic Gaussian evaluated at the cell centers.

    ``mu`` may be a scalar (broadcast across axes) or a length-``dims`` vector.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    mu = np.broadcast_to(np.asarray(mu, dtype=float).reshape(-1), (grid.dims,))
    d2 = np.einsum("nd,nd->n", grid.cell_centers - mu, grid.cell_centers - mu)
    lm = -0.5 * d2 / (sigma * sigma)
    return Belief(grid, lm - logsumexp(lm))


def from_masses(grid: WeightGrid, masses) -> Belief:
    """Belief from nonnegative per-cell masses (normalized here)."""
    m = np.asarray(masses, dtype=float)
    if (m < 0).any():
        raise ValueError("masses must be nonnegative")
    total = m.sum()
    if not total > 0:
        raise DegenerateBeliefError("all masses are zero")
    with np.errstate(divide="ignore"):
        return Belief(grid, np.log(m / total))


def _log_likelihood(belief: Belief, preference: int, phi_diff, beta: float) -> np.ndarray:
    pref = check_preference(preference)
    check_beta(beta)
    phi = np.asarray(phi_diff, dtype=float).reshape(-1)
    if phi.shape[0] != belief.grid.dims:
        raise ValueError(
            f"phi_diff has {phi.shape[0]} components, grid has {belief.grid.dims} axes"
        )
    dots = belief.grid.cell_centers @ phi
    # log sigma(x) = -log(1 + exp(-x)), computed stably for any magnitude
    return -np.logaddexp(0.0, -pref * beta * dots)


def update(belief: Belief, preference: int, phi_diff, beta: float) -> Belief:
    """Posterior after one preference observation (Bayes rule on the grid).

    Each cell's mass is multiplied by the choice likelihood evaluated at the
    cell center and the result is renormalized. Raises
    :class:`DegenerateBeliefError` if every cell ends up with zero mass.
    """
    lm = belief.log_mass + _log_likelihood(belief, preference, phi_diff, beta)
    peak = lm.max()
    if peak == -np.inf:
        raise DegenerateBeliefError("posterior has zero total mass")
    norm = peak + np.log(np.exp(lm - peak).sum())
    return Belief(belief.grid, lm - norm)


def entropy(belief: Belief) -> float:
    """Shannon entropy in nats: ``-sum(m * log m)`` over cells with mass."""
    lm = belief.log_mass
    m = np.exp(lm)
    live = m > 0
    h = -float(m[live] @ lm[live])
    return float(np.clip(h, 0.0, np.log(belief.grid.cell_count)))


def mse(belief: Belief, w_true) -> float:
    """Mass-weighted squared distance of the cell centers from ``w_true``."""
    w = np.asarray(w_true, dtype=float).reshape(-1)
    if w.shape[0] != belief.grid.dims:
        raise ValueError(f"w_true has {w.shape[0]} components, grid has {belief.grid.dims} axes")
    diff = belief.grid.cell_centers - w
    return float(belief.masses @ np.einsum("nd,nd->n", diff, diff))


def log_loss(belief: Belief, w_true) -> float:
    """Negative log mass of the cell whose center is nearest to ``w_true``.

    This is a probability-mass convention: on a fixed grid it differs from a
    density-based value only by the constant log cell volume, which cancels
    in any comparison across teachers, steps, or strategies.
    """
    w = np.asarray(w_true, dtype=float).reshape(-1)
    if not belief.grid.contains(w):
        raise ValueError(f"w_true {w!r} lies outside the grid bounds")
    idx = belief.grid.nearest_cell_index(w)
    lm = belief.log_mass[idx]
    if lm == -np.inf:
        raise OutOfSupportError(f"cell nearest to {w!r} carries zero mass")
    return max(0.0, -float(lm))


def save_belief_csv(belief: Belief, path) -> None:
    """Write ``cell_index, center components, mass`` rows with a grid header."""
    grid = belief.grid
    masses = belief.masses
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# voilearn belief\n")
        fh.write("# grid_bounds: " + ";".join(f"{lo!r}:{hi!r}" for lo, hi in grid.bounds) + "\n")
        fh.write("# grid_points: " + ";".join(str(p) for p in grid.points_per_axis) + "\n")
        cols = ",".join(f"c{a}" for a in range(grid.dims))
        fh.write(f"cell_index,{cols},mass\n")
        for i, (center, m) in enumerate(zip(grid.cell_centers, masses)):
            comps = ",".join(repr(float(c)) for c in center)
            fh.write(f"{i},{comps},{float(m)!r}\n")


def load_belief_csv(path) -> Belief:
    """Rebuild a belief (and its grid) written by :func:`save_belief_csv`."""
    bounds = points = None
    masses = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("grid_bounds:"):
                    pairs = body.split(":", 1)[1].strip().split(";")
                    bounds = [tuple(float(x) for x in p.split(":")) for p in pairs]
                elif body.startswith("grid_points:"):
                    points = [int(x) for x in body.split(":", 1)[1].strip().split(";")]
                continue
            if line.startswith("cell_index"):
                continue
            masses.append(float(line.split(",")[-1]))
    if bounds is None or points is None:
        raise ValueError(f"{path}: missing grid header lines")
    grid = WeightGrid.regular(bounds, points)
    return from_masses(grid, np.array(masses))
