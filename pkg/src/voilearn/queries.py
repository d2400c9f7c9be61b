"""Query generation: the restaurant item universe and fixed/custom sources.

The default simulated domain compares restaurants described by three
features: cleanliness in [1, 10], a vegan flag in {0, 1}, and spiciness in
[1, 10]. Cleanliness and spiciness are continuous uniforms by default; an
integer-ratings mode is available behind a flag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QueryMode",
    "QuerySource",
    "RESTAURANT_DIMS",
    "fixed_unit_diff_source",
    "generate_query",
    "restaurant_source",
    "sample_restaurant",
    "scaled_magnitude_source",
    "unit_box_source",
]

RESTAURANT_DIMS = 3


def sample_restaurant(rng: np.random.Generator, integer_ratings: bool = False) -> np.ndarray:
    """One feature vector: (cleanliness, vegan, spiciness)."""
    if integer_ratings:
        cleanliness = float(rng.integers(1, 11))
        spiciness = float(rng.integers(1, 11))
    else:
        cleanliness = rng.uniform(1.0, 10.0)
        spiciness = rng.uniform(1.0, 10.0)
    vegan = float(rng.integers(2))
    return np.array([cleanliness, vegan, spiciness])


class QueryMode(enum.Enum):
    RANDOM_RESTAURANTS = "random_restaurants"
    FIXED_UNIT_DIFF = "fixed_unit_diff"
    CUSTOM = "custom"


@dataclass
class QuerySource:
    """Produces item pairs for the learning loop.

    RANDOM_RESTAURANTS draws two independent restaurants (dims must be 3).
    FIXED_UNIT_DIFF deterministically yields a pair whose feature difference
    is the first basis vector. CUSTOM delegates to ``sampler(rng)``.
    """

    mode: QueryMode
    rng: np.random.Generator | None = None
    dims: int = RESTAURANT_DIMS
    integer_ratings: bool = False
    sampler: Callable[[np.random.Generator], tuple[np.ndarray, np.ndarray]] | None = None

    def __post_init__(self):
        if self.dims < 1:
            raise ValueError(f"dims must be >= 1, got {self.dims}")
        if self.mode is QueryMode.RANDOM_RESTAURANTS and self.dims != RESTAURANT_DIMS:
            raise ValueError(f"restaurant queries are {RESTAURANT_DIMS}-dimensional, got dims={self.dims}")
        if self.mode is QueryMode.CUSTOM and self.sampler is None:
            raise ValueError("CUSTOM mode needs a sampler")
        if self.mode is not QueryMode.FIXED_UNIT_DIFF and self.rng is None:
            raise ValueError(f"{self.mode.value} mode needs an rng")


def generate_query(source: QuerySource) -> tuple[np.ndarray, np.ndarray]:
    """Next item pair from the source; deterministic given the source's stream."""
    if source.mode is QueryMode.RANDOM_RESTAURANTS:
        return (
            sample_restaurant(source.rng, source.integer_ratings),
            sample_restaurant(source.rng, source.integer_ratings),
        )
    if source.mode is QueryMode.FIXED_UNIT_DIFF:
        phi_i = np.zeros(source.dims)
        phi_i[0] = 1.0
        return phi_i, np.zeros(source.dims)
    return source.sampler(source.rng)


def restaurant_source(rng: np.random.Generator, integer_ratings: bool = False) -> QuerySource:
    return QuerySource(QueryMode.RANDOM_RESTAURANTS, rng=rng, integer_ratings=integer_ratings)


def fixed_unit_diff_source(dims: int = 1) -> QuerySource:
    return QuerySource(QueryMode.FIXED_UNIT_DIFF, dims=dims)


def unit_box_source(rng: np.random.Generator, dims: int) -> QuerySource:
    """Item features drawn uniformly from the unit box [0, 1]^dims."""

    def sampler(r: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        return r.random(dims), r.random(dims)

    return QuerySource(QueryMode.CUSTOM, rng=rng, dims=dims, sampler=sampler)


def scaled_magnitude_source(
    rng: np.random.Generator, beta: float, weight_scale: float
) -> QuerySource:
    """1-D diffs sized to the informative band of the choice model.

    The teacher's answer carries the most information per query when the
    logit ``beta * w * phi`` is neither near zero nor saturated. Magnitudes
    are drawn uniformly so that the logit for the largest grid weight lands
    in roughly [2, 6] (capped at unit scale), with a random sign:
    ``|phi| ~ U(hi/3, hi)`` where ``hi = min(1, 6 / (beta * weight_scale))``.
    Keeps even the outermost grid weights statistically distinguishable.
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if not weight_scale > 0:
        raise ValueError(f"weight_scale must be positive, got {weight_scale}")
    hi = min(1.0, 6.0 / (beta * weight_scale))
    lo = hi / 3.0

    def sampler(r: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        magnitude = r.uniform(lo, hi)
        sign = 1.0 if r.random() < 0.5 else -1.0
        return np.array([sign * magnitude]), np.zeros(1)

    return QuerySource(QueryMode.CUSTOM, rng=rng, dims=1, sampler=sampler)
