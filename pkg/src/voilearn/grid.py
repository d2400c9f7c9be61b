"""Regular grids over the reward-weight domain."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = ["WeightGrid"]


@dataclass(frozen=True)
class WeightGrid:
    """Rectangular discretization of a weight domain into cells.

    Cell centers lie on an inclusive lattice: ``linspace(lower, upper, points)``
    along each axis, so the bounds themselves are centers whenever an axis has
    more than one point. Cells are enumerated in row-major (C) order, i.e. the
    last axis varies fastest.
    """

    bounds: tuple[tuple[float, float], ...]
    points_per_axis: tuple[int, ...]

    def __post_init__(self):
        if len(self.bounds) == 0:
            raise ValueError("grid needs at least one axis")
        if len(self.bounds) != len(self.points_per_axis):
            raise ValueError(
                f"{len(self.bounds)} axis bounds but {len(self.points_per_axis)} point counts"
            )
        for axis, ((lo, hi), pts) in enumerate(zip(self.bounds, self.points_per_axis)):
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise ValueError(f"axis {axis}: bounds must be finite, got ({lo}, {hi})")
            if pts < 1:
                raise ValueError(f"axis {axis}: needs at least one point, got {pts}")
            if pts > 1 and not lo < hi:
                raise ValueError(f"axis {axis}: lower bound {lo} must be below upper {hi}")
            if pts == 1 and lo > hi:
                raise ValueError(f"axis {axis}: lower bound {lo} above upper {hi}")

    @classmethod
    def regular(cls, bounds, points_per_axis) -> "WeightGrid":
        """Build a grid from per-axis ``(lower, upper)`` pairs and point counts."""
        bounds = tuple((float(lo), float(hi)) for lo, hi in bounds)
        points = tuple(int(p) for p in points_per_axis)
        return cls(bounds=bounds, points_per_axis=points)

    @classmethod
    def cube(cls, dims: int, lower: float = -10.0, upper: float = 10.0, points: int = 21) -> "WeightGrid":
        """Hypercube grid with identical bounds and resolution on every axis."""
        return cls.regular([(lower, upper)] * dims, [points] * dims)

    @property
    def dims(self) -> int:
        return len(self.bounds)

    @property
    def cell_count(self) -> int:
        return int(np.prod(self.points_per_axis))

    def axis_coordinates(self, axis: int) -> np.ndarray:
        lo, hi = self.bounds[axis]
        return np.linspace(lo, hi, self.points_per_axis[axis])

    def spacing(self, axis: int) -> float:
        """Distance between adjacent centers on an axis (0.0 for a single point)."""
        pts = self.points_per_axis[axis]
        if pts == 1:
            return 0.0
        lo, hi = self.bounds[axis]
        return (hi - lo) / (pts - 1)

    @cached_property
    def cell_centers(self) -> np.ndarray:
        """All cell centers, shape ``(cell_count, dims)``, row-major order."""
        axes = [self.axis_coordinates(a) for a in range(self.dims)]
        mesh = np.meshgrid(*axes, indexing="ij")
        centers = np.stack([m.ravel() for m in mesh], axis=1)
        centers.setflags(write=False)
        return centers

    @cached_property
    def center_sq_norms(self) -> np.ndarray:
        """Squared Euclidean norm of every cell center, shape ``(cell_count,)``."""
        sq = np.einsum("nd,nd->n", self.cell_centers, self.cell_centers)
        sq.setflags(write=False)
        return sq

    def contains(self, w) -> bool:
        w = np.asarray(w, dtype=float)
        return all(lo <= wi <= hi for wi, (lo, hi) in zip(w, self.bounds))

    def nearest_cell_index(self, w) -> int:
        """Flat index of the center nearest to ``w`` (ties go to the lowest index)."""
        w = np.asarray(w, dtype=float).reshape(-1)
        if w.shape[0] != self.dims:
            raise ValueError(f"point has {w.shape[0]} components, grid has {self.dims} axes")
        idx = []
        for axis, wi in enumerate(w):
            pts = self.points_per_axis[axis]
            if pts == 1:
                idx.append(0)
                continue
            lo, _ = self.bounds[axis]
            t = (wi - lo) / self.spacing(axis)
            # round-half-down keeps ties on the lower index
            k = int(np.ceil(t - 0.5))
            idx.append(min(max(k, 0), pts - 1))
        return int(np.ravel_multi_index(idx, self.points_per_axis))
