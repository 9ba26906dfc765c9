"""
Point processes on spherical caps.

Caps are centred on the +z axis. Points are stored as 3-D Cartesian
coordinates on a sphere of fixed radius so that chord distances, rotations
and nearest-neighbour searches are plain linear algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class DeploymentConfig:
    """Densities (per m^2) and the aerial hard-core distance (m)."""

    gu_density: float = 50e-6
    gu_tx_probability: float = 0.05
    av_parent_density: float = 5e-6
    hardcore_distance: float = 100.0

    def __post_init__(self):
        for key in ("gu_density", "av_parent_density", "hardcore_distance"):
            if not getattr(self, key) >= 0:
                raise ConfigError(key, f"must be non-negative, got {getattr(self, key)}")
        if not 0 <= self.gu_tx_probability <= 1:
            raise ConfigError("gu_tx_probability", "must lie in [0, 1]")

    @property
    def gu_tx_density(self) -> float:
        return self.gu_tx_probability * self.gu_density

    @property
    def retention(self) -> float:
        return retention_probability(self.av_parent_density, self.hardcore_distance)

    @property
    def av_density(self) -> float:
        """Density of aerial vehicles after hard-core thinning."""
        return self.av_parent_density * self.retention


@dataclass(frozen=True)
class CapPointSet:
    points: np.ndarray  # shape (n, 3)
    shell_radius: float
    boundary_angle: float

    def __len__(self):
        return len(self.points)

    @property
    def polar_angles(self) -> np.ndarray:
        cos_phi = np.clip(self.points[:, 2] / self.shell_radius, -1.0, 1.0)
        return np.arccos(cos_phi)

    def subset(self, mask) -> "CapPointSet":
        return CapPointSet(self.points[mask], self.shell_radius, self.boundary_angle)

    def distances_to_axis_point(self, radius: float) -> np.ndarray:
        """Distances from every point to the point ``(0, 0, radius)``."""
        diff = self.points.copy()
        diff[:, 2] -= radius
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def retention_probability(parent_density: float, hardcore: float) -> float:
    """Probability that a parent point survives Matérn type-II thinning."""
    if hardcore < 0:
        raise ValueError("hardcore distance must be non-negative")
    x = parent_density * math.pi * hardcore * hardcore
    if x == 0.0:
        return 1.0
    return -math.expm1(-x) / x


def cap_area(shell_radius: float, boundary_angle: float) -> float:
    # 1 - cos(phi) written as 2 sin^2(phi/2) to keep precision for tiny caps
    return 4.0 * math.pi * shell_radius**2 * math.sin(0.5 * boundary_angle) ** 2


def uniform_on_cap(n: int, shell_radius: float, boundary_angle: float, rng) -> np.ndarray:
    """``n`` points uniform on the cap, via inverse CDF in ``cos(phi)``."""
    # 1 - cos(phi) = 2 sin^2(phi/2) is uniform on [0, 2 sin^2(phi_max/2)]
    one_minus_cos = rng.uniform(0.0, 2.0 * math.sin(0.5 * boundary_angle) ** 2, size=n)
    azimuth = rng.uniform(0.0, 2.0 * math.pi, size=n)
    cos_phi = 1.0 - one_minus_cos
    sin_phi = np.sqrt(one_minus_cos * (2.0 - one_minus_cos))
    return shell_radius * np.column_stack(
        (sin_phi * np.cos(azimuth), sin_phi * np.sin(azimuth), cos_phi)
    )


def sample_hppp_on_cap(density: float, shell_radius: float, cap_boundary_angle: float, rng) -> CapPointSet:
    """Homogeneous Poisson process of ``density`` points per m^2 on a cap."""
    if density < 0:
        raise ValueError("density must be non-negative")
    mean = density * cap_area(shell_radius, cap_boundary_angle)
    n = int(rng.poisson(mean)) if mean > 0 else 0
    pts = uniform_on_cap(n, shell_radius, cap_boundary_angle, rng)
    return CapPointSet(pts, shell_radius, cap_boundary_angle)


def _chord_distances(points):
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def matern_type2_keep(points: np.ndarray, hardcore: float, marks: np.ndarray) -> np.ndarray:
    """Boolean mask of points that survive Matérn type-II thinning.

    A point survives iff no other point closer than ``hardcore`` carries a
    strictly smaller mark. Equal marks fall back to index order.
    """
    n = len(points)
    if hardcore <= 0 or n < 2:
        return np.ones(n, dtype=bool)
    order = np.lexsort((np.arange(n), marks))
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    close = _chord_distances(points) < hardcore
    np.fill_diagonal(close, False)
    beaten = close & (rank[None, :] < rank[:, None])
    return ~beaten.any(axis=1)


def matern_type2_thin(parents: CapPointSet, hardcore: float, rng, marks=None) -> CapPointSet:
    """Matérn type-II thinning with independent uniform marks."""
    if hardcore < 0:
        raise ValueError("hardcore distance must be non-negative")
    if marks is None:
        marks = rng.uniform(size=len(parents))
    return parents.subset(matern_type2_keep(parents.points, hardcore, marks))


def sample_matern_on_cap(parent_density, hardcore, shell_radius, cap_boundary_angle, rng) -> CapPointSet:
    """Matérn type-II process restricted to a cap, free of edge bias.

    Parents are drawn on a cap widened by the hard-core distance so that
    points near the rim compete with neighbours outside it, then clipped.
    """
    guard = hardcore / shell_radius
    parents = sample_hppp_on_cap(parent_density, shell_radius, min(cap_boundary_angle + guard, math.pi), rng)
    kept = matern_type2_thin(parents, hardcore, rng)
    inside = kept.polar_angles <= cap_boundary_angle
    return CapPointSet(kept.points[inside], shell_radius, cap_boundary_angle)


def thin_by_activity(points: CapPointSet, p: float, rng) -> CapPointSet:
    """Keep each point independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if p == 1:
        return points
    return points.subset(rng.uniform(size=len(points)) < p)


def nearest_association(gus, avs) -> np.ndarray:
    """Index of the nearest aerial vehicle for every ground user.

    Ground users and aerial vehicles sit on concentric spheres, so the
    nearest AV in 3-D is also the one with the smallest angular separation.
    Ties go to the lowest AV index.
    """
    gu_pts = gus.points if isinstance(gus, CapPointSet) else np.asarray(gus)
    av_pts = avs.points if isinstance(avs, CapPointSet) else np.asarray(avs)
    if len(av_pts) == 0:
        raise ValueError("cannot associate users with an empty AV set")
    if len(gu_pts) == 0:
        return np.zeros(0, dtype=np.int64)
    diff = gu_pts[:, None, :] - av_pts[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    return np.argmin(d2, axis=1)
