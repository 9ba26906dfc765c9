"""
Spherical geometry of the two-hop ground/aerial/satellite layout.

Everything is measured from the Earth centre. Ground users live on the
sphere of radius ``R_e``, aerial vehicles on ``R_e + H_a`` and the reference
satellite sits on the axis at ``R_e + H_s``. Each hop's coverage region is a
spherical cap on the transmitter shell, parameterised here by the range of
transmitter-receiver distances ``[r_min, r_max]``.

All lengths are metres, all angles radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError

SPEED_OF_LIGHT = 299_792_458.0
EARTH_RADIUS = 6_371_000.0


@dataclass(frozen=True)
class ShellGeometry:
    """Earth radius and the altitudes of the aerial and satellite shells."""

    earth_radius: float = EARTH_RADIUS
    av_altitude: float = 1_000.0
    sat_altitude: float = 600_000.0

    def __post_init__(self):
        if not self.earth_radius > 0:
            raise GeometryError(f"earth_radius must be positive, got {self.earth_radius}")
        if not 0 < self.av_altitude < self.sat_altitude:
            raise GeometryError(
                "require 0 < av_altitude < sat_altitude, got "
                f"{self.av_altitude} and {self.sat_altitude}"
            )

    @property
    def av_radius(self) -> float:
        return self.earth_radius + self.av_altitude

    @property
    def sat_radius(self) -> float:
        return self.earth_radius + self.sat_altitude


@dataclass(frozen=True)
class CapAnnulus:
    """Distance range from a receiver to the transmitters in its coverage cap.

    The receiver sits on the symmetry axis at ``receiver_radius`` from the
    Earth centre, transmitters on the sphere of ``transmitter_shell_radius``.
    Transmitters are uniform on the cap, so the squared distance is uniform
    on ``[r_min**2, r_max**2]``.
    """

    r_min: float
    r_max: float
    transmitter_shell_radius: float
    receiver_radius: float
    hop_index: int

    def __post_init__(self):
        if not 0 < self.r_min:
            raise GeometryError(f"r_min must be positive, got {self.r_min}")
        if not self.r_max > self.r_min:
            raise GeometryError(
                f"degenerate cap: r_max={self.r_max!r} <= r_min={self.r_min!r}"
            )

    @property
    def span_sq(self) -> float:
        """``r_max**2 - r_min**2``."""
        return (self.r_max - self.r_min) * (self.r_max + self.r_min)

    @property
    def height(self) -> float:
        """Cap height on the transmitter shell (Archimedes' hat theorem)."""
        return self.span_sq / (2.0 * self.receiver_radius)

    @property
    def area(self) -> float:
        return 2.0 * math.pi * self.transmitter_shell_radius * self.height

    @property
    def boundary_angle(self) -> float:
        """Polar angle of the cap rim, seen from the Earth centre."""
        return distance_to_polar_angle(
            self.transmitter_shell_radius, self.receiver_radius, self.r_max
        )

    def pdf(self, r):
        r = np.asarray(r, dtype=float)
        if np.any((r < self.r_min) | (r > self.r_max)):
            raise ValueError(f"distance outside [{self.r_min}, {self.r_max}]")
        out = 2.0 * r / self.span_sq
        return float(out) if out.ndim == 0 else out

    def cdf(self, r):
        r = np.clip(np.asarray(r, dtype=float), self.r_min, self.r_max)
        out = (r - self.r_min) * (r + self.r_min) / self.span_sq
        return float(out) if out.ndim == 0 else out


def hop1_cap(shell: ShellGeometry, av_density: float) -> CapAnnulus:
    """Coverage cap of one aerial vehicle over the ground.

    The Voronoi cell of mean area ``1/av_density`` is replaced by a cap of the
    same area on the Earth sphere, so its height is ``1/(2 pi lambda_a R_e)``.

    Parameters
    ----------
    shell : ShellGeometry
    av_density : float
        Effective (post-thinning) aerial vehicle density per m^2.
    """
    if not av_density > 0:
        raise ValueError(f"av_density must be positive, got {av_density}")
    re, ha = shell.earth_radius, shell.av_altitude
    cap_height = 1.0 / (2.0 * math.pi * av_density * re)
    r_max = math.sqrt(ha * ha + 2.0 * cap_height * (re + ha))
    return CapAnnulus(
        r_min=ha,
        r_max=r_max,
        transmitter_shell_radius=re,
        receiver_radius=re + ha,
        hop_index=1,
    )


def max_beamwidth(shell: ShellGeometry) -> float:
    """Largest half-angle whose beam edge still meets the aerial shell."""
    return math.asin(shell.av_radius / shell.sat_radius)


def hop2_cap(shell: ShellGeometry, beamwidth_rad: float) -> CapAnnulus:
    """Footprint of the satellite beam on the aerial shell."""
    if not beamwidth_rad > 0:
        raise ValueError(f"beamwidth must be positive, got {beamwidth_rad}")
    ra, rs = shell.av_radius, shell.sat_radius
    disc = ra * ra - (rs * math.sin(beamwidth_rad)) ** 2
    if disc < 0:
        raise GeometryError(
            f"beam of {beamwidth_rad:.6g} rad misses the aerial shell; "
            f"maximum admissible beamwidth is {max_beamwidth(shell):.6g} rad"
        )
    # r_max - r_min rearranged so that no two Earth-sized terms cancel
    sin_bw = math.sin(beamwidth_rad)
    gap = (rs * sin_bw) ** 2 / (ra + math.sqrt(disc)) - 2.0 * rs * math.sin(0.5 * beamwidth_rad) ** 2
    r_min = shell.sat_altitude - shell.av_altitude
    return CapAnnulus(
        r_min=r_min,
        r_max=r_min + gap,
        transmitter_shell_radius=ra,
        receiver_radius=rs,
        hop_index=2,
    )


def beamwidth(freq_hz: float, dish_diameter_m: float, kappa_s: float) -> float:
    """3 dB beamwidth ``c*kappa/(f*D)``, which is in degrees, returned in radians."""
    if freq_hz <= 0 or dish_diameter_m <= 0 or kappa_s < 0:
        raise ValueError("beamwidth inputs must be positive")
    return math.radians(SPEED_OF_LIGHT * kappa_s / (freq_hz * dish_diameter_m))


def distance_pdf(cap: CapAnnulus, r):
    """Density of the transmitter-receiver distance on ``cap``."""
    return cap.pdf(r)


def sample_distance(cap: CapAnnulus, uniform01):
    """Inverse-CDF transform of uniform variates into link distances."""
    u = np.asarray(uniform01, dtype=float)
    out = np.sqrt(cap.r_min**2 + u * cap.span_sq)
    return float(out) if out.ndim == 0 else out


def polar_angle_to_distance(r_tx, r_rx, phi):
    """Chord distance between points at radii ``r_tx``, ``r_rx`` separated by ``phi``."""
    # (r_tx - r_rx)^2 + 4 r_tx r_rx sin^2(phi/2) avoids cancellation near phi=0
    d2 = (r_tx - r_rx) ** 2 + 4.0 * r_tx * r_rx * np.sin(0.5 * np.asarray(phi)) ** 2
    return np.sqrt(d2)


def distance_to_polar_angle(r_tx, r_rx, distance):
    """Inverse of :func:`polar_angle_to_distance`."""
    s2 = (np.asarray(distance, dtype=float) ** 2 - (r_tx - r_rx) ** 2) / (4.0 * r_tx * r_rx)
    out = 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))
    return float(out) if np.ndim(out) == 0 else out
