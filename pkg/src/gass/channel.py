"""Link-level radio primitives: antenna gain, free-space loss, fading, SINR."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .geom3d import SPEED_OF_LIGHT

BOLTZMANN = 1.380649e-23


@dataclass(frozen=True)
class HopConfig:
    """Radio parameters of one hop.

    ``sinr_threshold`` is linear. ``beamwidth_coeff`` only matters for the
    satellite hop, where it sets the beam footprint.

    The default values are placeholders, not taken from any measured
    system; pin them explicitly for anything quantitative.
    """

    tx_power: float = 0.1
    carrier_freq: float = 2.0e9
    illumination_coeff: float = 0.6
    dish_diameter: float = 0.5
    extra_loss: float = 1.0
    nakagami_m: int = 3
    nakagami_omega: float = 1.0
    noise_power: float = 4.0e-14
    sinr_threshold: float = 1.0
    beamwidth_coeff: float = 70.0

    def __post_init__(self):
        for key in ("tx_power", "carrier_freq", "dish_diameter"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, f"must be positive, got {getattr(self, key)}")
        # zero noise is the interference-limited regime
        if not self.noise_power >= 0:
            raise ConfigError("noise_power", f"must be non-negative, got {self.noise_power}")
        if not self.illumination_coeff > 0:
            raise ConfigError("illumination_coeff", "must be positive")
        if not 0 < self.extra_loss <= 1:
            raise ConfigError("extra_loss", f"must lie in (0, 1], got {self.extra_loss}")
        m = self.nakagami_m
        if isinstance(m, bool) or not float(m).is_integer() or m < 1:
            raise ConfigError("nakagami_m", f"must be an integer >= 1, got {m}")
        object.__setattr__(self, "nakagami_m", int(m))
        if not self.nakagami_omega > 0:
            raise ConfigError("nakagami_omega", "must be positive")
        if not self.sinr_threshold > 0:
            raise ConfigError("sinr_threshold", "must be positive")
        if not self.beamwidth_coeff >= 0:
            raise ConfigError("beamwidth_coeff", "must be non-negative")


def thermal_noise(temperature_k: float, bandwidth_hz: float) -> float:
    """``k_B T B`` in watts."""
    return BOLTZMANN * temperature_k * bandwidth_hz


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def antenna_gain(cfg: HopConfig) -> float:
    """Receive gain of a reflector antenna, ``iota*(pi*D*f/c)**2``."""
    return cfg.illumination_coeff * (math.pi * cfg.dish_diameter * cfg.carrier_freq / SPEED_OF_LIGHT) ** 2


def path_loss(cfg: HopConfig, distance):
    """Free-space loss factor times the extra atmospheric loss ``l``."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    wavelength_term = (SPEED_OF_LIGHT / (4.0 * math.pi * cfg.carrier_freq)) ** 2
    return cfg.extra_loss * wavelength_term / d**2


def sample_nakagami_power(m, omega, rng, size=None):
    """Power gain under Nakagami-m fading: Gamma(shape=m, scale=omega/m)."""
    return rng.gamma(m, omega / m, size=size)


def nakagami_power_cdf(m, omega, h):
    from scipy.special import gammainc

    return gammainc(m, m * np.asarray(h, dtype=float) / omega)


def sinr(cfg: HopConfig, signal_distance, signal_gain, interferers=()):
    """SINR at the receiver.

    Parameters
    ----------
    interferers : iterable of (distance, gain) or an (n, 2) array
    """
    rx = cfg.tx_power * antenna_gain(cfg)
    signal = rx * signal_gain * path_loss(cfg, signal_distance)
    arr = np.asarray(interferers, dtype=float).reshape(-1, 2)
    interference = 0.0
    if len(arr):
        interference = rx * float(np.sum(arr[:, 1] * path_loss(cfg, arr[:, 0])))
    denom = interference + cfg.noise_power
    return signal / denom if denom > 0 else math.inf
