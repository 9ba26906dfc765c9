"""
Closed-form connectivity of the two-hop relay link.

The per-link success probability under Nakagami-m fading with integer
``m`` is a finite sum of derivatives of ``exp(-s*noise) * L_I(s)``, where
``L_I`` is the Laplace transform of the Poisson interference on the
coverage cap. Writing ``g(s) = s*noise + R*eps(s)``, Faà di Bruno's formula
turns the sum into a truncated complete Bell polynomial::

    P = exp(-S - R*eps) * sum_{k<m} sum_{partitions c of k} prod_l x_l**c_l / c_l!

with ``x_1 = S + R*eps_1`` and ``x_l = R*eps_l`` for ``l >= 2``. All the
``eps`` are one-dimensional integrals over the squared link distance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channel import HopConfig
from .errors import ConsistencyError
from .geom3d import CapAnnulus, ShellGeometry
from .numerics import DEFAULT_QUAD, QuadratureSpec, binom, integrate, partitions_of


@dataclass(frozen=True)
class PropositionTerms:
    """Ingredients of the conditional success probability at one distance."""

    s_dot: float
    r_dot: float
    epsilon: float
    epsilon_l: Tuple[float, ...]
    reference_distance: float

    @property
    def bell_arguments(self) -> Tuple[float, ...]:
        """``(x_1, ..., x_{m-1})`` fed to the partition sum."""
        xs = [self.r_dot * e for e in self.epsilon_l]
        if xs:
            xs[0] += self.s_dot
        return tuple(xs)


@dataclass
class ConnectivityResult:
    p1: float
    p2: float
    p_overall: float
    method: str = "analytic"
    stderr: Optional[dict] = None
    ci95: Optional[dict] = None

    def __post_init__(self):
        for name in ("p1", "p2", "p_overall"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1 + 1e-12:
                raise ConsistencyError(f"{name}={v} outside [0, 1]")

    def to_dict(self) -> dict:
        out = {"method": self.method, "p1": self.p1, "p2": self.p2, "p_overall": self.p_overall}
        if self.stderr is not None:
            out["stderr"] = dict(self.stderr)
        if self.ci95 is not None:
            out["ci95"] = {k: list(v) for k, v in self.ci95.items()}
        return out


def r_dot(hop_index: int, shell: ShellGeometry, density: float) -> float:
    """Interference-density prefactor after the change of variable to r^2."""
    if density < 0:
        raise ValueError("density must be non-negative")
    if hop_index == 1:
        return math.pi * density * shell.earth_radius / shell.av_radius
    if hop_index == 2:
        return math.pi * density * shell.av_radius / shell.sat_radius
    raise ValueError(f"hop_index must be 1 or 2, got {hop_index}")


def cap_r_dot(cap: CapAnnulus, density: float) -> float:
    """Same as :func:`r_dot`, read off the cap radii."""
    return math.pi * density * cap.transmitter_shell_radius / cap.receiver_radius


def s_dot(cfg: HopConfig, r0: float) -> float:
    """Noise term ``s * sigma^2``; the carrier frequency cancels."""
    num = 16.0 * cfg.nakagami_m * cfg.sinr_threshold * cfg.noise_power * r0 * r0
    den = (cfg.nakagami_omega * cfg.tx_power * cfg.illumination_coeff
           * cfg.extra_loss * cfg.dish_diameter**2)
    return num / den


def _interference_integrands(m: int, n_terms: int):
    coeffs = [binom(m + l - 1, l) for l in range(1, n_terms)]

    def f(u):
        x = 1.0 / u
        log1p_x = np.log1p(x)
        rows = [-np.expm1(-m * log1p_x)]
        for l, c in enumerate(coeffs, start=1):
            rows.append(c * np.exp(l * np.log(x) - (m + l) * log1p_x))
        return np.vstack(rows)

    return f


def epsilon_terms(theta: float, r0: float, m: int, cap: CapAnnulus,
                  spec: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """``[eps, eps_1, ..., eps_{m-1}]`` from one vector-valued quadrature.

    The integration variable is ``u = gamma / (theta r0^2)``, which keeps the
    integrand O(1) whatever the link length.
    """
    vals = _integrate_over_cap(_interference_integrands(m, m), theta * r0 * r0, cap, spec)
    return np.atleast_1d(vals)


def epsilon(theta: float, r0: float, m: int, cap: CapAnnulus,
            spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Integral of ``1 - (1 + theta r0^2/gamma)^{-m}`` over the squared distances."""
    return float(_single_term(0, theta, r0, m, cap, spec))


def epsilon_deriv(l: int, theta: float, r0: float, m: int, cap: CapAnnulus,
                  spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Binomially weighted moment ``eps_l`` of the interference integrand."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return float(_single_term(l, theta, r0, m, cap, spec))


def _integrate_over_cap(f, scale, cap, spec):
    """``scale * int f(u) du`` for ``u = gamma / scale`` over the cap.

    The variable is offset from ``r_min^2`` so that the interval width comes
    from the stable ``span_sq``; for a narrow beam ``r_max^2 - r_min^2`` is
    far below the resolution of either square.
    """
    lo = cap.r_min**2 / scale
    return scale * integrate(lambda v: f(lo + v), 0.0, cap.span_sq / scale, spec)


def _single_term(l, theta, r0, m, cap, spec):
    full = _interference_integrands(m, l + 1)
    return _integrate_over_cap(lambda u: full(u)[l], theta * r0 * r0, cap, spec)


def proposition_terms(cfg: HopConfig, cap: CapAnnulus, density: float, r0: float,
                      spec: QuadratureSpec = DEFAULT_QUAD) -> PropositionTerms:
    eps = epsilon_terms(cfg.sinr_threshold, r0, cfg.nakagami_m, cap, spec)
    return PropositionTerms(
        s_dot=s_dot(cfg, r0),
        r_dot=cap_r_dot(cap, density),
        epsilon=float(eps[0]),
        epsilon_l=tuple(float(e) for e in eps[1:]),
        reference_distance=r0,
    )


def bell_partition_sum(xs, m: int) -> float:
    """``sum_{k<m} B_k(x)/k!`` written over integer partitions of ``k``."""
    total = 0.0
    for k in range(m):
        for part in partitions_of(k):
            term = 1.0
            for size, count in part.multiplicities.items():
                term *= xs[size - 1] ** count / math.factorial(count)
            total += term
    return total


def success_from_terms(terms: PropositionTerms, m: int) -> float:
    p = math.exp(-terms.s_dot - terms.r_dot * terms.epsilon) * bell_partition_sum(terms.bell_arguments, m)
    if not -1e-9 <= p <= 1 + 1e-9:
        raise ConsistencyError(f"conditional success {p} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def conditional_success(cfg: HopConfig, cap: CapAnnulus, density: float, r0: float,
                        spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Success probability of a link of length ``r0`` against Poisson interferers.

    Parameters
    ----------
    cfg : HopConfig
    cap : CapAnnulus
        Region holding the interferers.
    density : float
        Interferer density per m^2 on the transmitter shell.
    r0 : float
        Length of the reference link, inside ``[cap.r_min, cap.r_max]``.
    """
    if not cap.r_min * (1 - 1e-12) <= r0 <= cap.r_max * (1 + 1e-12):
        raise ValueError(f"r0={r0} outside [{cap.r_min}, {cap.r_max}]")
    terms = proposition_terms(cfg, cap, density, r0, spec)
    return success_from_terms(terms, cfg.nakagami_m)


def laplace_interference(s: float, cfg: HopConfig, cap: CapAnnulus, density: float,
                         spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """``E[exp(-s I)]`` for Poisson interferers of ``density`` on ``cap``.

    ``s`` is in 1/W. Each interferer at squared distance ``gamma`` contributes
    ``(1 + s K / gamma)^{-m}`` with ``K = P Omega iota l D^2 / (16 m)``.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0 or density == 0:
        return 1.0
    m = cfg.nakagami_m
    k_const = (cfg.tx_power * cfg.nakagami_omega * cfg.illumination_coeff
               * cfg.extra_loss * cfg.dish_diameter**2) / (16.0 * m)
    f = _interference_integrands(m, 1)
    eps_s = _integrate_over_cap(lambda u: f(u)[0], s * k_const, cap, spec)
    return math.exp(-cap_r_dot(cap, density) * eps_s)


def success_parameter(cfg: HopConfig, r0: float) -> float:
    """``s = m theta / (Omega P G L(r0))`` in 1/W."""
    from .channel import antenna_gain, path_loss

    return cfg.nakagami_m * cfg.sinr_threshold / (
        cfg.nakagami_omega * cfg.tx_power * antenna_gain(cfg) * float(path_loss(cfg, r0))
    )


def asp_on_cap(cfg: HopConfig, cap: CapAnnulus, density: float,
               spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Average of :func:`conditional_success` over the link-length density."""

    def integrand(r):
        return np.array([conditional_success(cfg, cap, density, float(ri), spec) for ri in r]) * cap.pdf(r)

    p = integrate(integrand, cap.r_min, cap.r_max, spec)
    if not -1e-9 <= p <= 1 + 1e-9:
        raise ConsistencyError(f"average success {p} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def asp(hop_index: int, system, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Average success probability of hop ``hop_index`` for a :class:`SystemConfig`."""
    return asp_on_cap(system.hop(hop_index), system.cap(hop_index),
                      system.interferer_density(hop_index), spec)


def overall_connectivity(system, spec: QuadratureSpec = DEFAULT_QUAD) -> ConnectivityResult:
    p1 = asp(1, system, spec)
    p2 = asp(2, system, spec)
    return ConnectivityResult(p1=p1, p2=p2, p_overall=p1 * p2, method="analytic")
