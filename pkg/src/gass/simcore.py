"""
Monte Carlo estimation of per-hop and end-to-end success probabilities.

Every trial draws from its own generator, seeded by the tuple
``(master_seed, hop, trial_index)`` through :class:`numpy.random.SeedSequence`.
Results are therefore a function of the seed and trial count only, no
matter how trials are split across worker processes.

Two scene generators are available:

``cap_approx``
    The reference link length is drawn from the cap distance density and
    interferers are drawn independently on the cap, exactly the
    assumptions behind the closed form.
``full_voronoi``
    Diagnostic mode. Hop 1 places a typical ground user at the pole, serves
    it from its nearest aerial vehicle and takes interferers from that
    vehicle's Voronoi cell; hop 2 picks the reference among the retained
    Matérn points inside the beam. No closed form is expected to match it.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channel import HopConfig, antenna_gain, path_loss
from .geom3d import CapAnnulus, sample_distance
from .pointproc import (
    nearest_association,
    sample_hppp_on_cap,
    sample_matern_on_cap,
)

MODES = ("cap_approx", "full_voronoi")
HOPS = ("hop1", "hop2", "both")
WORKERS_ENV = "GASS_WORKERS"
Z95 = 1.959963984540054

# full_voronoi hop 1 simulates this many mean cells around the typical user
_REGION_CELLS = 40


@dataclass(frozen=True)
class TrialPlan:
    trials: int = 10_000
    master_seed: int = 0
    mode: str = "cap_approx"
    hops: str = "both"
    workers: Optional[int] = None
    interference_scope: str = "cell"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.hops not in HOPS:
            raise ValueError(f"hops must be one of {HOPS}")
        if self.interference_scope not in ("cell", "all"):
            raise ValueError("interference_scope must be 'cell' or 'all'")


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    ci95: Tuple[float, float]
    trials: int

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "Estimate":
        p = successes / trials
        se = math.sqrt(p * (1.0 - p) / trials)
        return cls(p, se, (max(0.0, p - Z95 * se), min(1.0, p + Z95 * se)), trials)

    @property
    def halfwidth(self) -> float:
        return Z95 * self.stderr

    def to_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "ci95": list(self.ci95), "trials": self.trials}


def trial_rng(master_seed: int, hop: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, hop, trial]))


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


@dataclass(frozen=True)
class LinkScene:
    """Everything a single-hop trial needs, in SI units.

    ``hardcore`` set to ``None`` means Poisson interferers of
    ``density``; otherwise interferers are Matérn type-II thinned from
    parents of ``density``.
    """

    cfg: HopConfig
    cap: CapAnnulus
    density: float
    hardcore: Optional[float] = None
    r0: Optional[float] = None

    def success(self, rng) -> bool:
        cfg, cap = self.cfg, self.cap
        r0 = self.r0 if self.r0 is not None else sample_distance(cap, rng.uniform())
        if self.hardcore is None:
            pts = sample_hppp_on_cap(self.density, cap.transmitter_shell_radius, cap.boundary_angle, rng)
        else:
            pts = sample_matern_on_cap(self.density, self.hardcore, cap.transmitter_shell_radius,
                                       cap.boundary_angle, rng)
        d = pts.distances_to_axis_point(cap.receiver_radius)
        return _decide(cfg, r0, d, rng)


def _decide(cfg: HopConfig, r0, interferer_distances, rng) -> bool:
    m, omega = cfg.nakagami_m, cfg.nakagami_omega
    h0 = rng.gamma(m, omega / m)
    h = rng.gamma(m, omega / m, size=len(interferer_distances))
    rx = cfg.tx_power * antenna_gain(cfg)
    signal = rx * h0 * float(path_loss(cfg, r0))
    interference = rx * float(np.sum(h * path_loss(cfg, interferer_distances))) if len(h) else 0.0
    return signal > cfg.sinr_threshold * (interference + cfg.noise_power)


@dataclass(frozen=True)
class VoronoiHop1Scene:
    cfg: HopConfig
    earth_radius: float
    av_radius: float
    av_parent_density: float
    hardcore: float
    gu_tx_density: float
    av_density: float
    scope: str = "cell"

    def success(self, rng) -> bool:
        region = _REGION_CELLS / self.av_density
        angle = 2.0 * math.asin(min(1.0, math.sqrt(region / (4.0 * math.pi * self.earth_radius**2))))
        while True:
            avs = sample_matern_on_cap(self.av_parent_density, self.hardcore, self.av_radius, angle, rng)
            if len(avs):
                break
        user = np.array([[0.0, 0.0, self.earth_radius]])
        serving = int(nearest_association(user, avs)[0])
        gus = sample_hppp_on_cap(self.gu_tx_density, self.earth_radius, angle, rng)
        if self.scope == "cell" and len(gus):
            gus = gus.subset(nearest_association(gus, avs) == serving)
        rx_pos = avs.points[serving]
        r0 = float(np.linalg.norm(rx_pos - user[0]))
        d = np.linalg.norm(gus.points - rx_pos, axis=1)
        return _decide(self.cfg, r0, d, rng)


@dataclass(frozen=True)
class VoronoiHop2Scene:
    cfg: HopConfig
    cap: CapAnnulus
    av_parent_density: float
    hardcore: float

    def success(self, rng) -> bool:
        cap = self.cap
        while True:
            avs = sample_matern_on_cap(self.av_parent_density, self.hardcore,
                                       cap.transmitter_shell_radius, cap.boundary_angle, rng)
            if len(avs):
                break
        d = avs.distances_to_axis_point(cap.receiver_radius)
        ref = int(rng.integers(len(d)))
        return _decide(self.cfg, d[ref], np.delete(d, ref), rng)


def _count(scene, master_seed: int, hop: int, start: int, stop: int) -> int:
    return sum(bool(scene.success(trial_rng(master_seed, hop, t))) for t in range(start, stop))


def run_trials(scene, trials: int, master_seed: int, hop: int, workers: Optional[int] = None) -> Estimate:
    """Bernoulli estimate of ``scene.success`` over ``trials`` independent trials."""
    workers = min(resolve_workers(workers), trials)
    if workers == 1:
        successes = _count(scene, master_seed, hop, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count, scene, master_seed, hop, int(a), int(b))
                       for a, b in zip(bounds[:-1], bounds[1:])]
            successes = sum(f.result() for f in futures)
    return Estimate.from_counts(successes, trials)


def hop_scene(system, hop: int, mode: str = "cap_approx", scope: str = "cell"):
    cfg, cap, dep = system.hop(hop), system.cap(hop), system.deployment
    if mode == "cap_approx":
        if hop == 1:
            return LinkScene(cfg, cap, dep.gu_tx_density)
        hardcore = dep.hardcore_distance if dep.hardcore_distance > 0 else None
        return LinkScene(cfg, cap, dep.av_parent_density, hardcore=hardcore)
    if hop == 1:
        return VoronoiHop1Scene(cfg, system.shell.earth_radius, system.shell.av_radius,
                                dep.av_parent_density, dep.hardcore_distance, dep.gu_tx_density,
                                dep.av_density, scope)
    return VoronoiHop2Scene(cfg, cap, dep.av_parent_density, dep.hardcore_distance)


def simulate_hop1(system, plan: TrialPlan) -> Estimate:
    scene = hop_scene(system, 1, plan.mode, plan.interference_scope)
    return run_trials(scene, plan.trials, plan.master_seed, 1, plan.workers)


def simulate_hop2(system, plan: TrialPlan) -> Estimate:
    scene = hop_scene(system, 2, plan.mode, plan.interference_scope)
    return run_trials(scene, plan.trials, plan.master_seed, 2, plan.workers)


def combine(e1: Estimate, e2: Estimate):
    """Two-hop product with first-order error propagation."""
    from .analytic import ConnectivityResult

    p = e1.mean * e2.mean
    se = math.sqrt((e2.mean * e1.stderr) ** 2 + (e1.mean * e2.stderr) ** 2)
    return ConnectivityResult(
        p1=e1.mean, p2=e2.mean, p_overall=p, method="simulation",
        stderr={"p1": e1.stderr, "p2": e2.stderr, "p_overall": se},
        ci95={"p1": e1.ci95, "p2": e2.ci95,
              "p_overall": (max(0.0, p - Z95 * se), min(1.0, p + Z95 * se))},
    )


def simulate_overall(system, plan: TrialPlan):
    return combine(simulate_hop1(system, plan), simulate_hop2(system, plan))


def simulate_link(cfg: HopConfig, cap: CapAnnulus, density: float, trials: int, master_seed: int = 0,
                  r0: Optional[float] = None, hardcore: Optional[float] = None,
                  workers: Optional[int] = None) -> Estimate:
    """Single-hop estimate on an arbitrary cap, optionally at a fixed link length."""
    return run_trials(LinkScene(cfg, cap, density, hardcore, r0), trials, master_seed, 0, workers)
