"""Connectivity of aerial-vehicle-relayed ground-to-satellite links.

Closed-form stochastic-geometry model of the two-hop link and a Monte Carlo
simulator on spherical geometry to check it against.
"""
from .analytic import ConnectivityResult, asp, asp_on_cap, conditional_success, overall_connectivity
from .channel import HopConfig
from .config import RunConfig, SystemConfig, default_config, load_config, parse_mapping
from .geom3d import CapAnnulus, ShellGeometry, beamwidth, hop1_cap, hop2_cap
from .pointproc import DeploymentConfig, retention_probability
from .simcore import Estimate, TrialPlan, simulate_hop1, simulate_hop2, simulate_overall

__version__ = "0.1.0"

__all__ = [
    "CapAnnulus",
    "ConnectivityResult",
    "DeploymentConfig",
    "Estimate",
    "HopConfig",
    "RunConfig",
    "ShellGeometry",
    "SystemConfig",
    "TrialPlan",
    "asp",
    "asp_on_cap",
    "beamwidth",
    "conditional_success",
    "default_config",
    "hop1_cap",
    "hop2_cap",
    "load_config",
    "overall_connectivity",
    "parse_mapping",
    "retention_probability",
    "simulate_hop1",
    "simulate_hop2",
    "simulate_overall",
]
