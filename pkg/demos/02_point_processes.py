"""
Ground users and aerial vehicles as point processes
===================================================

Ground users form a Poisson process; aerial vehicles a Matérn type-II
hard-core process, so no two AVs are closer than the hard-core distance.
Every user associates with the nearest AV, which tiles the ground into
Voronoi cells.
"""
import numpy as np

from gass.geom3d import EARTH_RADIUS
from gass.pointproc import (
    cap_area,
    nearest_association,
    retention_probability,
    sample_hppp_on_cap,
    sample_matern_on_cap,
    thin_by_activity,
)

rng = np.random.default_rng(1)
ra = EARTH_RADIUS + 1e3
angle = 5e3 / ra  # 5 km cap

###############################################################################
# Thinning strength. Retained density is lambda0 * p_a, with p_a falling as
# the hard core grows.
for d in (0, 50, 100, 200, 400):
    print(f"hard core {d:4d} m: retention {retention_probability(5e-6, d):.4f}")

###############################################################################
# One realisation of each layer on a 5 km cap.
avs = sample_matern_on_cap(5e-6, 100.0, ra, angle, rng)
gus = sample_hppp_on_cap(50e-6, EARTH_RADIUS, angle * ra / EARTH_RADIUS, rng)
active = thin_by_activity(gus, 0.05, rng)
print(f"\n{len(avs)} AVs (expected {5e-6 * retention_probability(5e-6, 100.0) * cap_area(ra, angle):.1f})")
print(f"{len(gus)} ground users, {len(active)} transmitting")

diff = avs.points[:, None] - avs.points[None]
dist = np.sqrt((diff**2).sum(-1))
np.fill_diagonal(dist, np.inf)
print(f"closest AV pair: {dist.min():.1f} m")

###############################################################################
# Nearest-AV association and the resulting cell sizes.
owner = nearest_association(gus, avs)
sizes = np.bincount(owner, minlength=len(avs))
print(f"users per AV: mean {sizes.mean():.2f}, max {sizes.max()}, empty cells {np.sum(sizes == 0)}")
