"""
Coverage caps of the two hops
=============================

Each receiver serves the transmitters inside a spherical cap. For the
ground-to-air hop the cap has the mean Voronoi cell area of the aerial
layer; for the air-to-satellite hop it is the beam footprint on the aerial
shell. Here we build both and look at the link-distance law they imply.
"""
import math

import numpy as np

from gass import ShellGeometry, beamwidth, hop1_cap, hop2_cap
from gass.pointproc import retention_probability

shell = ShellGeometry(earth_radius=6.371e6, av_altitude=1e3, sat_altitude=600e3)

# 5 parent AVs per km^2 thinned with a 100 m hard core
lam_a = 5e-6 * retention_probability(5e-6, 100.0)
cap1 = hop1_cap(shell, lam_a)
print(f"AV density after thinning: {lam_a * 1e6:.3f} /km^2")
print(f"hop 1 link distance in [{cap1.r_min:.1f}, {cap1.r_max:.2f}] m, cap area {cap1.area / 1e6:.4f} km^2")

###############################################################################
# The satellite beam. A 20 m dish at 30 GHz gives a narrow pencil beam, so
# the footprint is tiny and the AV-satellite distances barely vary.
bw = beamwidth(30e9, 20.0, 70.0)
cap2 = hop2_cap(shell, bw)
print(f"\nbeamwidth {math.degrees(bw):.4f} deg")
print(f"hop 2 distance spread r_max - r_min = {cap2.r_max - cap2.r_min:.4f} m")
print(f"footprint area {cap2.area / 1e6:.3f} km^2, boundary angle {cap2.boundary_angle:.3e} rad")

###############################################################################
# Squared distance is uniform on the cap, so the density grows linearly in r.
r = np.linspace(cap1.r_min, cap1.r_max, 5)
for ri, fi, Fi in zip(r, cap1.pdf(r), cap1.cdf(r)):
    print(f"r = {ri:8.2f} m   f(r) = {fi:.5f} /m   F(r) = {Fi:.3f}")

###############################################################################
# Widening the beam grows the footprint until the edge grazes the aerial shell.
for frac in (0.01, 0.1, 0.5, 0.9):
    b = frac * math.asin(shell.av_radius / shell.sat_radius)
    c = hop2_cap(shell, b)
    print(f"beam {math.degrees(b):7.3f} deg -> footprint {c.area / 1e6:12.1f} km^2")
