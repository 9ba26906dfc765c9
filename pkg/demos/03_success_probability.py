"""
Link success probability in closed form
=======================================

With integer Nakagami parameter m, the probability that a link of length r0
clears its SINR threshold is a truncated Bell-polynomial sum built from a
noise term and a handful of one-dimensional interference integrals. Below
we unpack those ingredients for the ground-to-air hop and average over the
link length.
"""
import dataclasses

import numpy as np

from gass import asp_on_cap, conditional_success, default_config
from gass.analytic import proposition_terms

system = default_config().system
cfg, cap, lam = system.hop1, system.cap(1), system.interferer_density(1)

###############################################################################
# Ingredients at the cell edge.
terms = proposition_terms(cfg, cap, lam, cap.r_max)
print(f"noise term        {terms.s_dot:.3e}")
print(f"interference rate {terms.r_dot:.3e} per m^2 of squared distance")
print(f"eps               {terms.epsilon:.3e}")
print(f"eps_l             {', '.join(f'{e:.3e}' for e in terms.epsilon_l)}")
print(f"partition-sum arguments {terms.bell_arguments}")

###############################################################################
# Conditional success along the cell radius, then its average.
for r0 in np.linspace(cap.r_min, cap.r_max, 5):
    print(f"r0 = {r0:8.2f} m   P = {conditional_success(cfg, cap, lam, r0):.4f}")
print(f"average over the cell: {asp_on_cap(cfg, cap, lam):.4f}")

###############################################################################
# Larger m means milder fading on the wanted link and on every
# interferer, so the two effects largely cancel in the average.
for m in (1, 2, 3, 5, 8):
    c = dataclasses.replace(cfg, nakagami_m=m)
    print(f"m = {m}: average success {asp_on_cap(c, cap, lam):.4f}")
