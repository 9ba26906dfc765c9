"""
Sweeps and the optimal aerial density
=====================================

More aerial vehicles shrink each cell, so fewer ground users interfere on
the first hop, but more AVs share the satellite beam on the second. The
end-to-end probability therefore peaks at an intermediate density. The
bundled configs drive the same sweeps as the ``gass sweep`` command.
"""
from importlib.resources import files

import numpy as np

from gass import load_config, overall_connectivity

rc = load_config(files("gass") / "data" / "fig2a.ini")
values = rc.sweep.values
res = [overall_connectivity(rc.with_value(rc.sweep.variable, v).system) for v in values]
for v, r in zip(values, res):
    print(f"lambda_a0 = {v:4.1f} /km^2   P1 {r.p1:.4f}   P2 {r.p2:.4f}   overall {r.p_overall:.4f}")
best = int(np.argmax([r.p_overall for r in res]))
print(f"best parent density on this grid: {values[best]:g} /km^2")

###############################################################################
# Thresholds. Raising either SINR threshold only hurts its own hop.
for name in ("fig2c_theta1.ini", "fig2c_theta2.ini"):
    rc = load_config(files("gass") / "data" / name)
    ends = [overall_connectivity(rc.with_value(rc.sweep.variable, v).system) for v in rc.sweep.values[::5]]
    print(name, " ".join(f"{r.p_overall:.3f}" for r in ends))

###############################################################################
# The same sweep from a shell:
#
#   gass sweep --config fig2a.ini --sweep-var hardcore_distance --sweep-values 0,100,200
