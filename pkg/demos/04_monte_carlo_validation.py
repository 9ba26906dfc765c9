"""
Checking the closed form by simulation
======================================

The cap_approx simulator draws exactly the scene the closed form assumes:
a link length from the cap distance law and independent interferers on the
cap. Agreement within a couple of standard errors is expected. The
full_voronoi mode instead builds the actual Voronoi cells, and the gap it
shows measures the cap approximation itself.
"""
from gass import TrialPlan, default_config, overall_connectivity
from gass.simcore import simulate_hop1, simulate_hop2

rc = default_config()
for hardcore in (0.0, 100.0, 200.0):
    system = rc.with_value("hardcore_distance", hardcore).system
    ana = overall_connectivity(system)
    plan = TrialPlan(trials=5000, master_seed=2024)
    s1, s2 = simulate_hop1(system, plan), simulate_hop2(system, plan)
    print(f"hard core {hardcore:5.0f} m | P1 {ana.p1:.4f} vs {s1.mean:.4f} +- {s1.halfwidth:.4f}"
          f" | P2 {ana.p2:.4f} vs {s2.mean:.4f} +- {s2.halfwidth:.4f}")

###############################################################################
# Diagnostic: real Voronoi cells instead of equal-area caps. Slower, so a
# few hundred trials only.
plan = TrialPlan(trials=300, master_seed=7, mode="full_voronoi")
system = rc.system
ana = overall_connectivity(system)
v1, v2 = simulate_hop1(system, plan), simulate_hop2(system, plan)
print(f"\nfull_voronoi: P1 {v1.mean:.3f} (cap model {ana.p1:.3f}), P2 {v2.mean:.3f} (cap model {ana.p2:.3f})")
