"""Amplitude sine transforms, trace signs, Rouche ratios, p-adic and quaternion checks."""
from fractions import Fraction

import numpy as np

from zetalab.adic import exhaustive_dominance_check, prevaluation_vpq, vpq_bound_check
from zetalab.positivity import (builtin_amplitudes, lemma4_audit, plus_amplitude_build,
                                rouche_compare, trace_positivity_audit)
from zetalab.quaternion import herbrand_density, inversion_invariance_mc

fam = builtin_amplitudes()
grid = np.linspace(0.1, 50, 50)
for name, A in sorted(fam.items()):
    r = lemma4_audit(A, grid)
    print(f"{name:14s} min S+ = {r['min']:.3e} at a = {r['argmin']:.2f}  {r['verdict']}")

rows = trace_positivity_audit(fam["gaussian"])
print("minus trace signs over the 24-point grid:",
      sum(r["verdict"] == "PASS" for r in rows), "positive of", len(rows))

print("plus amplitude build:", plus_amplitude_build().report())
for row in rouche_compare([2.0, 3.0, 0.5 + 10j])["points"]:
    print("s =", complex(*row["s"]), " ratio", round(row["ratio"], 5),
          " shifted kernel", row["ratio_shifted"])

print("v_23(12) =", prevaluation_vpq(12, 2, 3))
print("bound check at x=3, y=2:", vpq_bound_check(3, 2, 2, 3))
print("dominance at height 50, p=3:", exhaustive_dominance_check(3, 50))

r = inversion_invariance_mc(herbrand_density, (2.0, 4.0), 200000, seed=1)
print(f"inversion invariance: {r.lhs:.5f} vs {r.rhs:.5f}, z = {r.z:.2f}")
