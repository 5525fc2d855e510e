"""Sector zero counts concentrate on the angular fraction as the degree
grows; the study tabulates the deviation against two reference envelopes."""
import numpy as np

from opucz.mc import coeff_model, convergence_study
from opucz.opuc import alpha_family
from opucz.zerocount import Region

region = Region.sector(0.5, 0.0, np.pi / 2)  # quarter plane outside r=0.5
rows = convergence_study(alpha_family("zero"), coeff_model("gaussian"),
                         region, ns=[25, 50, 100], trials=300, seed=9)

print("quarter sector, angular fraction 0.25")
print("   n   E|N/n - 1/4|   Var[N]/n^2   sqrt(log n/n)")
for r in rows:
    print(f" {r.n:4d}   {r.mean_abs_dev:.5f}      {r.var_over_n2:.6f}"
          f"     {r.envelope_sqrtlogn:.4f}")

mean_counts = [r.stats.mean for r in rows]
print("\nmean counts:", ", ".join(f"{m:.2f}" for m in mean_counts),
      " (vs n/4 =", ", ".join(f"{r.n / 4:.2f}" for r in rows) + ")")
