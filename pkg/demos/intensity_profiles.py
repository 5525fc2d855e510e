"""Radial profiles of the one- and two-point zero intensities at finite
degree next to their degree-infinity limits."""
import numpy as np

from opucz.intensity import rho1_limit, rho1_n, rho2_limit, rho2_n
from opucz.opuc import alpha_family

fam = alpha_family("decay:1:1")

print("rho1 along the positive real axis (limit in last column)")
print("   r      n=20        n=80        n=320       limit")
bases = {n: fam.build(n + 1) for n in (20, 80, 320)}
for r in (0.0, 0.3, 0.6, 0.8):
    row = [rho1_n(bases[n], r, n=n).value for n in (20, 80, 320)]
    print(f"  {r:.1f}  " + "  ".join(f"{v:10.6f}" for v in row)
          + f"  {rho1_limit(r).value:10.6f}")

print("\nrho2 at the fixed pair z=0.2, w=-0.3")
lim = rho2_limit(0.2, -0.3).value
b = fam.build(161)
for n in (20, 40, 80, 160):
    v = rho2_n(b, 0.2, -0.3, n=n).value
    print(f"  n={n:<4d} rho2={v:.8f}   |err|={abs(v - lim):.2e}")
print(f"  limit     {lim:.8f}")

# zeros repel: the pair intensity vanishes identically on the diagonal
print(f"\nrho2_n(z, z) at z=0.4+0.1j: {rho2_n(b, 0.4 + 0.1j, 0.4 + 0.1j, n=80).value}")
