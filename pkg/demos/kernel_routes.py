"""Evaluate the reproducing kernel and its derivative companions by both
routes (direct prefix sums vs the two-term closed form) and watch them
agree everywhere the closed form is safe."""
import numpy as np

from opucz.kernel import kernel_cd, kernel_direct
from opucz.opuc import alpha_family

basis = alpha_family("decay:1:1").build(31)
rng = np.random.default_rng(5)

print(" z, w pairs: direct vs closed-form route, n = 30")
for _ in range(5):
    z = 1.6 * rng.random() * np.exp(2j * np.pi * rng.random())
    w = 1.6 * rng.random() * np.exp(2j * np.pi * rng.random())
    if abs(1 - z * np.conj(w)) <= 0.1:
        continue  # closed form divides by this; routes diverge by design
    d = kernel_direct(basis, z, w, n=30)
    c = kernel_cd(basis, z, w, n=30)
    rel = max(abs(d.K - c.K), abs(d.K01 - c.K01), abs(d.K11 - c.K11))
    rel /= max(1.0, abs(d.K))
    print(f"  |z|={abs(z):.3f} |w|={abs(w):.3f}  route gap {rel:.2e}")

# K01 really is d/d(conj w) of K: central finite difference
z, w, h = 0.3 + 0.2j, -0.1 + 0.4j, 1e-5
k = kernel_direct(basis, z, w, n=30)
fd = (kernel_direct(basis, z, w + h, n=30).K
      - kernel_direct(basis, z, w - h, n=30).K) / (2 * h)
print(f"\nK01 = {k.K01:.10f}")
print(f"FD  = {fd:.10f}   (step {h:g} along the real w-axis)")
