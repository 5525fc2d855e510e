"""Zero intensities of Gaussian random combinations of the basis.

For P(z) = sum_{k<=n} eta_k phi_k(z) with i.i.d. standard complex Gaussian
coefficients, the one-point zero intensity is

    rho1 = (K11 K - |K01|^2) / (pi K^2)        (all kernels at (z, z))

and the two-point intensity factors as

    pi^2 rho2(z, w) = f(z, w) f(w, z) + g(z, w) g(w, z)

with, writing D = K(z,z) K(w,w) - |K(z,w)|^2,

    f(z,w) = K11(z,z)/sqrt(D)
             + 2 Re[K(z,w) conj(K01(z,z)) K01(w,z)] / D^(3/2)
             - [K(w,w)|K01(z,z)|^2 + K(z,z)|K01(w,z)|^2] / D^(3/2)

    g(z,w) = K11(z,w)/sqrt(D)
             + [K(z,w) conj(K01(z,z)) K01(w,w)
                + conj(K(z,w) K01(w,z)) K01(z,w)] / D^(3/2)
             - [K(w,w) conj(K01(z,z)) K01(z,w)
                + K(z,z) conj(K01(w,z)) K01(w,w)] / D^(3/2).

The same quantity is also the permanental form Perm(C - B^H A^{-1} B) /
(pi^2 det A) on the 2x2 kernel blocks A = [K], B = [K01], C = [K11];
rho2_n_matrix keeps that second route alive as an independent cross-check.

As n grows (for coefficient families in the ratio-asymptotics regime) the
intensities approach basis-independent limits off the unit circle:

    rho1 -> 1 / (pi (1 - |z|^2)^2)
    rho2 -> (1/pi^2) [ 1/((1-|z|^2)^2 (1-|w|^2)^2) - 1/|1 - z conj(w)|^4 ]

the latter for z, w strictly on the same side of the circle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import MixedSides, OnUnitCircle, UsageError
from .kernel import kernel_cd, kernel_direct
from .opuc import OpucBasis

PAIR_COINCIDENCE = 1e-9
DIRECT_FALLBACK = 0.1
CIRCLE_GUARD = 1e-12


@dataclass
class IntensityValue:
    value: float
    order: Union[int, str]  # truncation degree, or "limit"


def _kernel_at(basis: OpucBasis, z, w, n: int):
    # closed form away from its singular curve, direct sums near it
    if abs(1.0 - z * np.conj(w)) <= DIRECT_FALLBACK or n + 1 > basis.order:
        return kernel_direct(basis, z, w, n=n)
    return kernel_cd(basis, z, w, n=n)


def rho1_n(basis: OpucBasis, z, n: int = None) -> IntensityValue:
    """One-point intensity at finite truncation degree n (default: basis order)."""
    if n is None:
        n = basis.order
    if n < 1:
        raise UsageError("intensity needs degree >= 1")
    z = complex(z)
    k = kernel_direct(basis, z, z, n=n)
    K = k.K.real
    val = (k.K11.real * K - abs(k.K01) ** 2) / (math.pi * K * K)
    return IntensityValue(float(val), n)


def _pair_kernels(basis: OpucBasis, z, w, n: int):
    kzz = _kernel_at(basis, z, z, n)
    kww = _kernel_at(basis, w, w, n)
    kzw = _kernel_at(basis, z, w, n)
    kwz = _kernel_at(basis, w, z, n)
    return kzz, kww, kzw, kwz


def _fg(kzz, kww, kzw, kwz, D):
    """f(z,w) and g(z,w) given the four kernel evaluations."""
    rD = math.sqrt(D)
    rD3 = rD * D
    f = (kzz.K11.real / rD
         + 2.0 * (kzw.K * np.conj(kzz.K01) * kwz.K01).real / rD3
         - (kww.K.real * abs(kzz.K01) ** 2 + kzz.K.real * abs(kwz.K01) ** 2) / rD3)
    g = (kzw.K11 / rD
         + (kzw.K * np.conj(kzz.K01) * kww.K01
            + np.conj(kzw.K * kwz.K01) * kzw.K01) / rD3
         - (kww.K * np.conj(kzz.K01) * kzw.K01
            + kzz.K * np.conj(kwz.K01) * kww.K01) / rD3)
    return f, g


def rho2_n(basis: OpucBasis, z, w, n: int = None) -> IntensityValue:
    """Two-point intensity at finite truncation degree n.

    Coincident pairs (|z - w| < 1e-9) return exactly 0: the intensity
    vanishes there and the raw formula would form 0/0.
    """
    if n is None:
        n = max(1, basis.order - 1)
    if n < 1:
        raise UsageError("intensity needs degree >= 1")
    z = complex(z)
    w = complex(w)
    if abs(z - w) < PAIR_COINCIDENCE:
        return IntensityValue(0.0, n)
    kzz, kww, kzw, kwz = _pair_kernels(basis, z, w, n)
    D = kzz.K.real * kww.K.real - abs(kzw.K) ** 2
    if D <= 0.0:
        # Cauchy-Schwarz defect at roundoff level: numerically coincident
        return IntensityValue(0.0, n)
    fzw, gzw = _fg(kzz, kww, kzw, kwz, D)
    fwz, gwz = _fg(kww, kzz, kwz, kzw, D)
    val = (fzw * fwz + (gzw * gwz).real) / math.pi**2
    return IntensityValue(float(val), n)


def rho2_n_matrix(basis: OpucBasis, z, w, n: int = None) -> IntensityValue:
    """Permanental route: Perm(C - B^H A^{-1} B) / (pi^2 det A).

    Independent recombination of the same kernel blocks; kept separate from
    rho2_n so the two derivations check each other.
    """
    if n is None:
        n = max(1, basis.order - 1)
    if n < 1:
        raise UsageError("intensity needs degree >= 1")
    z = complex(z)
    w = complex(w)
    if abs(z - w) < PAIR_COINCIDENCE:
        return IntensityValue(0.0, n)
    kzz, kww, kzw, kwz = _pair_kernels(basis, z, w, n)
    if kzz.K.real * kww.K.real - abs(kzw.K) ** 2 <= 0.0:
        return IntensityValue(0.0, n)
    A = np.array([[kzz.K, kzw.K], [kwz.K, kww.K]])
    B = np.array([[kzz.K01, kzw.K01], [kwz.K01, kww.K01]])
    C = np.array([[kzz.K11, kzw.K11], [kwz.K11, kww.K11]])
    M = C - B.conj().T @ np.linalg.solve(A, B)
    perm = M[0, 0] * M[1, 1] + M[0, 1] * M[1, 0]
    det = np.linalg.det(A)
    val = perm.real / (math.pi**2 * det.real)
    return IntensityValue(float(val), n)


def _check_off_circle(z: complex) -> float:
    d = abs(z) - 1.0
    if abs(d) < CIRCLE_GUARD:
        raise OnUnitCircle(f"|z| = {abs(z):.17g} is on the unit circle")
    return d


def rho1_limit(z) -> IntensityValue:
    """Limiting one-point intensity 1/(pi (1 - |z|^2)^2), off the circle."""
    z = complex(z)
    _check_off_circle(z)
    val = 1.0 / (math.pi * (1.0 - abs(z) ** 2) ** 2)
    return IntensityValue(float(val), "limit")


def rho2_limit(z, w) -> IntensityValue:
    """Limiting two-point intensity for z, w on the same side of the circle."""
    z = complex(z)
    w = complex(w)
    dz = _check_off_circle(z)
    dw = _check_off_circle(w)
    if (dz > 0) != (dw > 0):
        raise MixedSides("points must be both inside or both outside the circle")
    if abs(z - w) < PAIR_COINCIDENCE:
        return IntensityValue(0.0, "limit")
    term1 = 1.0 / ((1.0 - abs(z) ** 2) ** 2 * (1.0 - abs(w) ** 2) ** 2)
    term2 = 1.0 / abs(1.0 - z * np.conj(w)) ** 4
    return IntensityValue(float((term1 - term2) / math.pi**2), "limit")
