"""Dense complex polynomials in the monomial basis.

Coefficients are stored ascending (c[0] + c[1] z + ... + c[n] z^n) and the
nominal degree is len(coeffs) - 1 even when the top coefficient is zero;
trailing zeros are significant and never trimmed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class ComplexPoly:
    coeffs: np.ndarray = field()

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        self.coeffs = c

    @property
    def nominal_degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return eval_poly(self, z)


def eval_poly(p: ComplexPoly, z):
    """Horner evaluation; z may be a scalar or an ndarray."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, p.coeffs[-1])
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(p: ComplexPoly) -> ComplexPoly:
    """Coefficient-shift derivative; the derivative of a constant is [0]."""
    if p.nominal_degree == 0:
        return ComplexPoly(np.zeros(1, dtype=np.complex128))
    k = np.arange(1, len(p.coeffs))
    return ComplexPoly(p.coeffs[1:] * k)


def star(p: ComplexPoly) -> ComplexPoly:
    """Reversal about the nominal degree: coefficient k becomes conj(c[n-k]).

    On |z| = 1 this is z^n * conj(p(1/conj(z))).  Applying it twice gives the
    original polynomial back exactly (coefficient-wise).
    """
    return ComplexPoly(np.conj(p.coeffs[::-1]))
