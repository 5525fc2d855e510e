"""Orthonormal polynomials on the unit circle.

A basis is generated from its recurrence coefficients (alpha_0, alpha_1, ...),
each of modulus < 1, by the forward recursion

    phi_{j+1}(z) = (z phi_j(z) - conj(alpha_j) phi_j*(z)) / sqrt(1 - |alpha_j|^2)

starting from phi_0 = 1, where phi_j* is the degree-j coefficient reversal of
phi_j.  The leading coefficient of phi_k is

    kappa_k = prod_{j<k} (1 - |alpha_j|^2)^(-1/2),

a nondecreasing sequence with kappa_0 = 1.  Bases can also be produced from a
weight on [0, 2pi): trigonometric moments are computed by adaptive trapezoid
quadrature and the coefficients are read off a Levinson-style recursion on the
monic polynomials.  alpha identically zero reproduces the monomials z^k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .cpoly import ComplexPoly, eval_poly, derivative, star
from .errors import (
    InsufficientCoefficients,
    InvalidVerblunsky,
    NotPositiveDefinite,
    QuadratureNotConverged,
    UsageError,
)

LEVINSON_PIVOT_FLOOR = 1e-13
MOMENT_TOL = 1e-10
MOMENT_NODE_CAP = 2 ** 22

# fixed probe ring |z| = 1/2 used by the regularity report
_PROBES = 0.5 * np.exp(2j * np.pi * np.arange(16) / 16)


def _check_alphas(alphas) -> np.ndarray:
    a = np.atleast_1d(np.asarray(alphas, dtype=np.complex128))
    if a.size and np.max(np.abs(a)) >= 1.0:
        j = int(np.argmax(np.abs(a) >= 1.0))
        raise InvalidVerblunsky(f"|alpha_{j}| = {abs(a[j]):.6g} >= 1")
    return a


@dataclass
class OpucBasis:
    """Orthonormal basis phi_0..phi_n with its reversals and bookkeeping.

    coeff_matrix row k holds the coefficients of phi_k padded to order+1
    columns, so a random combination sum eta_k phi_k has monomial
    coefficients eta @ coeff_matrix.
    """

    phis: list
    phistars: list
    kappas: np.ndarray
    alphas: np.ndarray
    _dphis: Optional[list] = field(default=None, repr=False)
    _dphistars: Optional[list] = field(default=None, repr=False)
    _coeff_matrix: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.phis) - 1

    @property
    def dphis(self) -> list:
        if self._dphis is None:
            self._dphis = [derivative(p) for p in self.phis]
        return self._dphis

    @property
    def dphistars(self) -> list:
        if self._dphistars is None:
            self._dphistars = [derivative(p) for p in self.phistars]
        return self._dphistars

    @property
    def coeff_matrix(self) -> np.ndarray:
        if self._coeff_matrix is None:
            m = np.zeros((self.order + 1, self.order + 1), dtype=np.complex128)
            for k, p in enumerate(self.phis):
                m[k, : k + 1] = p.coeffs
            self._coeff_matrix = m
        return self._coeff_matrix

    def values_at(self, z: complex, upto: int = None, derivs: bool = False):
        """phi_j(z) and phi_j*(z) for j = 0..upto, by recursion in value space.

        Monomial coefficients of phi_j can dwarf the polynomial's value by
        many orders of magnitude (constant families reach 1e21 by degree 100),
        so Horner on the stored coefficients loses everything to cancellation.
        Running the recursion on values at the point is O(upto) and stable.
        Returns (phi, phistar) or, with derivs, (phi, phistar, dphi, dphistar).
        """
        m = self.order if upto is None else upto
        if m < 0 or m > self.order:
            raise UsageError(f"degree {m} not held by a degree-{self.order} basis")
        a = self.alphas
        phi = np.empty(m + 1, dtype=np.complex128)
        ps = np.empty(m + 1, dtype=np.complex128)
        phi[0] = ps[0] = 1.0
        if derivs:
            dphi = np.zeros(m + 1, dtype=np.complex128)
            dps = np.zeros(m + 1, dtype=np.complex128)
        for j in range(m):
            norm = math.sqrt(1.0 - abs(a[j]) ** 2)
            if derivs:
                dphi[j + 1] = (phi[j] + z * dphi[j] - np.conj(a[j]) * dps[j]) / norm
                dps[j + 1] = (dps[j] - a[j] * (phi[j] + z * dphi[j])) / norm
            phi[j + 1] = (z * phi[j] - np.conj(a[j]) * ps[j]) / norm
            ps[j + 1] = (ps[j] - a[j] * z * phi[j]) / norm
        if derivs:
            return phi, ps, dphi, dps
        return phi, ps


def szego_build(alphas, n: int) -> OpucBasis:
    """Run the forward recursion up to degree n.

    Needs at least n coefficients; extras are ignored.  With all-zero
    coefficients the result is exactly the monomial basis.
    """
    a = _check_alphas(alphas)
    if n < 0:
        raise UsageError("degree must be >= 0")
    if a.size < n:
        raise InsufficientCoefficients(f"need {n} coefficients, got {a.size}")
    a = a[:n]

    phis = [ComplexPoly(np.ones(1))]
    stars = [ComplexPoly(np.ones(1))]
    kappas = [1.0]
    for j in range(n):
        norm = math.sqrt(1.0 - abs(a[j]) ** 2)
        prev = phis[j].coeffs
        nxt = np.zeros(j + 2, dtype=np.complex128)
        nxt[1:] = prev                      # z * phi_j
        nxt[: j + 1] -= np.conj(a[j]) * stars[j].coeffs
        nxt /= norm
        phis.append(ComplexPoly(nxt))
        stars.append(star(phis[-1]))
        kappas.append(kappas[-1] / norm)
    return OpucBasis(phis, stars, np.asarray(kappas, dtype=float), a)


def kappa_product(alphas, k: int) -> float:
    """Leading coefficient kappa_k from the product formula."""
    a = _check_alphas(alphas)
    if k < 0:
        raise UsageError("k must be >= 0")
    if a.size < k:
        raise InsufficientCoefficients(f"need {k} coefficients, got {a.size}")
    out = 1.0
    for j in range(k):
        out /= math.sqrt(1.0 - abs(a[j]) ** 2)
    return out


@dataclass
class RegularityReport:
    """Per-degree diagnostics for k = 1..n.

    epsilons[k-1] = log(kappa_k)/k; the sequence tending to 0 is the
    regularity proxy.  nevai_proxy[k-1] = max |phi_k/phi_k*| over a fixed
    probe ring at |z| = 1/2; tending to 0 signals the ratio-asymptotics
    regime that the limiting intensity formulas rely on.
    """

    epsilons: np.ndarray
    nevai_proxy: np.ndarray


def regularity_report(basis: OpucBasis) -> RegularityReport:
    n = basis.order
    if n < 1:
        raise UsageError("report needs a basis of degree >= 1")
    eps = np.array([math.log(basis.kappas[k]) / k for k in range(1, n + 1)])
    prox = np.empty(n)
    for k in range(1, n + 1):
        num = eval_poly(basis.phis[k], _PROBES)
        den = eval_poly(basis.phistars[k], _PROBES)
        prox[k - 1] = np.max(np.abs(num / den))
    return RegularityReport(eps, prox)


# ---------------------------------------------------------------------------
# weights, moments, and the inverse problem
# ---------------------------------------------------------------------------


@dataclass
class WeightSpec:
    """A nonnegative weight on [0, 2pi), known up to normalization.

    kinds: "lebesgue" (constant), "cosine_bump" ((1 + cos theta)/(2 pi)),
    "generalized_jacobi" (constant base times prod |theta - theta_j|^e_j,
    with the angle difference taken literally on [0, 2pi)).
    """

    kind: str
    thetas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    exponents: np.ndarray = field(default_factory=lambda: np.zeros(0))
    base: float = 1.0

    @staticmethod
    def lebesgue() -> "WeightSpec":
        return WeightSpec("lebesgue")

    @staticmethod
    def cosine_bump() -> "WeightSpec":
        return WeightSpec("cosine_bump")

    @staticmethod
    def generalized_jacobi(thetas, exponents, base: float = 1.0) -> "WeightSpec":
        t = np.atleast_1d(np.asarray(thetas, dtype=float))
        e = np.atleast_1d(np.asarray(exponents, dtype=float))
        if t.shape != e.shape:
            raise UsageError("thetas and exponents must pair up")
        if np.any(e <= 0):
            raise UsageError("jacobi exponents must be positive")
        if np.any((t < 0) | (t >= 2 * np.pi)):
            raise UsageError("jacobi angles must lie in [0, 2pi)")
        if base <= 0:
            raise UsageError("base level must be positive")
        return WeightSpec("generalized_jacobi", t, e, base)

    def evaluate(self, theta) -> np.ndarray:
        th = np.asarray(theta, dtype=float)
        if self.kind == "lebesgue":
            return np.full(th.shape, 1.0 / (2 * np.pi))
        if self.kind == "cosine_bump":
            return (1.0 + np.cos(th)) / (2 * np.pi)
        if self.kind == "generalized_jacobi":
            w = np.full(th.shape, self.base)
            for t0, e0 in zip(self.thetas, self.exponents):
                w = w * np.abs(th - t0) ** e0
            return w
        raise UsageError(f"unknown weight kind {self.kind!r}")


def moments_from_weight(w: WeightSpec, count: int, nodes: int = 1024) -> np.ndarray:
    """Trigonometric moments c_k = int exp(-ik theta) w(theta) dtheta, k=0..count.

    Normalized so c_0 = 1.  The periodic trapezoid rule (a single FFT per
    refinement level) is doubled until no returned moment moves by more than
    1e-10; refinement past the node cap raises QuadratureNotConverged.
    """
    if count < 0:
        raise UsageError("count must be >= 0")
    # need well over 2*count samples before the DFT rows stop aliasing
    floor = max(16, nodes, 4 * (count + 1))
    m = 1 << (floor - 1).bit_length()

    def level(nn: int) -> np.ndarray:
        th = 2 * np.pi * np.arange(nn) / nn
        vals = w.evaluate(th)
        # c_k = (2 pi / nn) * sum w(th_m) exp(-i k th_m): rows of the DFT
        spec = np.fft.fft(vals) * (2 * np.pi / nn)
        return spec[: count + 1] / spec[0].real

    prev = level(m)
    while True:
        m *= 2
        if m > MOMENT_NODE_CAP:
            raise QuadratureNotConverged(
                f"moment refinement stalled above {MOMENT_NODE_CAP} nodes")
        cur = level(m)
        if np.max(np.abs(cur - prev)) < MOMENT_TOL:
            return cur
        prev = cur


def levinson_verblunsky(moments) -> np.ndarray:
    """Recurrence coefficients from trigonometric moments c_0..c_m.

    Runs the monic recursion Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k*,
    reading each alpha_k off the orthogonality condition
    conj(alpha_k) = <z Phi_k, 1> / ||Phi_k||^2 and each squared norm off the
    pivot update E_{k+1} = (1 - |alpha_k|^2) E_k.  A pivot at or below 1e-13
    means the moment matrix is numerically not positive definite.
    """
    c = np.atleast_1d(np.asarray(moments, dtype=np.complex128))
    if c.size < 2:
        return np.zeros(0, dtype=np.complex128)
    if abs(c[0].imag) > 1e-12 or c[0].real <= 0:
        raise NotPositiveDefinite("zeroth moment must be real positive")
    mu = np.conj(c)  # mu_m = int exp(+im theta) dmu
    nalpha = c.size - 1
    phi = np.ones(1, dtype=np.complex128)      # monic Phi_k, ascending
    phistar = np.ones(1, dtype=np.complex128)
    energy = c[0].real
    alphas = np.empty(nalpha, dtype=np.complex128)
    for k in range(nalpha):
        # <z Phi_k, 1> = sum_j Phi_k[j] mu_{j+1}
        num = np.dot(phi, mu[1 : k + 2])
        alphas[k] = np.conj(num) / energy
        nxt = np.zeros(k + 2, dtype=np.complex128)
        nxt[1:] = phi
        nxt[: k + 1] -= np.conj(alphas[k]) * phistar
        phi = nxt
        phistar = np.conj(phi[::-1])
        energy *= 1.0 - abs(alphas[k]) ** 2
        if energy <= LEVINSON_PIVOT_FLOOR:
            raise NotPositiveDefinite(
                f"pivot {energy:.3e} at step {k} is at or below {LEVINSON_PIVOT_FLOOR}")
    return alphas


# ---------------------------------------------------------------------------
# named coefficient families
# ---------------------------------------------------------------------------


def read_alpha_file(path: str) -> np.ndarray:
    """Read coefficients from text: one "re im" pair per line, '#' comments."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 2:
                raise UsageError(f"{path}:{lineno}: expected 're im', got {text!r}")
            try:
                out.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise UsageError(f"{path}:{lineno}: not numeric: {text!r}") from None
    return _check_alphas(np.asarray(out, dtype=np.complex128))


@dataclass
class AlphaFamily:
    """A named generator of recurrence coefficients.

    alphas(count) returns the first `count` coefficients; weight-backed
    families solve the moment problem lazily and cache the longest run seen.
    """

    name: str
    _gen: Callable[[int], np.ndarray]
    _cache: Optional[np.ndarray] = field(default=None, repr=False)

    def alphas(self, count: int) -> np.ndarray:
        if count < 0:
            raise UsageError("count must be >= 0")
        if self._cache is None or self._cache.size < count:
            self._cache = np.asarray(self._gen(count), dtype=np.complex128)
        return self._cache[:count]

    def build(self, n: int) -> OpucBasis:
        return szego_build(self.alphas(n), n)


def _parse_scalar(token: str, what: str) -> float:
    """Float literal, optionally using 'pi' (pi, 2pi, pi/2, 0.5pi...)."""
    t = token.strip().lower()
    try:
        if t in ("pi", "π"):
            return math.pi
        if t.endswith("pi"):
            return float(t[:-2] or "1") * math.pi
        if t.startswith("pi/"):
            return math.pi / float(t[3:])
        return float(t)
    except ValueError:
        raise UsageError(f"{what}: not a number: {token!r}") from None


def alpha_family(spec: str) -> AlphaFamily:
    """Parse a coefficient family name.

    Grammar: zero | constant:<a> | decay:<c>:<p> | file:<path> |
    weight:lebesgue | weight:cosine | weight:jacobi:<theta>:<exponent>.
    decay:c:p generates alpha_j = c / (j + 2)^p.
    """
    parts = spec.strip().split(":")
    head = parts[0]
    if head == "zero" and len(parts) == 1:
        return AlphaFamily("zero", lambda n: np.zeros(n, dtype=np.complex128))
    if head == "constant" and len(parts) == 2:
        a = _parse_scalar(parts[1], "constant level")
        if abs(a) >= 1:
            raise InvalidVerblunsky(f"constant level {a} has modulus >= 1")
        return AlphaFamily(f"constant:{parts[1]}",
                           lambda n: np.full(n, a, dtype=np.complex128))
    if head == "decay" and len(parts) == 3:
        cc = _parse_scalar(parts[1], "decay scale")
        pp = _parse_scalar(parts[2], "decay power")
        if pp <= 0:
            raise UsageError("decay power must be positive")

        def gen(n, cc=cc, pp=pp):
            j = np.arange(n, dtype=float)
            a = cc / (j + 2.0) ** pp
            return _check_alphas(a)

        return AlphaFamily(f"decay:{parts[1]}:{parts[2]}", gen)
    if head == "file" and len(parts) >= 2:
        path = spec.split(":", 1)[1]

        def gen(n, path=path):
            a = read_alpha_file(path)
            if a.size < n:
                raise InsufficientCoefficients(
                    f"{path} holds {a.size} coefficients, need {n}")
            return a

        return AlphaFamily(f"file:{path}", gen)
    if head == "weight" and len(parts) >= 2:
        wkind = parts[1]
        if wkind == "lebesgue" and len(parts) == 2:
            w = WeightSpec.lebesgue()
        elif wkind == "cosine" and len(parts) == 2:
            w = WeightSpec.cosine_bump()
        elif wkind == "jacobi" and len(parts) == 4:
            th = _parse_scalar(parts[2], "jacobi angle")
            ex = _parse_scalar(parts[3], "jacobi exponent")
            w = WeightSpec.generalized_jacobi([th], [ex])
        else:
            raise UsageError(f"unknown weight family: {spec!r}")

        def gen(n, w=w):
            return levinson_verblunsky(moments_from_weight(w, n))

        return AlphaFamily(spec.strip(), gen)
    raise UsageError(f"unknown coefficient family: {spec!r}")
