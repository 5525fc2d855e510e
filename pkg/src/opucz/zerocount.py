"""Zeros of a polynomial and how many land in a region.

Two independent counting routes:

  * roots + count_in_region: balanced companion-matrix eigenvalues, polished
    by a few Newton steps, then a point-in-region test on each root.
  * count_by_argument_principle: (1/2 pi i) times the contour integral of
    P'/P around the region boundary, by adaptive composite Gauss-Legendre
    panels on each smooth arc.  The result must land within 0.1 of an
    integer; drifting further means a zero sits too close to the boundary
    and the count is refused rather than guessed.

Regions are annuli s < |z| < t (s = 0 means the full disk |z| < t) and
sectors r < |z| < 1/r with alpha <= arg z < beta, arguments taken in
[0, 2 pi).  The sector's radial window is symmetric about the unit circle;
the half-open angular window makes sector counts over a partition of
[0, 2 pi) add up exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .cpoly import ComplexPoly
from .errors import (
    BoundaryProximity,
    DegenerateLeadingCoefficient,
    NoConvergence,
    UsageError,
)

DEGENERATE_LEAD = 1e-300
RESIDUAL_SCALE = 1e-8
NEWTON_STEPS = 5
INTEGER_SLACK = 0.1

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)
_PANEL_TOL = 1e-11
_MAX_DEPTH = 44  # panel width floor 0.125 * 2^-44, still above parameter eps


@dataclass(frozen=True)
class Region:
    """annulus(s, t) or sector(r, alpha, beta); see the module docstring."""

    kind: str
    params: Tuple[float, ...]

    @staticmethod
    def annulus(s: float, t: float) -> "Region":
        if not (0 <= s < t):
            raise UsageError(f"annulus needs 0 <= s < t, got s={s}, t={t}")
        return Region("annulus", (float(s), float(t)))

    @staticmethod
    def sector(r: float, alpha: float, beta: float) -> "Region":
        # radial window r < |z| < 1/r: the annulus around the unit circle
        # (the two radii are reciprocal, written with the small one first)
        if not (0 < r < 1):
            raise UsageError(f"sector needs 0 < r < 1, got r={r}")
        if not (0 <= alpha < beta <= 2 * math.pi):
            raise UsageError(
                f"sector needs 0 <= alpha < beta <= 2 pi, got {alpha}, {beta}")
        return Region("sector", (float(r), float(alpha), float(beta)))

    def contains(self, z: complex) -> bool:
        az = abs(z)
        if self.kind == "annulus":
            s, t = self.params
            return (s < az < t) if s > 0 else (az < t)
        r, alpha, beta = self.params
        if not (r < az < 1.0 / r):
            return False
        ang = math.atan2(z.imag, z.real) % (2 * math.pi)
        return alpha <= ang < beta

    def angular_fraction(self) -> Optional[float]:
        if self.kind != "sector":
            return None
        _, alpha, beta = self.params
        return (beta - alpha) / (2 * math.pi)

    def boundary_arcs(self):
        """Positively oriented smooth arcs (gamma, dgamma) over [0, 1]."""

        def circle(rad, ccw=True, a0=0.0, a1=2 * math.pi):
            lo, hi = (a0, a1) if ccw else (a1, a0)

            def g(t):
                return rad * np.exp(1j * (lo + (hi - lo) * t))

            def dg(t):
                return rad * 1j * (hi - lo) * np.exp(1j * (lo + (hi - lo) * t))

            return g, dg

        def segment(z0, z1):
            return (lambda t: z0 + (z1 - z0) * t,
                    lambda t: np.full_like(np.asarray(t, dtype=float),
                                           z1 - z0, dtype=np.complex128))

        if self.kind == "annulus":
            s, t = self.params
            arcs = [circle(t, ccw=True)]
            if s > 0:
                arcs.append(circle(s, ccw=False))
            return arcs
        r, alpha, beta = self.params
        ro = 1.0 / r
        ea, eb = np.exp(1j * alpha), np.exp(1j * beta)
        return [
            circle(ro, ccw=True, a0=alpha, a1=beta),
            segment(ro * eb, r * eb),
            circle(r, ccw=False, a0=alpha, a1=beta),
            segment(r * ea, ro * ea),
        ]


@dataclass
class ZeroSet:
    """Roots of one polynomial with their post-polish residuals.

    Each residual is a backward-error score on the coefficient scale:
    |P(z)| divided by sum_k |c_k| |z|^k / max|c| (floored at 1).  At
    roundoff level it certifies the root is exact for a negligibly
    perturbed coefficient set; raw |P(z)| would be meaningless for
    large-modulus roots, where evaluation alone costs eps * sum |c_k||z|^k.
    """

    roots: np.ndarray
    residuals: np.ndarray
    poly: ComplexPoly


def _horner_pair(coeffs: np.ndarray, z: np.ndarray):
    """P(z) and P'(z) in one pass, vectorized over z."""
    p = np.full_like(z, coeffs[-1], dtype=np.complex128)
    dp = np.zeros_like(z, dtype=np.complex128)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _resid_and_step(c: np.ndarray, z: np.ndarray):
    """Backward-error residual and Newton step at each z, overflow-safe.

    Inside the closed unit disk this is plain Horner.  Outside, P is read
    through its coefficient reversal Q at u = 1/z (P(z) = z^n Q(u),
    P'(z) = z^(n-1) (n Q(u) - u Q'(u))), so every intermediate stays
    bounded by (n+1) max|c| however large |z| is; a naive |z|^n would
    overflow for far roots of high-degree samples.
    """
    n = c.size - 1
    scale = float(np.max(np.abs(c)))
    res = np.empty(z.shape, dtype=float)
    step = np.empty(z.shape, dtype=np.complex128)
    inner = np.abs(z) <= 1.0
    if np.any(inner):
        zi = z[inner]
        p, dp = _horner_pair(c, zi)
        growth = np.polyval(np.abs(c)[::-1], np.abs(zi)) / scale
        res[inner] = np.abs(p) / np.maximum(1.0, growth)
        step[inner] = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
    if not inner.all():
        zo = z[~inner]
        u = 1.0 / zo
        rev = c[::-1]
        q, dq = _horner_pair(rev, u)
        den = n * q - u * dq
        step[~inner] = np.where(
            den != 0, zo * q / np.where(den != 0, den, 1.0), 0.0)
        growth = np.polyval(np.abs(rev)[::-1], np.abs(u)) / scale
        floor = np.abs(zo) ** (-float(n))  # the 1-clamp, |z|^n removed
        res[~inner] = np.abs(q) / np.maximum(floor, growth)
    return res, step


def roots(p: ComplexPoly) -> ZeroSet:
    """All nominal_degree roots, companion eigenvalues + Newton polish.

    Every backward-error residual must come out at or below 1e-8 times the
    largest coefficient magnitude; a run that cannot reach that is refused
    (NoConvergence) instead of returning doubtful roots.
    """
    c = p.coeffs
    n = p.nominal_degree
    if n == 0:
        return ZeroSet(np.zeros(0, dtype=np.complex128), np.zeros(0), p)
    scale = float(np.max(np.abs(c)))
    if abs(c[-1]) <= DEGENERATE_LEAD:
        raise DegenerateLeadingCoefficient(
            f"|leading coefficient| = {abs(c[-1]):.3e}")
    try:
        rts = np.roots(c[::-1])
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"companion eigenvalues failed: {exc}") from None
    for _ in range(NEWTON_STEPS):
        res, step = _resid_and_step(c, rts)
        cand = rts - step
        cres, _ = _resid_and_step(c, cand)
        better = cres < res  # a non-finite candidate never wins
        rts = np.where(better, cand, rts)
    res, _ = _resid_and_step(c, rts)
    tol = RESIDUAL_SCALE * scale
    if not np.all(np.isfinite(res)) or np.any(res > tol):
        worst = float(np.max(res))
        raise NoConvergence(f"residual {worst:.3e} above {tol:.3e}")
    return ZeroSet(rts, res, p)


def count_in_region(zs: ZeroSet, region: Region) -> int:
    return int(sum(1 for z in zs.roots if region.contains(complex(z))))


def _panel_integrals(coeffs: np.ndarray, g, dg, a, b):
    h = (b - a)[:, None]
    t = a[:, None] + h * (0.5 * (_GL_NODES[None, :] + 1.0))
    zt = g(t)
    val, dval = _horner_pair(coeffs, zt)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        terms = dval / val * dg(t) * (0.5 * h) * _GL_WEIGHTS[None, :]
    return terms.sum(axis=1), np.abs(terms).sum(axis=1)


def _arc_integral(coeffs: np.ndarray, g, dg):
    # breadth-first local refinement: a panel is accepted once splitting it
    # stops moving its estimate, so a pole at distance d from the arc costs
    # log(1/d) subdivisions instead of the 1/d a uniform grid would need.
    # The acceptance floor scales with the panel's absolute-value mass;
    # without it, roundoff in high-degree integrands (|terms| >> |sum|)
    # would keep panels churning forever.
    a = np.linspace(0.0, 1.0, 9)[:-1]
    b = a + 0.125
    whole, _ = _panel_integrals(coeffs, g, dg, a, b)
    total = 0.0 + 0.0j
    for _ in range(_MAX_DEPTH):
        mid = 0.5 * (a + b)
        left, scale_l = _panel_integrals(coeffs, g, dg, a, mid)
        right, scale_r = _panel_integrals(coeffs, g, dg, mid, b)
        err = np.abs(whole - (left + right))
        done = err < np.maximum(_PANEL_TOL, 1e-13 * (scale_l + scale_r))
        total += np.sum(left[done]) + np.sum(right[done])
        if np.all(done):
            return complex(total), True
        keep = ~done
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        whole = np.concatenate([left[keep], right[keep]])
    # leftover panels never stabilized: a zero sits on (or within roundoff
    # reach of) the contour
    return complex(total + np.sum(whole)), False


def count_by_argument_principle(p: ComplexPoly, region: Region) -> int:
    """Winding of P around the region boundary; refuses non-integer results.

    Each smooth arc is integrated by locally adaptive composite
    Gauss-Legendre panels.  A result farther than 0.1 from an integer, or
    panels that never stabilize, raise BoundaryProximity -- the signal that
    a zero sits essentially on the boundary.
    """
    c = p.coeffs
    if abs(c[-1]) <= DEGENERATE_LEAD:
        raise DegenerateLeadingCoefficient(
            f"|leading coefficient| = {abs(c[-1]):.3e}")
    total = 0.0 + 0.0j
    settled = True
    for g, dg in region.boundary_arcs():
        part, ok = _arc_integral(c, g, dg)
        total += part
        settled = settled and ok
    w = total / (2j * math.pi)
    if not settled or not np.isfinite(w) \
            or abs(w - round(w.real)) > INTEGER_SLACK:
        raise BoundaryProximity(
            f"contour count {w} did not settle near an integer")
    return int(round(w.real))
