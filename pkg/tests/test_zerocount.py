import math

import numpy as np
import pytest

from opucz.cpoly import ComplexPoly
from opucz.errors import (
    BoundaryProximity,
    DegenerateLeadingCoefficient,
    UsageError,
)
from opucz.zerocount import (
    Region,
    count_by_argument_principle,
    count_in_region,
    roots,
)


def _free_sample(rng, deg):
    c = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
    return ComplexPoly(c / math.sqrt(2))


def test_cube_roots_of_eight():
    zs = roots(ComplexPoly([-8, 0, 0, 1]))
    w = 2 * np.exp(2j * np.pi / 3)
    want = sorted([2 + 0j, w, np.conj(w)], key=lambda z: (round(z.real, 9), z.imag))
    got = sorted(zs.roots, key=lambda z: (round(z.real, 9), z.imag))
    for a, b in zip(got, want):
        assert abs(a - b) < 1e-10
    assert np.all(np.abs(np.abs(zs.roots) - 2) < 1e-10)


def test_plus_minus_i():
    zs = roots(ComplexPoly([1, 0, 1]))
    got = sorted(zs.roots, key=lambda z: z.imag)
    assert abs(got[0] + 1j) < 1e-12 and abs(got[1] - 1j) < 1e-12


def test_random_degree_fifty_residuals():
    rng = np.random.default_rng(77)
    for _ in range(5):
        p = _free_sample(rng, 50)
        zs = roots(p)
        assert len(zs.roots) == 50
        assert np.max(zs.residuals) <= 1e-8 * np.max(np.abs(p.coeffs))


def test_roots_at_origin_kept():
    # z^2 (z - 1): trailing zero coefficients mean roots at 0
    zs = roots(ComplexPoly([0, 0, -1, 1]))
    assert len(zs.roots) == 3
    assert np.sum(np.abs(zs.roots) < 1e-12) == 2


def test_degenerate_leading_coefficient():
    with pytest.raises(DegenerateLeadingCoefficient):
        roots(ComplexPoly([1, 2, 1e-310]))


def test_conjugation_symmetry_real_coefficients():
    rng = np.random.default_rng(31)
    for _ in range(10):
        p = ComplexPoly(rng.standard_normal(21))
        zs = roots(p)
        rts = list(zs.roots)
        for z in rts:
            dist = min(abs(np.conj(z) - y) for y in rts)
            assert dist <= 1e-8


def test_region_constructors_validate():
    with pytest.raises(UsageError):
        Region.annulus(0.5, 0.5)
    with pytest.raises(UsageError):
        Region.annulus(-0.1, 0.5)
    with pytest.raises(UsageError):
        Region.sector(1.2, 0, 1)
    with pytest.raises(UsageError):
        Region.sector(0.5, 2.0, 1.0)
    with pytest.raises(UsageError):
        Region.sector(0.5, 0.0, 7.0)


def test_count_in_region_cube_roots():
    zs = roots(ComplexPoly([-8, 0, 0, 1]))
    assert count_in_region(zs, Region.annulus(1.5, 2.5)) == 3
    assert count_in_region(zs, Region.annulus(0, 1)) == 0
    # half-open angular bound: the root at arg exactly 2pi/3 is excluded
    assert count_in_region(zs, Region.sector(0.4, 0.0, 2 * math.pi / 3)) == 1


def test_disk_includes_origin_root():
    zs = roots(ComplexPoly([0, 1.0]))
    assert count_in_region(zs, Region.annulus(0, 0.5)) == 1
    assert count_in_region(zs, Region.annulus(0.1, 0.5)) == 0


def test_sector_partition_adds_up():
    rng = np.random.default_rng(5)
    edges = [0, 1.1, 2.2, 4.0, 2 * math.pi]
    for _ in range(10):
        zs = roots(_free_sample(rng, 30))
        full = count_in_region(zs, Region.sector(0.5, 0, 2 * math.pi))
        parts = sum(
            count_in_region(zs, Region.sector(0.5, a, b))
            for a, b in zip(edges[:-1], edges[1:]))
        assert parts == full


def test_annulus_partition_completeness():
    rng = np.random.default_rng(6)
    regions = [Region.annulus(0, 0.9), Region.annulus(0.9, 1.1),
               Region.annulus(1.1, 1e9)]
    for _ in range(20):
        zs = roots(_free_sample(rng, 40))
        assert sum(count_in_region(zs, r) for r in regions) == 40


def test_argument_principle_known_counts():
    p = ComplexPoly([-8, 0, 0, 1])
    assert count_by_argument_principle(p, Region.annulus(1.5, 2.5)) == 3
    assert count_by_argument_principle(p, Region.annulus(0, 1)) == 0
    assert count_by_argument_principle(p, Region.annulus(0, 2.5)) == 3
    p5 = ComplexPoly([0, 0, 0, 0, 0, 1.0])
    assert count_by_argument_principle(p5, Region.annulus(0, 0.5)) == 5


def test_argument_principle_sector():
    p = ComplexPoly([-8, 0, 0, 1])
    # keep the boundary rays away from the roots' arguments
    assert count_by_argument_principle(p, Region.sector(0.4, 0.5, 1.5)) == 0
    assert count_by_argument_principle(p, Region.sector(0.4, 1.0, 3.0)) == 1
    assert count_by_argument_principle(p, Region.sector(0.4, 0.5, 6.0)) == 2


def test_argument_principle_flags_root_on_contour():
    # a root exactly on the circle |z| = 1: (z - 1)(z - 3)
    p = ComplexPoly([3, -4, 1])
    with pytest.raises(BoundaryProximity):
        count_by_argument_principle(p, Region.annulus(0, 1.0))


def test_dual_oracle_agreement_free_samples():
    rng = np.random.default_rng(11)
    reg = Region.annulus(0, 0.6)
    agree = 0
    flagged = 0
    trials = 100
    for _ in range(trials):
        p = _free_sample(rng, 40)
        zs = roots(p)
        want = count_in_region(zs, reg)
        try:
            got = count_by_argument_principle(p, reg)
        except BoundaryProximity:
            flagged += 1
            continue
        assert got == want
        agree += 1
    assert agree + flagged == trials
    assert agree >= 0.99 * trials


def test_far_root_from_small_leading_coefficient():
    # |c_n| << |c_{n-1}| parks one root near -1/c_n; naive evaluation of a
    # degree-200 polynomial there overflows, the residual gate must not
    c = np.ones(201, dtype=np.complex128)
    c[-1] = 1e-3
    with np.errstate(over="raise", invalid="raise"):
        zs = roots(ComplexPoly(c))
    assert zs.roots.size == 200
    assert np.all(np.isfinite(zs.residuals))
    far = np.max(np.abs(zs.roots))
    assert far > 100  # the outlier root is really out there
    assert count_in_region(zs, Region.annulus(0, 1.5)) == 199
