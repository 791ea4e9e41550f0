import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import interior_points, random_lattice
from ellcover.elliptic import (
    HalfPeriodIndex,
    Lattice,
    half_period,
    legendre_defect,
    quasi_periods,
    reduce,
    wp,
    wp_prime,
    zeta,
)
from ellcover.errors import PoleProximity


# -- lattice construction ----------------------------------------------------


def test_lattice_rejects_degenerate_basis():
    with pytest.raises(ValueError):
        Lattice(0.5, 0.25)  # collinear
    with pytest.raises(ValueError):
        Lattice(0.5, -0.5j)  # wrong orientation
    with pytest.raises(ValueError):
        Lattice(0.5, 0.5j, precision=-1.0)


def test_precision_floor_is_enforced(square):
    tiny = Lattice(0.5, 0.5j, precision=1e-30)
    assert tiny.tolerance == 1e-12
    assert Lattice(0.5, 0.5j, precision=1e-9).tolerance == 1e-9


def test_half_period_representatives(square):
    assert half_period(square, HalfPeriodIndex.ORIGIN) == 0
    assert half_period(square, 1) == 0.5
    assert half_period(square, 2) == 0.5j
    assert half_period(square, 3) == 0.5 + 0.5j


# -- reduce -------------------------------------------------------------------


def test_reduce_lattice_point_maps_to_zero(square):
    assert reduce(square, 0) == 0
    assert abs(reduce(square, 2 * square.omega1)) < 1e-15
    assert abs(reduce(square, 4 * square.omega1 + 6 * square.omega2)) < 1e-14


def test_reduce_basis_coordinate_rounding(square):
    # direct oracle: 1.3 = 1*1 + 0.3, so the representative is 0.3
    assert abs(reduce(square, 1.3) - 0.3) < 1e-15


def test_reduce_lands_in_centered_cell():
    rng = np.random.default_rng(42)
    for _ in range(25):
        lat = random_lattice(rng)
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        zr = reduce(lat, z)
        p1, p2 = lat.periods
        det = p1.real * p2.imag - p1.imag * p2.real
        a = (zr.real * p2.imag - zr.imag * p2.real) / det
        b = (p1.real * zr.imag - p1.imag * zr.real) / det
        assert abs(a) <= 0.5 + 1e-12 and abs(b) <= 0.5 + 1e-12
        # congruent to z modulo the lattice
        da = (z - zr).real * p2.imag - (z - zr).imag * p2.real
        db = p1.real * (z - zr).imag - p1.imag * (z - zr).real
        assert abs(da / det - round(da / det)) < 1e-9
        assert abs(db / det - round(db / det)) < 1e-9


# -- wp / wp' ------------------------------------------------------------------


def test_wp_is_even_and_wp_prime_is_odd(square):
    z = 0.17 + 0.29j
    assert wp(square, z) == wp(square, -z)
    assert wp_prime(square, z) == -wp_prime(square, -z)


def test_wp_ellipticity(square):
    z = 0.21 + 0.09j
    for shift in (2 * square.omega1, 2 * square.omega2, 2 * (square.omega1 + square.omega2)):
        assert abs(wp(square, z + shift) - wp(square, z)) <= 10 * square.tolerance


def test_wp_square_lattice_symmetry_anchors(square):
    # the center is a 4-torsion fixed point of z -> iz, forcing wp = 0 there,
    # and wp(iz) = -wp(z) pairs the two real/imaginary half-periods
    assert abs(wp(square, 0.5 + 0.5j)) < 1e-11
    assert abs(wp(square, 0.5j) + wp(square, 0.5)) < 1e-11
    assert abs(wp_prime(square, 0.5)) < 1e-11


def test_wp_pole_proximity(square):
    with pytest.raises(PoleProximity):
        wp(square, 1e-5)
    with pytest.raises(PoleProximity):
        wp_prime(square, 1.0 + 1e-5j)  # next to the lattice point 1
    with pytest.raises(PoleProximity):
        zeta(square, 5e-4 + 5e-4j)


def test_wp_prime_matches_difference_quotient(square):
    z = 0.23 + 0.17j
    for h in (1e-4, 5e-5, 2.5e-5):
        fd = (wp(square, z + h) - wp(square, z - h)) / (2 * h)
        assert abs(fd - wp_prime(square, z)) < 20 * h * h * 1e3


def test_zeta_derivative_is_minus_wp(square):
    z = 0.31 + 0.12j
    h = 1e-5
    fd = (zeta(square, z + h) - zeta(square, z - h)) / (2 * h)
    assert abs(fd + wp(square, z)) < 1e-7


def test_differential_consistency_is_second_order(square):
    # central-difference defect of wp' against wp must shrink like h^2
    z = 0.26 + 0.18j
    hs = (4e-3, 2e-3, 1e-3)
    errs = []
    for h in hs:
        fd = (wp(square, z + h) - wp(square, z - h)) / (2 * h)
        errs.append(abs(fd - wp_prime(square, z)))
    order = math.log2(errs[0] / errs[2]) / 2
    assert abs(order - 2.0) < 0.3


# -- zeta ----------------------------------------------------------------------


def test_zeta_is_odd(square):
    z = 0.11 + 0.37j
    assert zeta(square, z) == -zeta(square, -z)


def test_zeta_principal_part(square):
    # z*zeta(z) -> 1 with error O(|z|^2) along a shrinking sequence
    base = 0.08 + 0.05j
    for k in range(4):
        z = base / 2**k
        assert abs(z * zeta(square, z) - 1) < 0.05 * abs(z) ** 2


def test_zeta_quasi_periodicity(square):
    qp = quasi_periods(square)
    z = 0.18 + 0.07j
    assert abs(zeta(square, z + 2 * square.omega1) - zeta(square, z) - qp.eta1) < 1e-9
    assert abs(zeta(square, z + 2 * square.omega2) - zeta(square, z) - qp.eta2) < 1e-9


# -- quasi-periods -------------------------------------------------------------


def test_square_lattice_quasi_periods_are_exact(square):
    # 90-degree symmetry gives eta2 = -i*eta1, and Legendre forces eta1 = pi
    qp = quasi_periods(square)
    assert abs(qp.eta1 - math.pi) < 1e-12
    assert abs(qp.eta2 + 1j * math.pi) < 1e-12


def test_lemniscatic_symmetry(square):
    qp = quasi_periods(square)
    assert abs(qp.eta1.imag) < 1e-9
    assert abs(qp.eta2 + 1j * qp.eta1) < 1e-9


def test_legendre_defect_small(square):
    assert legendre_defect(square) < 1e-10


def test_quasi_periods_deterministic(square):
    a = quasi_periods(square)
    b = quasi_periods(Lattice(0.5, 0.5j))
    assert (a.eta1, a.eta2) == (b.eta1, b.eta2)


# -- property tests over random lattices ---------------------------------------


@given(st.integers(min_value=0, max_value=10_000))
def test_wp_even_zeta_odd_random(seed):
    rng = np.random.default_rng(seed)
    lat = random_lattice(rng)
    z = complex(interior_points(lat, rng, 1)[0])
    assert wp(lat, z) == wp(lat, -z)
    assert zeta(lat, z) == -zeta(lat, -z)
    assert wp_prime(lat, z) == -wp_prime(lat, -z)


@given(st.integers(min_value=0, max_value=10_000))
def test_periodicity_and_quasi_periodicity_random(seed):
    rng = np.random.default_rng(seed)
    lat = random_lattice(rng)
    qp = quasi_periods(lat)
    z = complex(interior_points(lat, rng, 1)[0])
    p1, p2 = lat.periods
    assert abs(wp(lat, z + p1) - wp(lat, z)) <= 10 * lat.tolerance
    assert abs(wp(lat, z + p2) - wp(lat, z)) <= 10 * lat.tolerance
    assert abs(zeta(lat, z + p1) - zeta(lat, z) - qp.eta1) <= 10 * lat.tolerance
    assert abs(zeta(lat, z + p2) - zeta(lat, z) - qp.eta2) <= 10 * lat.tolerance


@given(st.integers(min_value=0, max_value=10_000))
def test_legendre_relation_random(seed):
    rng = np.random.default_rng(seed)
    lat = random_lattice(rng)
    assert legendre_defect(lat) <= 10 * lat.tolerance


def test_vectorized_evaluation_matches_scalar(square):
    # summation order may differ between the 1-d and 2-d code paths
    zs = np.array([0.2 + 0.1j, 0.31 + 0.27j, -0.12 + 0.33j])
    wps = wp(square, zs)
    for i, z in enumerate(zs):
        assert abs(wps[i] - wp(square, complex(z))) < 1e-12
    assert wps.shape == zs.shape


def test_skew_basis_agrees_with_reduced_basis():
    # same lattice presented in a badly skewed basis evaluates identically
    nice = Lattice(0.5, 0.5j)
    skew = Lattice(0.5, 0.5j + 3 * 0.5 * 2)  # omega2 shifted by 3 periods
    z = 0.19 + 0.23j
    assert abs(wp(nice, z) - wp(skew, z)) < 1e-10
    assert abs(zeta(nice, z) - zeta(skew, z)) < 1e-10
    d = legendre_defect(skew)
    assert d < 1e-10


def test_quasi_period_additivity_in_skew_basis():
    lat = Lattice(0.5, 0.5j)
    skew = Lattice(0.5, 0.5j + 1.0)  # omega2' = omega2 + 2*omega1/... one period
    qa = quasi_periods(lat)
    qb = quasi_periods(skew)
    # eta is additive over the lattice: eta(p2 + 2*p1) = eta2 + 2*eta1
    assert abs(qb.eta2 - (qa.eta2 + 2 * qa.eta1)) < 1e-10
    assert abs(qb.eta1 - qa.eta1) < 1e-12
