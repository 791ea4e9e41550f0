import cmath
import math

import numpy as np
import pytest

from conftest import random_lattice
from ellcover.elliptic import Lattice, quasi_periods
from ellcover.errors import InvalidInvariants, PoleProximity
from ellcover.kdv import (
    Grid,
    TravelingWave,
    kdv_residual,
    monodromy_factor,
    periodicity_check,
    shift_defect,
)

LAT = Lattice(math.pi, math.pi * 1j)  # square lattice with periods 2*pi, 2*pi*i


@pytest.fixture(scope="module")
def grid():
    return Grid.for_lattice(LAT)


# -- residual -------------------------------------------------------------------


def test_stationary_wave_residual(grid):
    # 6*u*u_x + u_xxx vanishes identically for u = -2*wp(x)
    w = TravelingWave(LAT, lam=0.0)
    assert kdv_residual(w, grid) < 1e-6
    assert kdv_residual(w, grid, "chain") < 1e-6


@pytest.mark.parametrize("lam", [1.0, 2.0])
def test_traveling_wave_residual(grid, lam):
    w = TravelingWave(LAT, lam=lam)
    assert kdv_residual(w, grid) < 1e-6
    assert kdv_residual(w, grid, "chain") < 1e-6


@pytest.mark.parametrize("lam", [1.0, 2.0])
def test_wrong_speed_control(grid, lam):
    w = TravelingWave(LAT, lam=lam, speed=lam)  # speed lam instead of 3*lam/2
    assert kdv_residual(w, grid, "chain") > 1e-2


def test_backends_agree_within_stencil_error(grid):
    w = TravelingWave(LAT, lam=2.0)
    assert abs(kdv_residual(w, grid) - kdv_residual(w, grid, "chain")) < 1e-6


def test_residual_second_order_convergence():
    # fixed window, refined spacing: truncation-dominated regime
    w = TravelingWave(LAT, lam=2.0)
    window = 0.3
    res = []
    for npts in (25, 50, 100):
        g = Grid(nx=npts, hx=window / npts, nt=8, ht=5e-4)
        res.append(kdv_residual(w, g, "chain"))
    order = math.log2(res[0] / res[2]) / 2
    assert abs(order - 2.0) < 0.3


def test_grid_validation():
    with pytest.raises(InvalidInvariants):
        Grid(nx=3)
    with pytest.raises(InvalidInvariants):
        Grid(hx=-1.0)
    with pytest.raises(InvalidInvariants):
        Grid(x_order=4)
    with pytest.raises(InvalidInvariants):
        kdv_residual(TravelingWave(LAT), time_derivative="spectral")


def test_grid_hitting_a_pole_raises():
    w = TravelingWave(LAT, lam=0.0)
    g = Grid(nx=9, hx=1e-4, nt=3, ht=1e-4, x_center=0.0)  # centered on the pole
    with pytest.raises(PoleProximity):
        kdv_residual(w, g)


# -- periodicity ------------------------------------------------------------------


def test_wave_is_lattice_periodic():
    w = TravelingWave(LAT, lam=1.0, x0=0.3)
    assert periodicity_check(w) <= 1e-10


def test_combined_period_shift():
    w = TravelingWave(LAT, lam=1.0)
    p1, p2 = LAT.periods
    assert shift_defect(w, p1 + p2) <= 1e-10


def test_half_period_shift_is_not_a_period():
    w = TravelingWave(LAT, lam=1.0)
    # window kept clear of the poles that the half-shifted copy would hit
    assert shift_defect(w, LAT.omega1, x_center=LAT.omega1 - 0.3) > 1e-2
    assert shift_defect(w, LAT.omega2) > 1e-2


# -- monodromy factor ---------------------------------------------------------------


def test_monodromy_factor_single_valuedness():
    sq = Lattice(0.5, 0.5j)
    z = 0.22 + 0.13j
    for j in (1, 2):
        for p in sq.periods:
            ratio = monodromy_factor(sq, j, z + p) / monodromy_factor(sq, j, z)
            assert abs(ratio - 1.0) < 1e-9


def test_monodromy_factor_inverse_pair():
    sq = Lattice(0.5, 0.5j)
    z = 0.23 + 0.11j
    for j in (1, 2):
        prod = monodromy_factor(sq, j, z) * monodromy_factor(sq, j, -z)
        assert abs(prod - 1.0) < 1e-9


def test_monodromy_factor_small_argument_expansion():
    # phi_j(z) * exp(-2*omega_j/z) = 1 - eta_j*z + O(z^2)
    sq = Lattice(0.5, 0.5j)
    qp = quasi_periods(sq)
    base = 0.04 + 0.03j
    for j, eta in ((1, qp.eta1), (2, qp.eta2)):
        omega = sq.omega1 if j == 1 else sq.omega2
        for k in range(3):
            z = base / 2**k
            val = monodromy_factor(sq, j, z) * cmath.exp(-2 * omega / z)
            assert abs(val - 1.0) <= 2.0 * abs(eta * z)


def test_monodromy_factor_rejects_bad_index():
    sq = Lattice(0.5, 0.5j)
    with pytest.raises(InvalidInvariants):
        monodromy_factor(sq, 3, 0.2 + 0.1j)
    with pytest.raises(PoleProximity):
        monodromy_factor(sq, 1, 1e-6)


def test_monodromy_random_lattices():
    rng = np.random.default_rng(2024)
    for _ in range(10):
        lat = random_lattice(rng)
        z = 0.17 * 2 * lat.omega1 + 0.29 * 2 * lat.omega2
        for j in (1, 2):
            for p in lat.periods:
                ratio = monodromy_factor(lat, j, z + p) / monodromy_factor(lat, j, z)
                assert abs(ratio - 1.0) < 1e-8
