"""Engine versus the independent truncated-lattice-sum backend.

The frozen reference values below were produced by the box-sum oracle with
Richardson extrapolation over extents 200..1600 (error model c/M^2), stable
to better than 1e-12 across extrapolation levels; the raw box sums at each
extent agree with their rigorous remainder bounds.
"""

import pytest

from ellcover import elliptic_reference as ref
from ellcover.elliptic import Lattice, wp, wp_prime, zeta

SQ = Lattice(0.5, 0.5j)

# frozen oracle values (unit square lattice)
WP_AT = 0.25 + 0.25j
WP_FROZEN = complex(0.0, -6.8751858180203728)
WPP_FROZEN = complex(36.05426582260473, 36.05426582260473)
ZETA_AT = 0.3 + 0.1j
ZETA_FROZEN = complex(2.9441374020632754, -1.0829717798741481)


def test_wp_against_frozen_oracle_value():
    assert abs(wp(SQ, WP_AT) - WP_FROZEN) < 1e-10


def test_wp_prime_against_frozen_oracle_value():
    assert abs(wp_prime(SQ, WP_AT) - WPP_FROZEN) < 1e-10


def test_zeta_against_frozen_oracle_value():
    assert abs(zeta(SQ, ZETA_AT) - ZETA_FROZEN) < 1e-10


@pytest.mark.parametrize("extent", [120, 240])
def test_wp_sum_within_its_remainder_bound(extent):
    approx = ref.wp_sum(SQ, WP_AT, extent)
    bound = ref.wp_sum_remainder(SQ, WP_AT, extent)
    assert abs(approx - wp(SQ, WP_AT)) <= bound + 1e-9


@pytest.mark.parametrize("extent", [120, 240])
def test_zeta_sum_within_its_remainder_bound(extent):
    approx = ref.zeta_sum(SQ, ZETA_AT, extent)
    bound = ref.zeta_sum_remainder(SQ, ZETA_AT, extent)
    assert abs(approx - zeta(SQ, ZETA_AT)) <= bound + 1e-9


@pytest.mark.parametrize("extent", [120, 240])
def test_wp_prime_sum_within_its_remainder_bound(extent):
    approx = ref.wp_prime_sum(SQ, WP_AT, extent)
    bound = ref.wp_prime_sum_remainder(SQ, WP_AT, extent)
    assert abs(approx - wp_prime(SQ, WP_AT)) <= bound + 1e-9


def test_sum_backend_converges_toward_engine():
    errs = [abs(ref.wp_sum(SQ, WP_AT, ext) - wp(SQ, WP_AT)) for ext in (60, 120, 240)]
    assert errs[2] < errs[1] < errs[0]
    # error model is O(1/extent^2): doubling should gain about a factor 4
    assert errs[0] / errs[2] > 8


def test_backends_agree_on_a_grid():
    # row-resummed engine vs truncated-sum backend across the cell
    pts = [0.25 + 0.25j, 0.4 + 0.1j, -0.3 + 0.2j, 0.1 - 0.35j, 0.45 + 0.45j]
    for z in pts:
        bound = ref.wp_sum_remainder(SQ, z, 240)
        assert abs(ref.wp_sum(SQ, z, 240) - wp(SQ, z)) <= bound + 1e-9


def test_rectangular_lattice_oracle_agreement():
    lat = Lattice(0.5, 0.8j)
    z = 0.2 + 0.3j
    bound = ref.wp_sum_remainder(lat, z, 200)
    assert abs(ref.wp_sum(lat, z, 200) - wp(lat, z)) <= bound + 1e-9
    zbound = ref.zeta_sum_remainder(lat, z, 200)
    assert abs(ref.zeta_sum(lat, z, 200) - zeta(lat, z)) <= zbound + 1e-9


def test_extent_guard_rejects_far_arguments():
    with pytest.raises(ValueError):
        ref.wp_sum_remainder(SQ, 30 + 0j, 10)
