"""Brute-force truncated lattice sums for wp, wp' and zeta.

This is the independent cross-check backend: the defining sums

    wp(z)   = 1/z^2 + sum' [ 1/(z-l)^2 - 1/l^2 ]
    wp'(z)  = -2 sum 1/(z-l)^3
    zeta(z) = 1/z  + sum' [ 1/(z-l) + 1/l + z/l^2 ]

are truncated over the centered box max(|a|, |b|) <= extent in lattice
coordinates l = a*2*omega1 + b*2*omega2.  Because the box is symmetric,
the omitted terms pair up as l, -l and the remainder admits an explicit
bound (functions below), O(1/extent^2) in the worst case; the actual
ring-by-ring cancellation converges much faster, which the tests exploit
for frozen high-accuracy reference values.

Nothing in the production engine calls this module.
"""

from __future__ import annotations

import numpy as np

from .elliptic import Lattice

_CHUNK = 512


def _box_terms(lattice: Lattice, extent: int):
    """Yield lattice points of the centered box in row chunks, origin masked."""
    p1, p2 = lattice.periods
    a = np.arange(-extent, extent + 1)
    for start in range(0, len(a), _CHUNK):
        rows = a[start : start + _CHUNK]
        A, B = np.meshgrid(rows, a, indexing="ij")
        L = A * p1 + B * p2
        mask = (A != 0) | (B != 0)
        yield L[mask]


def _boundary_distance(lattice: Lattice) -> float:
    """Distance from the origin to the boundary of the unit coordinate box."""
    p1, p2 = lattice.periods
    area = abs((p1.conjugate() * p2).imag)
    return min(area / abs(p1), area / abs(p2))


def _check_extent(lattice: Lattice, z: complex, extent: int) -> float:
    d0 = _boundary_distance(lattice)
    if abs(z) > 0.5 * d0 * (extent + 1):
        raise ValueError("extent too small for this z: remainder bound invalid")
    return d0


def wp_sum(lattice: Lattice, z: complex, extent: int) -> complex:
    z = complex(z)
    total = 1.0 / z**2
    for L in _box_terms(lattice, extent):
        total += np.sum(1.0 / (z - L) ** 2 - 1.0 / L**2)
    return complex(total)


def wp_sum_remainder(lattice: Lattice, z: complex, extent: int) -> float:
    """Rigorous bound on |wp(z) - wp_sum(z, extent)| (pairwise tail, |z| <= d0*(M+1)/2)."""
    d0 = _check_extent(lattice, z, extent)
    return 80.0 * abs(z) ** 2 / (d0**4 * 2.0 * extent**2)


def wp_prime_sum(lattice: Lattice, z: complex, extent: int) -> complex:
    z = complex(z)
    total = -2.0 / z**3
    for L in _box_terms(lattice, extent):
        total += np.sum(-2.0 / (z - L) ** 3)
    return complex(total)


def wp_prime_sum_remainder(lattice: Lattice, z: complex, extent: int) -> float:
    d0 = _check_extent(lattice, z, extent)
    return 260.0 * abs(z) / (d0**4 * 2.0 * extent**2)


def zeta_sum(lattice: Lattice, z: complex, extent: int) -> complex:
    z = complex(z)
    total = 1.0 / z
    for L in _box_terms(lattice, extent):
        total += np.sum(1.0 / (z - L) + 1.0 / L + z / L**2)
    return complex(total)


def zeta_sum_remainder(lattice: Lattice, z: complex, extent: int) -> float:
    d0 = _check_extent(lattice, z, extent)
    return 22.0 * abs(z) ** 3 / (d0**4 * 2.0 * extent**2)
