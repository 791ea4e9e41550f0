r"""Numerical Weierstrass function engine over an arbitrary period lattice.

A lattice is specified by half-periods (omega1, omega2), so the actual
periods are 2*omega1 and 2*omega2 with Im(omega2/omega1) > 0.  The module
evaluates

    wp(z)       the Weierstrass P-function, even, double pole at lattice points
    wp_prime(z) its derivative, odd
    zeta(z)     the Weierstrass zeta function, odd, zeta(z) = 1/z + O(z^3)

together with the quasi-period constants eta_j defined by

    zeta(z + 2*omega_j) = zeta(z) + eta_j,      j = 1, 2,

which satisfy Legendre's relation  eta1*2*omega2 - eta2*2*omega1 = 2*pi*i.

Evaluation strategy: the defining lattice sums are truncated after summing
each row of lattice points (all points n*2*omega2 + Z*2*omega1 for fixed n)
in closed form,

    sum_m 1/(w - m)^2 = pi^2/sin^2(pi*w),    sum_m 1/(w - m) = pi*cot(pi*w),

which turns the slowly convergent double sum into a single sum over rows
whose terms decay like |q|^(2n), q = exp(i*pi*omega2/omega1).  The basis is
Gauss-reduced internally first, so Im(tau) >= sqrt(3)/2 and a rigorous
geometric tail bound picks the number of rows from the requested precision.
A brute-force truncated lattice sum is kept as an independent cross-check in
`elliptic_reference`.

Half-period representatives are fixed once and indexed 0..3:

    index 0 -> 0 (the origin),  1 -> omega1,  2 -> omega2,  3 -> omega1 + omega2.

Type-vector components elsewhere in the package are indexed by this order.

All operations are pure functions of (lattice, z); `Lattice` instances are
immutable and safe for concurrent read-only use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

import numpy as np

from .errors import ConvergenceFailure, PoleProximity

TWO_PI_I = 2j * math.pi

#: Hard floor for the evaluation precision: everything runs in f64.
PRECISION_FLOOR = 1e-12

#: Pole-exclusion radius, as a fraction of the shortest lattice vector.
POLE_EXCLUSION_FACTOR = 1e-3

_MAX_ROWS = 512


class HalfPeriodIndex(IntEnum):
    """Index of the four fixed points of z -> -z on the torus."""

    ORIGIN = 0
    FIRST = 1
    SECOND = 2
    SUM = 3


@dataclass(frozen=True)
class QuasiPeriods:
    """Additive monodromy constants of zeta along the two periods."""

    eta1: complex
    eta2: complex


def _csc2(w):
    """1/sin(w)^2, computed from the half-plane-safe exponential form."""
    w = np.asarray(w, dtype=complex)
    ws = np.where(w.imag >= 0.0, w, -w)
    s = np.exp(2j * ws)
    return -4.0 * s / (1.0 - s) ** 2


def _cot(w):
    """cos(w)/sin(w), stable for large |Im w|."""
    w = np.asarray(w, dtype=complex)
    sgn = np.where(w.imag >= 0.0, 1.0, -1.0)
    s = np.exp(2j * sgn * w)
    return -1j * sgn * (1.0 + s) / (1.0 - s)


def _gauss_reduce(p1: complex, p2: complex) -> tuple[complex, complex]:
    """Return a reduced, positively oriented basis of the lattice Z*p1 + Z*p2."""
    for _ in range(256):
        if abs(p1) > abs(p2):
            p1, p2 = p2, p1
        t = round((p2 * p1.conjugate()).real / abs(p1) ** 2)
        if t == 0:
            break
        p2 = p2 - t * p1
    else:  # pragma: no cover - reduction always terminates
        raise ConvergenceFailure("lattice basis reduction did not terminate")
    if (p2 / p1).imag < 0:
        p2 = -p2
    return p1, p2


def _inverse_basis(p1: complex, p2: complex):
    """2x2 inverse of the real matrix mapping (a, b) -> a*p1 + b*p2."""
    det = p1.real * p2.imag - p1.imag * p2.real
    return (p2.imag / det, -p2.real / det, -p1.imag / det, p1.real / det)


@dataclass(frozen=True)
class Lattice:
    """Rank-2 period lattice spanned by 2*omega1 and 2*omega2.

    `precision` is the target absolute evaluation error; it is clamped to
    the f64 floor of 1e-12.
    """

    omega1: complex
    omega2: complex
    precision: float = 1e-12

    def __post_init__(self):
        w1 = complex(self.omega1)
        w2 = complex(self.omega2)
        if w1 == 0 or w2 == 0 or not (w2 / w1).imag > 0:
            raise ValueError("need Im(omega2/omega1) > 0 for an oriented basis")
        if not self.precision > 0:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)

    # -- derived, immutable geometry ---------------------------------------

    @cached_property
    def tolerance(self) -> float:
        return max(float(self.precision), PRECISION_FLOOR)

    @cached_property
    def periods(self) -> tuple[complex, complex]:
        return 2 * self.omega1, 2 * self.omega2

    @cached_property
    def _reduced(self) -> tuple[complex, complex]:
        return _gauss_reduce(*self.periods)

    @cached_property
    def shortest_vector(self) -> float:
        return abs(self._reduced[0])

    @cached_property
    def pole_radius(self) -> float:
        return POLE_EXCLUSION_FACTOR * self.shortest_vector

    @cached_property
    def _inv_given(self):
        return _inverse_basis(*self.periods)

    @cached_property
    def _inv_reduced(self):
        return _inverse_basis(*self._reduced)

    @cached_property
    def _tau(self) -> complex:
        q1, q2 = self._reduced
        return q2 / q1

    @cached_property
    def _rows(self) -> int:
        """Number of resummed rows needed for the geometric tail to clear
        the precision target (with a safety factor for prefactors)."""
        q1, _ = self._reduced
        y = math.pi * self._tau.imag
        pref = abs(math.pi / q1)
        scale = max(1.0, pref, pref**2, pref**3)
        n = int(math.ceil((math.log(64.0 * scale / self.tolerance)) / (2.0 * y))) + 2
        if n > _MAX_ROWS:
            raise ConvergenceFailure(
                f"series needs {n} rows to reach precision {self.tolerance:g}"
            )
        return max(n, 6)

    @cached_property
    def _row_offsets(self) -> np.ndarray:
        """pi*tau*n for n = 1..rows (Im parts strictly increasing)."""
        return math.pi * self._tau * np.arange(1, self._rows + 1)

    @cached_property
    def _row_csc2_sum(self) -> complex:
        return complex(np.sum(_csc2(self._row_offsets)))

    @cached_property
    def _zeta_linear(self) -> complex:
        """Coefficient of z in the resummed zeta series."""
        q1, _ = self._reduced
        return (math.pi / q1) ** 2 * (1.0 / 3.0 + 2.0 * self._row_csc2_sum)

    @cached_property
    def _reduced_quasi(self) -> tuple[complex, complex]:
        """Quasi-period constants of the *reduced* basis vectors."""
        q1, q2 = self._reduced
        return (
            2.0 * complex(self._zeta_cell(np.asarray(q1 / 2.0, complex))),
            2.0 * complex(self._zeta_cell(np.asarray(q2 / 2.0, complex))),
        )

    @cached_property
    def _quasi(self) -> QuasiPeriods:
        eta1 = 2.0 * complex(zeta(self, self.omega1))
        eta2 = 2.0 * complex(zeta(self, self.omega2))
        qp = QuasiPeriods(eta1, eta2)
        p1, p2 = self.periods
        defect = abs(eta1 * p2 - eta2 * p1 - TWO_PI_I)
        if defect > 10.0 * self.tolerance:
            raise ConvergenceFailure(
                f"Legendre relation defect {defect:.3e} exceeds 10*precision"
            )
        return qp

    # -- reduction ----------------------------------------------------------

    def _split(self, z: np.ndarray):
        """Reduce into the centered cell of the reduced basis; return the
        representative and the integer shift coordinates."""
        q1, q2 = self._reduced
        c11, c12, c21, c22 = self._inv_reduced
        a = c11 * z.real + c12 * z.imag
        b = c21 * z.real + c22 * z.imag
        m = np.round(a)
        n = np.round(b)
        return z - m * q1 - n * q2, m, n

    def _cell_point(self, z) -> tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
        arr = np.asarray(z, dtype=complex)
        scalar = arr.ndim == 0
        zr, m, n = self._split(arr)
        return zr, m, n, scalar

    def _require_off_poles(self, zr: np.ndarray):
        dist = np.abs(zr)
        if np.any(dist < self.pole_radius):
            worst = float(np.min(dist))
            raise PoleProximity(
                f"point within {worst:.3e} of a lattice point "
                f"(exclusion radius {self.pole_radius:.3e})"
            )

    # -- resummed series (arguments already reduced) -------------------------

    def _wp_cell(self, zr: np.ndarray) -> np.ndarray:
        q1, _ = self._reduced
        v = (math.pi / q1) * zr
        w = v[..., None]
        pairs = _csc2(w - self._row_offsets) + _csc2(w + self._row_offsets)
        acc = _csc2(v) - 1.0 / 3.0 + pairs.sum(axis=-1) - 2.0 * self._row_csc2_sum
        return (math.pi / q1) ** 2 * acc

    def _wp_prime_cell(self, zr: np.ndarray) -> np.ndarray:
        q1, _ = self._reduced
        v = (math.pi / q1) * zr
        w = v[..., None]
        wm = w - self._row_offsets
        wp_ = w + self._row_offsets
        pairs = _csc2(wm) * _cot(wm) + _csc2(wp_) * _cot(wp_)
        acc = _csc2(v) * _cot(v) + pairs.sum(axis=-1)
        return -2.0 * (math.pi / q1) ** 3 * acc

    def _zeta_cell(self, zr: np.ndarray) -> np.ndarray:
        q1, _ = self._reduced
        v = (math.pi / q1) * zr
        w = v[..., None]
        pairs = _cot(w - self._row_offsets) + _cot(w + self._row_offsets)
        acc = _cot(v) + pairs.sum(axis=-1)
        return (math.pi / q1) * acc + self._zeta_linear * zr


def half_period(lattice: Lattice, index: HalfPeriodIndex | int) -> complex:
    """Representative of the half-period with the given index (0 is the origin)."""
    idx = HalfPeriodIndex(index)
    reps = (0j, lattice.omega1, lattice.omega2, lattice.omega1 + lattice.omega2)
    return reps[idx]


def reduce(lattice: Lattice, z):
    """Translate z by lattice vectors into the fundamental cell centered at 0.

    The result has coordinates in [-1/2, 1/2] with respect to the basis
    (2*omega1, 2*omega2) as given (no internal re-basing).
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    p1, p2 = lattice.periods
    c11, c12, c21, c22 = lattice._inv_given
    a = c11 * arr.real + c12 * arr.imag
    b = c21 * arr.real + c22 * arr.imag
    out = arr - np.round(a) * p1 - np.round(b) * p2
    return complex(out) if scalar else out


def wp(lattice: Lattice, z):
    """Weierstrass P-function. Raises PoleProximity near lattice points."""
    zr, _, _, scalar = lattice._cell_point(z)
    lattice._require_off_poles(zr)
    out = lattice._wp_cell(zr)
    return complex(out) if scalar else out


def wp_prime(lattice: Lattice, z):
    """Derivative of the P-function (odd)."""
    zr, _, _, scalar = lattice._cell_point(z)
    lattice._require_off_poles(zr)
    out = lattice._wp_prime_cell(zr)
    return complex(out) if scalar else out


def zeta(lattice: Lattice, z):
    """Weierstrass zeta function, quasi-periodic with constants eta1, eta2.

    Arbitrary arguments are handled by reduction plus the exact additive
    correction m*eta(q1) + n*eta(q2) for the reduced basis.
    """
    zr, m, n, scalar = lattice._cell_point(z)
    lattice._require_off_poles(zr)
    er1, er2 = lattice._reduced_quasi
    out = lattice._zeta_cell(zr) + m * er1 + n * er2
    return complex(out) if scalar else out


def quasi_periods(lattice: Lattice) -> QuasiPeriods:
    """Quasi-period constants eta_j = 2*zeta(omega_j), Legendre-validated.

    Raises ConvergenceFailure if the computed pair violates Legendre's
    relation by more than 10*precision.
    """
    return lattice._quasi


def legendre_defect(lattice: Lattice) -> float:
    """|eta1*2*omega2 - eta2*2*omega1 - 2*pi*i| for this lattice."""
    qp = quasi_periods(lattice)
    p1, p2 = lattice.periods
    return abs(qp.eta1 * p2 - qp.eta2 * p1 - TWO_PI_I)
