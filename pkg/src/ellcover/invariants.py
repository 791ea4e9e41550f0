"""Constraint checking and enumeration for cover invariants.

Three families of marked covers of the base elliptic curve are handled:

  * covers marked at one ramification point (the KdV-flow family),
    invariants (n, d, g, rho, m, gamma);
  * covers marked at two points exchanged by the involution
    (Schrodinger/Toda family), invariants (n, g, gamma) plus placement;
  * covers marked at two involution-fixed points (sine-Gordon family),
    invariants (n, g, gamma) plus placement.

Every constraint is a named clause of the built-in rule catalog (IDs such
as "5.4(5) parity"); checkers evaluate all applicable clauses and report
structured verdicts rather than raising, so enumeration can show
near-misses.  Clause order is fixed, making verdict lists deterministic.

Enumeration is over type vectors gamma in N^4 with a prescribed sum of
squares; `construct_types` realizes the constructive patterns that produce
admissible types of arbitrarily high genus, and `family_params` maps the
six explicit family constructions ("6.13".."6.18") to their (genus, degree).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Optional, Union

from .errors import InvalidInvariants, ParityViolation

Vec4 = tuple[int, int, int, int]


def _vec4(values) -> Vec4:
    t = tuple(int(v) for v in values)
    if len(t) != 4:
        raise InvalidInvariants(f"expected 4 integers, got {len(t)}")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class TypeVector:
    """Intersection numbers with the four involution-side exceptional curves,
    indexed by half-period (0 is the origin)."""

    gamma: Vec4

    def __post_init__(self):
        g = _vec4(self.gamma)
        if any(x < 0 for x in g):
            raise InvalidInvariants(f"type components must be >= 0, got {g}")
        object.__setattr__(self, "gamma", g)

    @property
    def total(self) -> int:
        """Sum of components (written gamma^(1))."""
        return sum(self.gamma)

    @property
    def square_sum(self) -> int:
        """Sum of squared components (written gamma^(2))."""
        return sum(x * x for x in self.gamma)

    def __iter__(self):
        return iter(self.gamma)

    def __getitem__(self, i: int) -> int:
        return self.gamma[i]


@dataclass(frozen=True)
class CoverInvariants:
    """Claimed invariants of a one-marked-point cover: degree n, osculating
    order d, arithmetic genus g, ramification index rho at the marked point,
    degree m of the map onto its surface image, and type gamma.

    The record stores claims; `check_kdv` verdicts them."""

    n: int
    d: int
    g: int
    rho: int
    m: int
    gamma: TypeVector

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInvariants(f"degree n must be >= 1, got {self.n}")
        if self.d < 1:
            raise InvalidInvariants(f"osculating order d must be >= 1, got {self.d}")
        if self.g < 0:
            raise InvalidInvariants(f"genus g must be >= 0, got {self.g}")
        if self.m < 1:
            raise InvalidInvariants(f"image degree m must be >= 1, got {self.m}")
        if not isinstance(self.gamma, TypeVector):
            object.__setattr__(self, "gamma", TypeVector(_vec4(self.gamma)))


class Placement(Enum):
    """Where the two marked points of a two-point cover project."""

    SAME_PROJECTION = "same-projection"
    DISTINCT_GENERIC = "distinct-generic"
    DISTINCT_HALF_PERIODS = "distinct-half-periods"


@dataclass(frozen=True)
class KdVCase:
    d: int


@dataclass(frozen=True)
class NlsTodaCase:
    placement: Placement


@dataclass(frozen=True)
class SineGordonCase:
    placement: Placement


CaseLabel = Union[KdVCase, NlsTodaCase, SineGordonCase]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one named clause: lhs related to rhs, ok iff satisfied.

    Informational clauses are reported but do not affect admissibility."""

    clause: str
    ok: bool
    lhs: object
    rhs: object
    informational: bool = False


def admissible(verdicts: Iterable[Verdict]) -> bool:
    return all(v.ok or v.informational for v in verdicts)


def violations(verdicts: Iterable[Verdict]) -> list[Verdict]:
    return [v for v in verdicts if not v.ok]


def _bound(clause: str, lhs: int, rhs: int, informational: bool = False) -> Verdict:
    return Verdict(clause, lhs <= rhs, lhs, rhs, informational)


# ---------------------------------------------------------------------------
# KdV-family checker
# ---------------------------------------------------------------------------


def evaluate_kdv(inv: CoverInvariants) -> list[Verdict]:
    """Evaluate every clause of the one-marked-point rule catalog."""
    n, d, g, rho, m = inv.n, inv.d, inv.g, inv.rho, inv.m
    gam = inv.gamma
    g1, g2 = gam.total, gam.square_sum
    out: list[Verdict] = []

    out.append(
        Verdict(
            "5.4(3) rho odd",
            rho % 2 == 1 and 1 <= rho <= 2 * d - 1,
            rho,
            2 * d - 1,
        )
    )
    divisors_ok = all(x % m == 0 for x in (n, 2 * d - 1, rho, *gam))
    out.append(Verdict("5.4(4) m divides", divisors_ok, m, (n, 2 * d - 1, rho, *gam)))
    parities = ((gam[0] + 1) % 2, gam[1] % 2, gam[2] % 2, gam[3] % 2)
    out.append(
        Verdict("5.4(5) parity", all(p == n % 2 for p in parities), parities, n % 2)
    )
    out.append(_bound("5.5(1) genus vs type sum", 2 * g + 1, g1))
    out.append(Verdict("5.5(2) unramified birational", rho != 1 or m == 1, rho, m))
    out.append(
        _bound("5.5(3) type square bound", g2, 2 * (2 * d - 1) * (n - m) + 4 * m * m - rho * rho)
    )
    out.append(
        _bound(
            "5.5(4) genus square bound",
            (2 * g + 1) ** 2,
            8 * (2 * d - 1) * (n - m) + 13 * m * m - 4 * rho * rho,
        )
    )
    if rho == 1 and m == 1:
        out.append(
            _bound("5.5(5) unramified genus bound", (2 * g + 1) ** 2, 8 * (2 * d - 1) * (n - 1) + 9)
        )
    else:
        out.append(Verdict("5.5(5) unramified genus bound", True, None, None))
    return out


def check_kdv(inv: CoverInvariants) -> list[Verdict]:
    """Violated clauses for a one-marked-point cover (empty = admissible)."""
    return violations(evaluate_kdv(inv))


# ---------------------------------------------------------------------------
# Schrodinger/Toda-family checker
# ---------------------------------------------------------------------------


def evaluate_nls_toda(n: int, g: int, gamma, placement: Placement) -> list[Verdict]:
    if placement is Placement.DISTINCT_HALF_PERIODS:
        # the second marked point is the involution image of the first, so a
        # half-period projection forces both points onto the same fiber
        raise InvalidInvariants(
            "marked points exchanged by the involution cannot project to two "
            "distinct half-periods"
        )
    gam = gamma if isinstance(gamma, TypeVector) else TypeVector(_vec4(gamma))
    g1, g2 = gam.total, gam.square_sum
    out: list[Verdict] = []
    parities = tuple(x % 2 for x in gam)
    out.append(Verdict("5.7 parity", all(p == n % 2 for p in parities), parities, n % 2))
    out.append(_bound("5.7(1) genus vs type sum", 2 * g + 2, g1))
    if placement is Placement.DISTINCT_GENERIC:
        out.append(_bound("5.7(2) type square bound", g2, 4 * n))
        out.append(_bound("5.7(2) genus square bound", (g + 1) ** 2, 4 * n))
    elif n % 2 == 0:
        out.append(_bound("5.7(3) type square bound", g2, 4 * n - 4))
        out.append(_bound("5.7(3) genus square bound", (g + 1) ** 2, 4 * n - 4))
    else:
        out.append(_bound("5.7(4) type square bound", g2, 4 * n - 8))
        out.append(_bound("5.7(4) genus square bound", (g + 1) ** 2, 4 * n - 8))
    return out


def check_nls_toda(n: int, g: int, gamma, placement: Placement) -> list[Verdict]:
    return violations(evaluate_nls_toda(n, g, gamma, placement))


# ---------------------------------------------------------------------------
# sine-Gordon-family checker
# ---------------------------------------------------------------------------


def evaluate_sine_gordon(
    n: int,
    g: int,
    gamma,
    placement: Placement,
    half_period_pair: Optional[tuple[int, int]] = None,
) -> list[Verdict]:
    if placement is Placement.DISTINCT_GENERIC:
        # involution-fixed marked points always project to half-periods
        raise InvalidInvariants(
            "involution-fixed marked points project to half-periods; distinct "
            "projections must be two distinct half-periods"
        )
    gam = gamma if isinstance(gamma, TypeVector) else TypeVector(_vec4(gamma))
    g1, g2 = gam.total, gam.square_sum
    out: list[Verdict] = []

    if placement is Placement.SAME_PROJECTION:
        parities = tuple(x % 2 for x in gam)
        out.append(
            Verdict("5.6(3) parity", all(p == n % 2 for p in parities), parities, n % 2)
        )
    else:
        flipped = tuple(i for i in range(4) if gam[i] % 2 != n % 2)
        if half_period_pair is None:
            ok = len(flipped) == 2
            out.append(Verdict("5.6(5) parity", ok, flipped, "two flipped indices"))
        else:
            k, j = half_period_pair
            ok = sorted(flipped) == sorted((k, j))
            out.append(Verdict("5.6(5) parity", ok, flipped, tuple(sorted((k, j)))))

    out.append(_bound("5.8(1) genus vs type sum", 2 * g, g1))
    if placement is Placement.DISTINCT_HALF_PERIODS:
        out.append(_bound("5.8(2) type square bound", g2, 4 * n))
        out.append(_bound("5.8(2) genus square bound", g * g, 4 * n))
        out.append(
            _bound("6.12(3) genus square bound", g * g, 4 * n - 2, informational=True)
        )
    elif n % 2 == 0:
        out.append(_bound("5.8(3) type square bound", g2, 4 * n - 4))
        out.append(_bound("5.8(3) genus square bound", g * g, 4 * n - 4))
    else:
        out.append(_bound("5.8(4) type square bound", g2, 4 * n - 8))
        out.append(_bound("5.8(4) genus square bound", g * g, 4 * n - 8))
    return out


def check_sine_gordon(
    n: int,
    g: int,
    gamma,
    placement: Placement,
    half_period_pair: Optional[tuple[int, int]] = None,
) -> list[Verdict]:
    return violations(evaluate_sine_gordon(n, g, gamma, placement, half_period_pair))


# ---------------------------------------------------------------------------
# Type enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumeratedType:
    """One admissible type for (n, d): gamma with its implied genus and the
    full clause evaluation for rho = m = 1."""

    gamma: TypeVector
    g: int
    verdicts: tuple[Verdict, ...] = field(repr=False)


def type_square_target(n: int, d: int) -> int:
    """Required sum of squares (2d-1)(2n-2) + 3 for a rho = m = 1 type."""
    return (2 * d - 1) * (2 * n - 2) + 3


def _gamma0_candidates(n: int, target: int) -> range:
    # component 0 has parity opposite to n, the others match n
    start = (n + 1) % 2
    return range(start, math.isqrt(target) + 1, 2)


def _enumerate_slice(n: int, d: int, g0: int) -> list[EnumeratedType]:
    target = type_square_target(n, d)
    rest_parity = n % 2
    found = []
    budget0 = target - g0 * g0
    top = math.isqrt(target)
    for g1 in range(rest_parity, top + 1, 2):
        b1 = budget0 - g1 * g1
        if b1 < 0:
            break
        for g2 in range(rest_parity, top + 1, 2):
            b2 = b1 - g2 * g2
            if b2 < 0:
                break
            g3 = math.isqrt(b2)
            if g3 * g3 == b2 and g3 % 2 == rest_parity:
                gamma = TypeVector((g0, g1, g2, g3))
                genus = (gamma.total - 1) // 2
                inv = CoverInvariants(n=n, d=d, g=genus, rho=1, m=1, gamma=gamma)
                found.append(EnumeratedType(gamma, genus, tuple(evaluate_kdv(inv))))
    return found


def enumerate_types(n: int, d: int, workers: int = 1) -> list[EnumeratedType]:
    """All types gamma in N^4 with square sum (2d-1)(2n-2)+3 and the parity
    pattern of a rho = m = 1 cover, sorted lexicographically.

    Genus is (gamma^(1) - 1)/2; gamma^(1) is odd for every solution, so the
    genus is always integral.  `workers` > 1 splits the search over slices
    of the first component; the merge restores the canonical order, so the
    output is identical regardless of parallelism.
    """
    if n < 1 or d < 1:
        raise InvalidInvariants("need n >= 1 and d >= 1")
    target = type_square_target(n, d)
    slices = list(_gamma0_candidates(n, target))
    if workers > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda g0: _enumerate_slice(n, d, g0), slices))
    else:
        chunks = [_enumerate_slice(n, d, g0) for g0 in slices]
    out = [item for chunk in chunks for item in chunk]
    out.sort(key=lambda item: item.gamma.gamma)
    return out


# ---------------------------------------------------------------------------
# Constructive type generator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratedType:
    gamma: TypeVector
    n: int
    g: int


def _epsilon_patterns(d: int, k: int) -> list[tuple[int, ...]]:
    """The |2*eps_i| magnitude patterns allowed for order d, distinguished
    index k: the (2d-2)(1 - delta_{ik}) pattern plus the alternate pattern
    d - (-1)^delta (d odd) or d - 2*delta (d even)."""
    main = tuple((2 * d - 2) * (0 if i == k else 1) for i in range(4))
    if d % 2 == 1:
        alt = tuple(d + 1 if i == k else d - 1 for i in range(4))
    else:
        alt = tuple(d - 2 if i == k else d for i in range(4))
    return [main, alt]


def construct_types(d: int, k: int, mu) -> list[GeneratedType]:
    """Generate admissible types gamma = (2d-1)*mu + 2*eps of square sum
    (2d-1)(2n-2)+3 for every sign choice of the two magnitude patterns.

    Requires d >= 2, k in 0..3, and mu in N^4 with mu_0 + 1 = mu_1 = mu_2 =
    mu_3 (mod 2).  Sign choices are over-generated and filtered: any gamma
    with a negative entry is dropped, the rest are deduplicated and sorted.
    Every surviving triple passes the full rho = m = 1 clause catalog.
    """
    d, k = int(d), int(k)
    m = _vec4(mu)
    if d < 2:
        raise InvalidInvariants(f"need osculating order d >= 2, got {d}")
    if k not in range(4):
        raise InvalidInvariants(f"distinguished index must be 0..3, got {k}")
    if any(x < 0 for x in m):
        raise InvalidInvariants(f"mu must be non-negative, got {m}")
    if any((m[0] + 1 - m[j]) % 2 for j in (1, 2, 3)):
        raise ParityViolation(f"need mu_0 + 1 = mu_j (mod 2) for j = 1..3, got {m}")

    results: set[tuple[Vec4, int, int]] = set()
    dd = 2 * d - 1
    for mags in _epsilon_patterns(d, k):
        sign_axes = [(-1, 1) if v else (0,) for v in mags]
        for signs in product(*sign_axes):
            gamma = tuple(dd * m[i] + signs[i] * mags[i] for i in range(4))
            if any(x < 0 for x in gamma):
                continue
            g2 = sum(x * x for x in gamma)
            num = g2 - 3
            if num % (2 * dd):
                continue
            n = num // (2 * dd) + 1
            if n < 1:
                continue
            g1 = sum(gamma)
            if g1 % 2 == 0:
                continue
            g = (g1 - 1) // 2
            inv = CoverInvariants(n=n, d=d, g=g, rho=1, m=1, gamma=TypeVector(gamma))
            if check_kdv(inv):
                continue
            results.add((gamma, n, g))

    return [
        GeneratedType(TypeVector(gam), n, g)
        for gam, n, g in sorted(results)
    ]


def construct_closed_forms(d: int, mu) -> tuple[int, int]:
    """Closed forms for the eps = (0, d-1, d-1, d-1) pattern with all plus
    signs:  2g + 1 = (2d-1)*mu^(1) + 6(d-1)  and
            2n = (2d-1)*mu^(2) + 4(d-1)(mu_1 + mu_2 + mu_3) + 6d - 7."""
    m = _vec4(mu)
    m1 = sum(m)
    m2 = sum(x * x for x in m)
    two_g_plus_1 = (2 * d - 1) * m1 + 6 * (d - 1)
    two_n = (2 * d - 1) * m2 + 4 * (d - 1) * (m[1] + m[2] + m[3]) + 6 * d - 7
    if two_g_plus_1 % 2 != 1 or two_n % 2 != 0:
        raise InvalidInvariants(f"closed forms are not integral for mu = {m}")
    return (two_g_plus_1 - 1) // 2, two_n // 2


# ---------------------------------------------------------------------------
# Family parameter maps
# ---------------------------------------------------------------------------

FAMILY_CASES = ("6.13", "6.14", "6.15", "6.16", "6.17", "6.18")


@dataclass(frozen=True)
class FamilySpec:
    """One member of the six explicit families: the case label, a vector
    alpha in N^4, and placement data (whether the base point sits at a
    half-period for the Schrodinger/Toda cases; the distinguished index j0
    for case 6.17)."""

    case: str
    alpha: Vec4
    at_half_period: bool = False
    j0: Optional[int] = None

    def __post_init__(self):
        if self.case not in FAMILY_CASES:
            raise InvalidInvariants(
                f"case must be one of {FAMILY_CASES}, got {self.case!r}"
            )
        a = _vec4(self.alpha)
        if any(x < 0 for x in a):
            raise InvalidInvariants(f"alpha must be non-negative, got {a}")
        object.__setattr__(self, "alpha", a)
        a1 = sum(a)
        if self.case == "6.14":
            if a == (0, 0, 0, 0):
                raise InvalidInvariants("case 6.14 requires alpha != 0")
            if a1 % 2 == 0 and self.at_half_period:
                raise ParityViolation(
                    "case 6.14 with even alpha sum needs a generic base point"
                )
            if a1 % 2 == 1 and not self.at_half_period:
                raise ParityViolation(
                    "case 6.14 with odd alpha sum needs a half-period base point"
                )
        elif self.case == "6.15":
            if (a[2] + a[3]) % 2 != 1:
                raise ParityViolation("case 6.15 requires alpha_2 + alpha_3 odd")
        elif self.case == "6.16":
            if (a[0] + a[1]) % 2 != 0:
                raise ParityViolation("case 6.16 requires alpha_0 + alpha_1 even")
        elif self.case == "6.17":
            if self.j0 not in (1, 2, 3):
                raise InvalidInvariants("case 6.17 requires j0 in {1, 2, 3}")
            if any((a[self.j0] + 1 - a[i]) % 2 for i in range(4) if i != self.j0):
                raise ParityViolation(
                    f"case 6.17 requires alpha_j0 + 1 = alpha_i (mod 2), got {a}"
                )


@dataclass(frozen=True)
class FamilyParams:
    g: int
    n: int
    verdicts: tuple[Verdict, ...]

    def __iter__(self):
        return iter((self.g, self.n))


def _family_restriction(case: str, same_projection: bool, g: int, n: int) -> Verdict:
    """The matching genus/degree restriction for a family output."""
    if case in ("6.13", "6.14"):
        if not same_projection:
            return _bound("6.11(3) genus square bound", (g + 1) ** 2, 4 * n)
        if n % 2 == 0:
            return _bound("6.11(1) genus square bound", (g + 1) ** 2, 4 * n - 4)
        return _bound("6.11(2) genus square bound", (g + 1) ** 2, 4 * n - 8)
    if not same_projection:
        return _bound("6.12(3) genus square bound", g * g, 4 * n - 2)
    if n % 2 == 0:
        return _bound("6.12(1) genus square bound", g * g, 4 * n - 4)
    return _bound("6.12(2) genus square bound", g * g, 4 * n - 8)


def family_params(spec: FamilySpec) -> FamilyParams:
    """Genus and degree of the family member, with the matching restriction
    cross-checked and attached as a verdict."""
    a = spec.alpha
    a1 = sum(a)
    a2 = sum(x * x for x in a)
    case = spec.case

    if case == "6.13":
        g = a1 + 1
        n = a2 + a1 + (3 if spec.at_half_period else 1)
        same = spec.at_half_period
    elif case == "6.14":
        g = a1 - 1
        n = a2 + (1 if spec.at_half_period else 0)
        same = spec.at_half_period
    elif case == "6.15":
        g, n, same = a1 + 1, a2 + a[0] + a[1] + 1, False
    elif case == "6.16":
        g, n, same = a1 + 1, a2 + a[2] + a[3] + 1, False
    elif case == "6.17":
        g, n, same = a1, a2 + 1, True
    else:  # 6.18
        g, n, same = a1 + 2, a2 + a1 + 3, True

    return FamilyParams(g, n, (_family_restriction(case, same, g, n),))
