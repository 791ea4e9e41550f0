"""Toolkit for cover invariants over an elliptic curve and the elliptic
function numerics that verify their flow periodicity at genus 1."""

from .elliptic import (
    HalfPeriodIndex,
    Lattice,
    QuasiPeriods,
    half_period,
    legendre_defect,
    quasi_periods,
    reduce,
    wp,
    wp_prime,
    zeta,
)
from .errors import (
    ConvergenceFailure,
    EllcoverError,
    InvalidInvariants,
    ParityViolation,
    PoleProximity,
)
from .invariants import (
    CoverInvariants,
    EnumeratedType,
    FamilyParams,
    FamilySpec,
    GeneratedType,
    Placement,
    TypeVector,
    Verdict,
    admissible,
    check_kdv,
    check_nls_toda,
    check_sine_gordon,
    construct_closed_forms,
    construct_types,
    enumerate_types,
    evaluate_kdv,
    evaluate_nls_toda,
    evaluate_sine_gordon,
    family_params,
    type_square_target,
)
from .kdv import Grid, TravelingWave, kdv_residual, monodromy_factor, periodicity_check
from .picard import (
    DistinctGeneric,
    DistinctHalfPeriods,
    DivisorClass,
    SamePointHalfPeriod,
    TauInvariantClass,
    adjunction_genus,
    canonical_class,
    cover_class,
    exceptional_class,
    fiber_class,
    intersect,
    is_exceptional_first_kind,
    nls_sg_class,
    r_class,
    s_class,
    section_class,
    tilde_genus,
)

__version__ = "0.1.0"
