"""Desk-scale computations around the self-intersection of the dualizing sheaf on X_0(p^2) models."""

from .arakelov import (
    GreenEstimate,
    OmegaReport,
    ScanResult,
    check_dm_orthogonal,
    green_estimate,
    omega_sq,
    s_p,
    scan,
)
from .eisenstein import (
    CuspPair,
    L_series,
    ScatteringExpansion,
    constant_a,
    kloosterman_zero,
    lattice_sum,
    phi_closed,
    phi_series,
    scattering_expansion,
    verify_es1,
)
from .fiber import (
    Component,
    FiberModel,
    PullbackMap,
    blow_down,
    canonical_degrees,
    contractible,
    derive_multiplicities,
    edixhoven_fiber,
    minimal_model,
)
from .modular import CurveLevel, c_of, curve_level, cusps, genus, index, is_prime, volume
from .numerics import (
    LaurentPiece,
    Rat,
    TruncatedSum,
    digamma,
    gamma_fn,
    laurent_mul,
    riemann_zeta,
    zeta_2sm1_laurent,
    zeta_prime_at_2,
)
from .quadforms import (
    ClassSet,
    PellSolution,
    QuadForm,
    UnimodularMatrix,
    enumerate_classes,
    epstein_zeta_analytic,
    epstein_zeta_definite,
    form_of_matrix,
    matrix_of_form,
    pell_min,
    residue_epstein,
    stab_generator,
    stab_order_definite,
    star_d,
    theta_class_weight,
    transform,
    zeta_level_residue,
    zeta_level_value,
    zeta_phi_d_residue,
    zeta_phi_d_value,
)

__version__ = "0.1.0"
