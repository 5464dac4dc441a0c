"""Three-center overlap and Coulomb-exchange repulsion integrals over
s-type Slater orbitals, evaluated analytically in arbitrary precision and
certified against direct quadrature of the defining integrals."""

from .precision import (DomainError, PrecisionContext, euler_constant,
                        expint_ei_neg, factorial)
from .coefficients import binom, d_coeff, d_coeff_row
from .geometry import (Conformation, LINEAR_MIDPOINT, ScaledExponents,
                       SYMMETRIC_TRIANGULAR, general_on_axis, r_focii,
                       r_third_center, scaled_exponents)
from .auxiliary import (AuxCache, a_n, a_n_tail, a_nmk, b_aux, t_minus,
                        t_plus, u_head)
from .overlap import (IntegralValue, NotRepresentableError, SlaterParams,
                      TruncationPolicy, convergence_scan, overlap_3c)
from .quadrature import QuadConfig, quad_aux_check, quad_eri, quad_overlap_3c
from .repulsion import (ChargeDistribution, EriSpec, charge_distribution,
                        eri_aabc, eri_bbac, nuclear_attraction_K,
                        overlap_backend)

__version__ = "0.1.0"

__all__ = [
    "AuxCache", "ChargeDistribution", "Conformation", "DomainError",
    "EriSpec", "IntegralValue", "LINEAR_MIDPOINT", "NotRepresentableError",
    "PrecisionContext", "QuadConfig", "ScaledExponents", "SlaterParams",
    "SYMMETRIC_TRIANGULAR", "TruncationPolicy", "a_n", "a_n_tail", "a_nmk",
    "b_aux", "binom", "charge_distribution", "convergence_scan", "d_coeff",
    "d_coeff_row", "eri_aabc", "eri_bbac", "euler_constant", "expint_ei_neg",
    "factorial", "general_on_axis", "nuclear_attraction_K", "overlap_3c",
    "overlap_backend", "quad_aux_check", "quad_eri", "quad_overlap_3c",
    "r_focii", "r_third_center", "scaled_exponents", "t_minus", "t_plus",
    "u_head",
]
