"""Exact simulation and analysis of 1D coined quantum walks whose coin is
kicked each step by a time-linear spin-x rotation (or its gauged spin-z twin).

The walk applies W(t) = S * R_x(t * phi) * C at step t, where S is the
spin-conditioned shift, C a fixed SU(2) coin, and phi the field angle.  The
package provides the exact state-vector evolution, momentum-space analysis of
the m-step regrouped dynamics for rational fields phi = 2*pi*n/m, revival
detection and scaling laws, continued-fraction tooling for irrational fields,
a noisy-field ensemble model, the gauged/electric formulation, and a CLI.
"""

from ._kernels import USING_NUMBA, backend_name
from .cfrac import (ContinuedFraction, Convergent, FieldClassification,
                    approximation_check, cf_expand, classify_field,
                    evaluate, golden_ratio_fraction)
from .gauge import (GaugePhase, apply_gauge, electric_evolve, electric_step,
                    gauged_step, verify_gauge_equivalence)
from .momentum import (TildePair, alpha_tilde, alpha_tilde_sup, dispersion,
                       regrouped_block, regrouped_trace, shift_momentum,
                       step_block, tilde_pair, trace_formula)
from .noise import (NoiseConfig, noise_bound, noise_bound_for, noisy_evolve,
                    return_series)
from .revivals import (RevivalReport, appendix_expected, appendix_table,
                       detect_sign, expected_sign, irrational_revival_bound,
                       revival_deviation, revival_report, revival_time)
from .spinops import (HADAMARD_BASIS, IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z,
                      eigenbasis_unitary2, is_unitary, make_coin,
                      operator_norm_2x2, rotation_x, rotation_y)
from .walk import (Field, TimeRule, WalkParams, WalkState, bloch_vector,
                   evolve, evolve_tracking_origin, fidelity,
                   position_distribution, return_probability, step,
                   support_radius)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # backends
    "USING_NUMBA", "backend_name",
    # spin operators
    "IDENTITY", "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "HADAMARD_BASIS",
    "rotation_x", "rotation_y", "make_coin", "is_unitary",
    "operator_norm_2x2", "eigenbasis_unitary2",
    # walk core
    "Field", "TimeRule", "WalkParams", "WalkState", "step", "evolve",
    "evolve_tracking_origin", "position_distribution", "return_probability",
    "fidelity", "bloch_vector", "support_radius",
    # momentum analysis
    "shift_momentum", "step_block", "regrouped_block", "TildePair",
    "tilde_pair", "alpha_tilde", "alpha_tilde_sup", "trace_formula",
    "regrouped_trace", "dispersion",
    # revivals
    "RevivalReport", "revival_deviation", "detect_sign", "expected_sign",
    "revival_time", "revival_report", "appendix_expected", "appendix_table",
    "irrational_revival_bound",
    # continued fractions
    "Convergent", "ContinuedFraction", "FieldClassification",
    "golden_ratio_fraction", "cf_expand", "evaluate", "approximation_check",
    "classify_field",
    # noise
    "NoiseConfig", "noisy_evolve", "noise_bound", "noise_bound_for",
    "return_series",
    # gauge
    "GaugePhase", "apply_gauge", "electric_step", "electric_evolve",
    "gauged_step", "verify_gauge_equivalence",
]
