"""Entropy inequalities for the qudit partial swap channel."""

__version__ = "0.1.0"

from .bounds import (BoundCurve, bound_curve, bound_entropy_power, bound_linear,
                     bound_photon_number, bound_qubit_optimal, holevo_upper_bound,
                     min_output_entropy_lb)
from .channels import (FixedSigmaChannel, KrausSet, SwapParams, boxplus, boxplus_bloch,
                       boxplus_closed_form, boxplus_via_kraus, boxplus_via_unitary,
                       fixed_sigma_channel, kraus_operators, mixing_channel,
                       partial_swap_unitary, swap_operator)
from .concavity import (TwoValuedDist, c_max_entropy_power, c_max_lower_bound,
                        concavity_fuzz, epni_condition_check, l_max_bruteforce,
                        parametric_gk_curve, s_r, w_r)
from .entropies import (EntropyFunctional, certified_functionals, ell, ell_inv,
                        entropy_power, g, g_inv, k, k_inv, photon_number, renyi,
                        subentropy, von_neumann)
from .errors import (BadSigmaSpec, DimensionMismatch, DomainError, EigenFailure,
                     InfeasibleEntropy, LengthMismatch, NotHermitian, NotPSD,
                     NumericalFailure, OutOfCertifiedRange, ParseError, QuditEPIError,
                     TraceNotOne, UnknownFigure, ValidationError)
from .majorization import (MajorizationReport, check_spectral_majorization, majorizes,
                           min_inequality_check)
from .states import (BlochVector, DensityMatrix, Spectrum, bloch_to_state, maximally_mixed,
                     partial_trace_second, random_state, random_unitary, spectrum,
                     state_to_bloch, validate)
