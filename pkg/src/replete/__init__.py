"""Exact lattice-point counts for replete ideals of number fields.

Fields, fractional and replete ideals, certified counts of H^0, theta
identities, Minkowski growth and asymptotic scans.
"""

from .adelic import (CharacterConvention, SchwartzTestFunction, TateReport, ThetaSum,
                     archimedean_idele, fourier_tables, gaussian_test_function,
                     self_dual_volume, tate_check, theta_lhs, theta_rhs, vol_B)
from .errors import (BudgetExceeded, CapExceeded, ConventionError, FieldConstructionError,
                     NotMonogenicError, PrecisionError, RepleteError, ToleranceError,
                     TruncationError)
from .field import (FieldElement, NumberField, Place, different_ideal, embed_element,
                    field_arith, field_from_spec, load_field_spec, make_field, preset,
                    quadratic_field, rational_field)
from .growth import (ArchRegion, Box, Disc, GrowthEstimate, Interval, SurfaceEstimate,
                     minkowski_growth, surface_area, unit_ball, unit_cube)
from .harness import (ScanFamily, ScanResult, ScanRow, emit_csv, estimate_constant,
                      fit_error_exponent, geometric_schedule, principal_invariance_check,
                      scan_family)
from .ideals import (FracIdeal, IdelePresentation, RepleteIdeal, ideal_from_generators,
                     ideal_ops, idele_to_replete, principal_ideal, replete, replete_norm,
                     replete_ops, replete_to_idele, trivial_idele, unit_ideal)
from .lattice import (H0Region, MinkowskiLattice, count_H0, count_region, enumerate_H0,
                      exact_membership, minkowski_basis)

__version__ = "0.1.0"
