"""Thermodynamic formalism for conformal iterated function systems on an interval.

Pressure, the implicit ``beta_alpha`` function, Hausdorff dimensions of the
limit set, of Gibbs measures and of the non-Hoelder-differentiability set,
plus Gibbs distribution functions and finite-depth Hoelder diagnostics.
"""

from .errors import InputError, NumericalError, ResourceError, ThermoIFSError
from .ifs import (CodedPoint, CylinderInfo, IfsSpec, MapSpec, Violation, Word, cylinder,
                  decode, distortion_constant, encode, fixed_point, middle_thirds,
                  validate_ifs)
from .kernels import BACKEND
from .thermo import (AdmissibilityReport, BetaFunction, BetaPoint, DimensionReport,
                     LinearPotential, PotentialSpec, PressureEstimate, admissibility_check,
                     beta, birkhoff_sum, dim_nu_tangent, dimension_report, pressure,
                     solve_delta)
from .gibbs import (FBounds, GibbsWeights, StaircaseSample, clear_caches, cylinder_weight,
                    distribution_value, gibbs_weights, staircase_sample, write_staircase_csv)
from .hoelder import (BlockEvent, BlockScan, LambdaReport, Quotient, ScoreSeries, block_point,
                      darst_consistency, detect_blocks, empirical_quotient, lambda_dimension,
                      oscillation_score_series, right_endpoint_quotients)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
