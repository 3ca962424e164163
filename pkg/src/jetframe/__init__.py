"""Exact slanted vector fields on vertical (logarithmic) jet spaces.

Submodules: ``polycore`` (rational polynomials), ``series`` (truncated
series oracle), ``jetcalc`` (jet spaces, total derivatives, Lambda
vectors), ``bellkit`` (Bell polynomials, geometric jets), ``fieldforge``
(the frame constructions), ``verifier`` (tangency, rank, pole orders,
identities) and ``cli``.
"""
from .errors import (ConfigError, ConstructionFailed, InvalidDirection, JetFrameError,
                     NonInvertibleCurve, NoValidLambda, RangeError, ReservedIndex,
                     SamplingExhausted, UnassignedVariable, UnsupportedVariable, WrongCase)
from .polycore import (FracPoly, GeoJet, Jet, Kind, LogWJet, Param, Poly, TJet, VarId, W,
                       WJet, Z, Z1P, parse_var)
from .jetcalc import (COMPACT, LOG, JetConfig, LambdaVec, TruncCurve, VectorField, adjoint,
                      build_Dt, build_Dz1, defining_equations, lambda_vec, universal_poly)
from .bellkit import bell, bell_matrix_t, bell_matrix_z1, geo_field, vertical_T
from .fieldforge import (FrameField, FrameSpec, T_jq, T_merker, T_param, T_wq, U_general,
                         U_q_beta, assemble_frame)
from .verifier import (check_tangency, exact_rank, expected_dimension, gradient_orthogonality,
                       identity_suite, pole_audit, rank_at_point, sample_vertical_point,
                       verify_frame)

__version__ = "0.1.0"
