"""Limit spectral graphs, eigenvalue asymptotics, and discretized spectra
for convection-dominated model operators and the channel-flow stability
problem."""

from .discretize import (BoundaryCondition, CollocationGrid, OperatorPencil,
                         SignConvention, assemble_model, assemble_os,
                         collocation_grid)
from .graph import (CurveTag, LimitGraph, SpectralCurve, build_limit_graph,
                    couette_os_curves, trace_curve)
from .linalg import (Spectrum, eigenvalues, filter_spurious,
                     generalized_eigenvalues, solve_pencil)
from .profiles import (Profile, ProfileKind, Reduction, half_sine, linear,
                       quadratic, quadratic_from_coefficients, shifted_square)
from .quantize import (CouetteConstants, Prediction, counting_function,
                       couette_determinant, predict_model_couette,
                       predict_os_couette, predict_wkb, refine_root)
from .verify import (CountingTable, MatchPair, MatchReport, compare_counting,
                     graph_distance, match_predictions, symmetry_defect)

__all__ = [
    "BoundaryCondition", "CollocationGrid", "CouetteConstants",
    "CountingTable", "CurveTag", "LimitGraph", "MatchPair", "MatchReport",
    "OperatorPencil", "Prediction", "Profile", "ProfileKind", "Reduction",
    "SignConvention", "SpectralCurve", "Spectrum", "assemble_model",
    "assemble_os", "build_limit_graph", "collocation_grid",
    "compare_counting", "counting_function", "couette_determinant",
    "couette_os_curves", "eigenvalues", "filter_spurious",
    "generalized_eigenvalues", "graph_distance", "half_sine", "linear",
    "match_predictions", "predict_model_couette", "predict_os_couette",
    "predict_wkb", "quadratic", "quadratic_from_coefficients", "refine_root",
    "shifted_square", "solve_pencil", "symmetry_defect", "trace_curve",
]

__version__ = "0.1.0"
