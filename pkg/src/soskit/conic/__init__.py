"""Embedded standard-form conic solver (zero / nonneg / SOC / PSD cones)."""

from .cones import (Nonneg, Psd, SecondOrder, Zero, backend, cone_dim,
                    project_cones_numpy, smat, svec, svec_indices, svec_size)
from .dump import dump, dumps, load, loads
from .solver import (DUAL_INFEASIBLE, MAX_ITERATIONS, OPTIMAL,
                     PRIMAL_INFEASIBLE, BisectLog, BracketError, ConicProblem,
                     Settings, SolveResult, bisect, solve)

__all__ = [
    "Zero", "Nonneg", "SecondOrder", "Psd", "cone_dim", "svec", "smat",
    "svec_size", "svec_indices", "project_cones_numpy", "backend",
    "ConicProblem", "SolveResult", "Settings", "solve", "bisect",
    "BisectLog", "BracketError", "OPTIMAL", "PRIMAL_INFEASIBLE",
    "DUAL_INFEASIBLE", "MAX_ITERATIONS", "dump", "dumps", "load", "loads",
]
