"""Exponential B-spline collocation solver for time-fractional sub-diffusion."""

__version__ = "0.1.0"

from .fractime import GmmpWeights, caputo_gmmp, gmmp_weights
from .problems import BenchmarkCase, benchmark
from .solver import (
    CoefficientHistory,
    Discretization,
    ProblemSpec,
    assemble_operators,
    initial_coefficients,
    reconstruct,
    solve,
)
from .splinebasis import SplineShape, eval_basis, knot_stencils, make_shape
from .trisolve import TriDiagonalSystem, dominance_margin, thomas_solve

__all__ = [
    "BenchmarkCase",
    "CoefficientHistory",
    "Discretization",
    "GmmpWeights",
    "ProblemSpec",
    "SplineShape",
    "TriDiagonalSystem",
    "assemble_operators",
    "benchmark",
    "caputo_gmmp",
    "dominance_margin",
    "eval_basis",
    "gmmp_weights",
    "initial_coefficients",
    "knot_stencils",
    "make_shape",
    "reconstruct",
    "solve",
    "thomas_solve",
]
