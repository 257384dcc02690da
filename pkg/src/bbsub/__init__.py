"""Numerical verification of Briot-Bouquet differential subordinations."""

from .analytic import (
    AnalyticFn,
    cauchy_derivative,
    chi,
    closed_form,
    power_series,
    principal_log,
    principal_sqrt,
    shi,
    sqrt_upper,
)
from .bernardi import (
    CorpusEntry,
    bb_solution,
    bernardi,
    bernardi_transform,
    class_membership,
    example_p1,
    example_p2,
    load_corpus,
    make_starlike_from_target,
    open_door,
    star_ratio,
)
from .certify import GapReport, certify, endpoint_minimum_check
from .errors import DomainError, ParameterError, PoleError, QuadratureError
from .regions import EXP_DISC, LEMNISCATE, PARABOLA, Region, gap, janowski, phi_par
from .subordination import SubordReport, bb_transform, is_subordinate, ode_residual
from .theorems import BBParams, HypothesisResult, feasible_interval, hypothesis, specialize

__version__ = "0.1.0"
