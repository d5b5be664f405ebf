"""Exact Gaussian modes of the PT-symmetric power-law NLSE and their stability."""

from .analytic import (AnalyticSoliton1D, AnalyticSoliton2D, construct_soliton_1d,
                       construct_soliton_2d, exact_mode, residual_stationary, sample)
from .dynamics import PropagationConfig, PropagationRecord, measure_growth_rate, propagate
from .eig import eigenvalues, eigenvectors
from .errors import PTSolError
from .linstab import compute_spectrum, find_threshold, ladder_scan, threshold_curve
from .model import ModelSpec, PotentialParams1D, PotentialParams2D
from .spectral import Grid1D, Grid2D

__version__ = "0.1.0"
