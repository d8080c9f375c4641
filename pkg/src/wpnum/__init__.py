"""Numerics for Weil-Petersson class Teichmueller theory on the disk model.

Hyperbolic-weighted norms of differentials, Schwarzian calculus, the
Ahlfors-Weill reflection, the harmonic Beltrami projection and the
Weil-Petersson pairing, each with closed-form cross-checks.
"""
from . import annulus, diff, geom, project, quad, schwarz, wp
from .annulus import LaurentSeries, laurent_coeffs, moment_I, weighted_norm_series, wulf_constant
from .diff import Differential, HarmonicBeltrami, beltrami_from_quadratic, lp_norm
from .errors import BidegreeError, DivergenceError, DomainError, NumericError, ParameterError
from .geom import cayley, cayley_inv, lambda_disk, lambda_halfplane, pullback_metric
from .project import decompose, k_project_direct, k_project_series, p_project
from .quad import annulus_rule, disk_rule, integrate
from .schwarz import PowerSeries, pre_schwarzian, psi_map, schwarzian
from .wp import wp_gram, wp_inner

__version__ = "0.1.0"
