"""Polar weighted homogeneous mixed polynomials: weights, fiber strata and
monodromy invariants in exact arithmetic, with numerical identity checks."""

from .exact import GaussianRational, det, rank, solve_affine_system, solve_linear
from .families import (FamilySpec, brieskorn, build, chain, cyclic, g1, g2, isolated_g1,
                       isolated_g2, isolated_sigma_twisted, sigma_twisted)
from .invariants import (Divisor, InvariantReport, NotSimplicial, ZetaFactored, analyze,
                         euler_characteristic, invariants, zeta_function)
from .mixed import MixedPolynomial, ParseError, associated_laurent, join, parse, render
from .strata import StratificationReport, stratify
from .weights import NotPolarWeighted, WeightSystem, compute_weights, is_full, is_simplicial

__version__ = "0.1.0"
