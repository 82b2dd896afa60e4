"""Invariants, selection rules and witnesses for Lorentzian topology change."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .expr import manifold, parse, to_text
from .homology import ChainComplex, IntegerMatrix, homology, smith_normal_form
from .kink import KinkReport, kink_of, spin_parity_check
from .manifolds import (
    Catalog,
    CobordismDescriptor,
    ManifoldDescriptor,
    catalog,
    connected_sum,
    euler_characteristic,
    product,
    semi_characteristic,
)
from .metric import LineField, SymmetricForm, extract_timelike_line, lorentz_from_riemannian, pullback_is_riemannian
from .rules import Answer, Verdict, classify, decide_lorentzian, decide_spin_lorentzian, decide_weak
from .witness import menu_for_dimension, prescribed_kink_recipe, solve_counts
