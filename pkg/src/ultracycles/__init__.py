"""Exact algebraic cycles over Q and prime fields, with prime-by-prime transfer checks."""

from .config import Limits, current_limits, use_limits
from .correspondences import (
    Correspondence,
    VarietySpec,
    category_laws_check,
    compose,
    correspondence_from_ideal,
    graph,
    identity,
    pushforward,
)
from .cycles import Ambient, Cycle, associated_cycle, complexity, cycle_of
from .decompose import PrimeComponent, local_length, minimal_primes
from .errors import UltracyclesError
from .groebner import Ideal, buchberger, normal_form
from .hilbert import hilbert
from .koszul import build_koszul, intersection_multiplicity, intersection_product
from .poly import GF, Poly, PolyRing, reduce_mod_p, ring_from_spec
from .transfer import TransferInstance, check_commutation, complexity_survey, reduce_instance
from .ultraproduct import PrimeSample, UltraElement, evaluate_sentence, los_verdict, parse_sentence

__version__ = "0.1.0"
