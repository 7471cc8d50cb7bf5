"""Symbolic matrix systems, λ-graph systems and textile systems on them."""

from .errors import *  # noqa: F401,F403
from .lgs import (
    LabeledGraph, LambdaGraphSystem, PhiMap, check_essential, check_left_resolving, check_local_property,
    enumerate_paths, enumerate_words, higher_block_lgs, lgs_from_labeled_graph, lgs_from_sms, phi_map,
    sms_from_lgs, validate_lgs)
from .sms import (
    SymbolicMatrixSystem, compare_languages, higher_block_sms, language, product_system, psse_power_product,
    sms_isomorphic, validate_sms)
from .symbolic import (
    Alphabet, BitMatrix, FormalSum, Specification, SymbolicMatrix, apply_specification, bit_sym_mul,
    check_specified_equivalence, compose_specifications, invert_specification, sym_bit_mul, sym_mat_mul)
from .verdict import Verdict, Violation
from .window import Window

__version__ = "0.1.0"
