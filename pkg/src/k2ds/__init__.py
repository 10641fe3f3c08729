"""Explicit K2 and SK1 computations for quotient rings of Z[G], G an
elementary abelian p-group."""
from .invariants import k2_rank, k2c_exponent, lower_bounds, sk1_rank, sk1_zg_rank
from .presentation import GeneratorId, Unsupported, basis, enumerate_set, verify_rank
from .ring import GroupRingElement, RingError, RingSpec, format_element, parse_element
from .symbols import DennisSteinSymbol, SteinbergSymbol, SymbolVector, format_symbol, parse_symbol, reduce

__version__ = "0.1.0"
