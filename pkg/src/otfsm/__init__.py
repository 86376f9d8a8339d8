"""Finite-state Optimality Theory: candidate automata, constraint transducers
with mark vectors, best-harmony labelling and pruning."""

from .constraints import (
    Edge,
    Role,
    build_fill,
    build_gen_syllabification,
    build_nointervening,
    build_ons,
    syllable_alphabet,
)
from .errors import (
    AlphabetMismatchError,
    DegreeError,
    DomainError,
    EmptySurfaceError,
    FormatError,
    MalformedMachineError,
    PositiveMarkError,
    RejectError,
    TruncationError,
    UnknownSymbolError,
)
from .fsm import Alphabet, Arc, Machine, accepts, evaluate, merge_terminals, strip_marks, trim
from .harmony import (
    MarkAlphabet,
    MarkList,
    decompose,
    filter_marks,
    list_compare,
    mv_add,
    mv_compare,
    mv_concat,
)
from .optimize import derive, label_nodes, precompile, prune
from .oracle import brute_force_optima, check_equivalence, enumerate_language
from .product import augmented_product, product
from .regex import compile_expr
from .textformat import format_machine, load_machine, parse_machine, save_machine

__version__ = "0.1.0"
