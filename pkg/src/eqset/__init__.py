"""Solution sets of linear Diophantine systems, EDT0L systems and word equations."""

from .core import Alphabet, IntMatrix, IntVec, LinearSystem, norm1_mat, norm1_vec
from .edt0l import (
    EDT0LSystem,
    EndoAutomaton,
    Endomorphism,
    apply,
    compose,
    edt0l_enumerate,
    edt0l_is_empty,
    edt0l_is_language_infinite,
    from_affine_automaton,
    split_tuple,
)
from .lindio import (
    AffineAutomaton,
    AffineMap,
    SolutionSetReport,
    analyze,
    brute_force_solutions,
    build_solution_automaton,
    enumerate_solutions,
    is_infinite,
    is_solvable,
    minimal_solution,
    normalize_system,
    project,
)
from .poly import Polynomial, PolynomialSystem, eval_poly_system, four_squares, to_single_equation
from .wordeq import (
    Mat2,
    Substitution,
    WordEquation,
    brute_force_wordeq,
    decode_matrix,
    encode_equation,
    matrix_of_word,
    parse_equation,
)

__version__ = "0.1.0"
