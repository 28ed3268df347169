"""Word equations over free monoids and their encoding as integer polynomials.

Words over ``{a, b}`` embed into SL(2, Z) through

    a -> [[1, 0], [1, 1]],    b -> [[1, 1], [0, 1]],

which generate a free monoid consisting of exactly the determinant-one
matrices with natural entries.  A word equation therefore becomes a system
of degree-two polynomial equations in four unknowns per variable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .core import Alphabet, Word
from .poly import Polynomial, PolynomialSystem


class EquationSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class WordEquation:
    alphabet: Alphabet
    lhs: Word
    rhs: Word

    def __post_init__(self):
        self.alphabet.check(self.lhs)
        self.alphabet.check(self.rhs)
        if self.alphabet.marker is not None and (
            self.alphabet.marker in self.lhs or self.alphabet.marker in self.rhs
        ):
            raise ValueError("the marker cannot occur in an equation")

    @property
    def constants(self) -> tuple:
        return self.alphabet.constants

    @property
    def variables(self) -> tuple:
        return self.alphabet.variables

    @property
    def length(self) -> int:
        return len(self.lhs) + len(self.rhs)

    def __str__(self):
        return f"{self.lhs}={self.rhs}"


@dataclass(frozen=True)
class Substitution:
    """Images of the variables, kept in variable order."""

    images: tuple  # ((variable, word), ...)

    @classmethod
    def of(cls, mapping: Mapping[str, Word]) -> "Substitution":
        return cls(tuple(mapping.items()))

    def __getitem__(self, variable: str) -> Word:
        return dict(self.images)[variable]

    def as_dict(self) -> dict:
        return dict(self.images)

    def apply(self, word: Word) -> Word:
        m = dict(self.images)
        return "".join(m.get(s, s) for s in word)

    def __str__(self):
        return ", ".join(f"{v}={w or 'ε'}" for v, w in self.images)


_EQUATION = re.compile(r"^([a-zA-Z]*)=([a-zA-Z]*)$")


def parse_equation(text: str) -> WordEquation:
    """``<word>=<word>``; lowercase letters are constants, uppercase are variables."""
    compact = "".join(text.split())
    if compact.count("=") != 1:
        raise EquationSyntaxError(f"expected exactly one '=' in {text!r}")
    m = _EQUATION.match(compact)
    if not m:
        bad = sorted({ch for ch in compact if not (ch.isascii() and ch.isalpha()) and ch != "="})
        raise EquationSyntaxError(f"illegal characters {bad} in {text!r}")
    lhs, rhs = m.groups()
    letters = lhs + rhs
    constants = tuple(dict.fromkeys(ch for ch in letters if ch.islower()))
    variables = tuple(dict.fromkeys(ch for ch in letters if ch.isupper()))
    return WordEquation(Alphabet(constants, variables), lhs, rhs)


def shortlex_words(letters, max_len: int) -> Iterator[Word]:
    for k in range(max_len + 1):
        for t in itertools.product(letters, repeat=k):
            yield "".join(t)


def brute_force_wordeq(eq: WordEquation, len_cap: int) -> list:
    """Every solution whose images all have length at most ``len_cap``.

    Images are drawn shortlex over the constants; the result is ordered by
    the tuple of images, variable by variable.
    """
    candidates = list(shortlex_words(sorted(eq.constants), len_cap))
    out = []
    for images in itertools.product(candidates, repeat=len(eq.variables)):
        sigma = Substitution(tuple(zip(eq.variables, images)))
        if sigma.apply(eq.lhs) == sigma.apply(eq.rhs):
            out.append(sigma)
    return out


def is_solution(eq: WordEquation, sigma: Substitution) -> bool:
    images = sigma.as_dict()
    if set(images) != set(eq.variables):
        return False
    if any(ch not in eq.constants for w in images.values() for ch in w):
        return False
    return sigma.apply(eq.lhs) == sigma.apply(eq.rhs)


@dataclass(frozen=True)
class Mat2:
    m11: int
    m12: int
    m21: int
    m22: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def entries(self) -> tuple:
        return (self.m11, self.m12, self.m21, self.m22)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"


GENERATORS = {"a": Mat2(1, 0, 1, 1), "b": Mat2(1, 1, 0, 1)}


def matrix_of_word(w: Word) -> Mat2:
    m = Mat2.identity()
    for ch in w:
        try:
            m = m @ GENERATORS[ch]
        except KeyError:
            raise ValueError(f"symbol {ch!r} has no generator matrix") from None
    return m


def decode_matrix(m: Mat2) -> Word:
    """The word over {a, b} whose matrix is ``m``.

    Left multiplication by ``a`` adds the first row to the second, by ``b``
    the second row to the first, so the larger row names the first letter.
    """
    if min(m.entries) < 0 or m.det != 1:
        raise ValueError(f"{m} is not a determinant-one matrix with natural entries")
    out = []
    m11, m12, m21, m22 = m.entries
    while (m11, m12, m21, m22) != (1, 0, 0, 1):
        if m21 >= m11 and m22 >= m12:
            out.append("a")
            m21, m22 = m21 - m11, m22 - m12
        elif m11 >= m21 and m12 >= m22:
            out.append("b")
            m11, m12 = m11 - m21, m12 - m22
        else:
            raise ValueError(f"{m} is not in the monoid generated by a and b")
    return "".join(out)


class _PolyMat:
    def __init__(self, e11, e12, e21, e22):
        self.e = tuple(Polynomial.lift(x) for x in (e11, e12, e21, e22))

    def __matmul__(self, o):
        a, b, c, d = self.e
        p, q, r, s = o.e
        return _PolyMat(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)


def unknown_names(variable: str) -> tuple:
    return tuple(f"{variable}{i}" for i in range(1, 5))


def encode_equation(eq: WordEquation) -> PolynomialSystem:
    """Polynomial system over Z solvable exactly when ``eq`` is.

    Four entry equations (lhs product minus rhs product), one determinant
    equation per variable, and nonnegativity of every unknown.
    """
    extra = [c for c in eq.constants if c not in GENERATORS]
    if extra:
        raise ValueError(f"only the constants a and b can be encoded, got {extra}")

    def product(word):
        m = _PolyMat(1, 0, 0, 1)
        for ch in word:
            if ch in GENERATORS:
                m = m @ _PolyMat(*GENERATORS[ch].entries)
            else:
                m = m @ _PolyMat(*map(Polynomial.var, unknown_names(ch)))
        return m

    left, right = product(eq.lhs), product(eq.rhs)
    equations = [l - r for l, r in zip(left.e, right.e)]
    unknowns = []
    for v in eq.variables:
        x1, x2, x3, x4 = map(Polynomial.var, unknown_names(v))
        equations.append(x1 * x4 - x2 * x3 - 1)
        unknowns.extend(unknown_names(v))
    return PolynomialSystem(tuple(unknowns), tuple(equations), tuple(unknowns))


def assignment_of(sigma: Substitution) -> dict:
    """Matrix entries of each variable's image, keyed by unknown name."""
    out = {}
    for v, w in sigma.images:
        out.update(zip(unknown_names(v), matrix_of_word(w).entries))
    return out


def substitution_of(eq: WordEquation, assignment: Mapping[str, int]) -> Substitution:
    """Decode per-variable matrices back into words."""
    return Substitution(
        tuple(
            (v, decode_matrix(Mat2(*(assignment[u] for u in unknown_names(v)))))
            for v in eq.variables
        )
    )
