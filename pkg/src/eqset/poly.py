"""Integer polynomials and polynomial systems, with a text and a JSON form.

Text grammar (one constraint per line)::

    constraint := poly " = 0" | name " >= 0"
    poly       := term ((" + " | " - ") term)*   leading sign written as "-"
    term       := [coef "*"] name ("*" name)* | coef
    coef       := decimal natural number, omitted when it is 1 and names follow

Monomials are ordered by descending degree, then by the declaration order of
their unknowns; a repeated unknown is written twice (``X1*X1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Mapping

JSON_SAFE = 2**53 - 1


class Polynomial:
    """Sparse polynomial: sorted tuple of unknown names -> integer coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(sorted(mono))
            clean[mono] = clean.get(mono, 0) + coef
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def const(cls, k: int) -> "Polynomial":
        return cls({(): k})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({(name,): 1})

    @staticmethod
    def lift(x) -> "Polynomial":
        return x if isinstance(x, Polynomial) else Polynomial.const(x)

    def __add__(self, other):
        other = Polynomial.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.lift(other))

    def __rsub__(self, other):
        return Polynomial.lift(other) - self

    def __mul__(self, other):
        other = Polynomial.lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def unknowns(self) -> set:
        return {v for m in self.terms for v in m}

    def substitute(self, mapping: Mapping[str, "Polynomial"]) -> "Polynomial":
        out = Polynomial()
        for mono, coef in self.terms.items():
            term = Polynomial.const(coef)
            for v in mono:
                term = term * mapping.get(v, Polynomial.var(v))
            out = out + term
        return out

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        total = 0
        for mono, coef in self.terms.items():
            t = coef
            for v in mono:
                t *= assignment[v]
            total += t
        return total

    def ordered_terms(self, order: Mapping[str, int] = None) -> list:
        """Terms by descending degree, then by unknown rank in ``order``."""
        order = order or {}

        def rank(v):
            return (order.get(v, len(order)), v)

        terms = [(tuple(sorted(m, key=rank)), c) for m, c in self.terms.items()]
        return sorted(terms, key=lambda t: (-len(t[0]), [rank(v) for v in t[0]]))

    def to_text(self, order: Mapping[str, int] = None) -> str:
        parts = []
        for i, (mono, coef) in enumerate(self.ordered_terms(order)):
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if mono:
                body = "*".join(mono) if mag == 1 else f"{mag}*" + "*".join(mono)
            else:
                body = str(mag)
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Polynomial({self.to_text()})"


@dataclass(frozen=True)
class PolynomialSystem:
    """Constraints ``p = 0`` for each polynomial plus ``x >= 0`` for ``nonneg``."""

    unknowns: tuple
    equations: tuple
    nonneg: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "unknowns", tuple(self.unknowns))
        object.__setattr__(self, "equations", tuple(Polynomial.lift(p) for p in self.equations))
        object.__setattr__(self, "nonneg", tuple(self.nonneg))
        if len(set(self.unknowns)) != len(self.unknowns):
            raise ValueError("duplicate unknown")
        declared = set(self.unknowns)
        for p in self.equations:
            missing = p.unknowns() - declared
            if missing:
                raise ValueError(f"undeclared unknowns {sorted(missing)}")
        if not set(self.nonneg) <= declared:
            raise ValueError(f"undeclared unknowns {sorted(set(self.nonneg) - declared)}")

    @property
    def order(self) -> dict:
        return {v: i for i, v in enumerate(self.unknowns)}

    def to_text(self) -> str:
        order = self.order
        lines = [f"{p.to_text(order)} = 0" for p in self.equations]
        lines += [f"{v} >= 0" for v in self.nonneg]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        order = self.order
        return {
            "unknowns": list(self.unknowns),
            "equations": [
                [{"coef": json_int(c), "vars": list(m)} for m, c in p.ordered_terms(order)]
                for p in self.equations
            ],
            "nonneg": list(self.nonneg),
        }


def json_int(k: int):
    """Integers outside the 53-bit safe range travel as decimal strings."""
    return k if -JSON_SAFE <= k <= JSON_SAFE else str(k)


def eval_poly_system(ps: PolynomialSystem, assignment: Mapping[str, int]) -> bool:
    missing = [v for v in ps.unknowns if v not in assignment]
    if missing:
        raise KeyError(f"no value for unknowns {missing}")
    if any(assignment[v] < 0 for v in ps.nonneg):
        return False
    return all(p.evaluate(assignment) == 0 for p in ps.equations)


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def _three_squares(n: int) -> bool:
    # Legendre: n is a sum of three squares unless n = 4^a (8b + 7)
    while n and n % 4 == 0:
        n //= 4
    return n % 8 != 7


def four_squares(m: int) -> tuple:
    """``(s1, s2, s3, s4)`` with ``s1 >= s2 >= s3 >= s4 >= 0`` and squares summing to ``m``.

    The first hit in descending lexicographic order is returned.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    # m = 0 mod 8 forces every root to be even
    scale = 1
    while m and m % 8 == 0:
        m //= 4
        scale *= 2
    # descending order bounds each root from below by the remaining mass
    for s1 in range(isqrt(m), _ceil_sqrt(-(-m // 4)) - 1, -1):
        r1 = m - s1 * s1
        if not _three_squares(r1):
            continue
        for s2 in range(min(s1, isqrt(r1)), _ceil_sqrt(-(-r1 // 3)) - 1, -1):
            r2 = r1 - s2 * s2
            for s3 in range(min(s2, isqrt(r2)), _ceil_sqrt(-(-r2 // 2)) - 1, -1):
                r3 = r2 - s3 * s3
                s4 = isqrt(r3)
                if s4 * s4 == r3:
                    return (scale * s1, scale * s2, scale * s3, scale * s4)
    raise AssertionError(f"no four-square decomposition found for {m}")  # Lagrange


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def to_single_equation(ps: PolynomialSystem) -> PolynomialSystem:
    """Fold all constraints into one equation over unconstrained integers.

    Each nonnegative unknown ``x`` becomes ``x_1^2 + x_2^2 + x_3^2 + x_4^2``
    and the equations ``p_i = 0`` become ``sum p_i^2 = 0``.
    """
    taken = set(ps.unknowns)
    squares = {}
    fresh_names = {}
    for v in ps.nonneg:
        names = [_fresh(f"{v}_{j}", taken) for j in range(1, 5)]
        fresh_names[v] = names
        total = Polynomial()
        for s in names:
            total = total + Polynomial.var(s) * Polynomial.var(s)
        squares[v] = total
    unknowns = []
    for v in ps.unknowns:
        unknowns.extend(fresh_names.get(v, [v]))
    combined = Polynomial()
    for p in ps.equations:
        q = p.substitute(squares)
        combined = combined + q * q
    return PolynomialSystem(tuple(unknowns), (combined,), ())


def lift_assignment(ps: PolynomialSystem, assignment: Mapping[str, int]) -> dict:
    """Map a solution of ``ps`` to one of ``to_single_equation(ps)``."""
    single = to_single_equation(ps)
    out = {}
    it = iter(single.unknowns)
    for v in ps.unknowns:
        if v in ps.nonneg:
            for s, val in zip([next(it) for _ in range(4)], four_squares(assignment[v])):
                out[s] = val
        else:
            out[next(it)] = assignment[v]
    return out
