"""Exact integer vectors, matrices, linear systems and symbolic alphabets.

Python ints are arbitrary precision, so nothing here can overflow; the
classes only add shape checks and the 1-norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Word = str  # symbols are single characters; a word is their concatenation


class IntVec(tuple):
    """Immutable integer vector (a tuple with a 1-norm)."""

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(entries)
        for e in entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"IntVec entries must be int, got {e!r}")
        return super().__new__(cls, entries)

    @classmethod
    def zeros(cls, dim: int) -> "IntVec":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self)

    def norm1(self) -> int:
        return sum(abs(e) for e in self)

    def __add__(self, other):
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return IntVec(x + y for x, y in zip(self, other))

    def __sub__(self, other):
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return IntVec(x - y for x, y in zip(self, other))

    def scale(self, k: int) -> "IntVec":
        return IntVec(k * x for x in self)

    def __repr__(self):
        return f"IntVec({list(self)})"


class IntMatrix:
    """Dense immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
            for e in r:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise TypeError(f"matrix entries must be int, got {e!r}")
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def entries(self) -> tuple:
        return tuple(e for r in self._rows for e in r)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def norm1(self) -> int:
        return sum(abs(e) for r in self._rows for e in r)

    def column(self, j: int) -> IntVec:
        return IntVec(r[j] for r in self._rows)

    def __matmul__(self, x: Sequence[int]) -> IntVec:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return IntVec(sum(a * b for a, b in zip(r, x)) for r in self._rows)

    def column_sum(self, index_set: Iterable[int]) -> IntVec:
        """A times the characteristic vector of ``index_set`` (0-based)."""
        idx = sorted(set(index_set))
        return IntVec(sum(r[j] for j in idx) for r in self._rows)


def norm1_vec(v: Sequence[int]) -> int:
    return sum(abs(e) for e in v)


def norm1_mat(m: IntMatrix) -> int:
    return m.norm1()


@dataclass(frozen=True)
class LinearSystem:
    """The system ``a x = c`` with ``x`` ranging over the naturals."""

    a: IntMatrix
    c: IntVec

    def __post_init__(self):
        if not isinstance(self.a, IntMatrix):
            object.__setattr__(self, "a", IntMatrix(self.a))
        if not isinstance(self.c, IntVec):
            object.__setattr__(self, "c", IntVec(self.c))
        if self.a.rows != self.a.cols:
            raise ValueError(f"matrix must be square, got {self.a.rows}x{self.a.cols}")
        if self.c.dim != self.a.rows:
            raise ValueError(f"target has dimension {self.c.dim}, expected {self.a.rows}")

    @classmethod
    def of(cls, a, c) -> "LinearSystem":
        return cls(IntMatrix(a), IntVec(c))

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def is_normalized(self) -> bool:
        return self.c.norm1() <= self.a.norm1()

    def residual(self, x: Sequence[int]) -> IntVec:
        return (self.a @ x) - self.c

    def is_solution(self, x: Sequence[int]) -> bool:
        return len(x) == self.n and all(e >= 0 for e in x) and tuple(self.a @ x) == tuple(self.c)


@dataclass(frozen=True)
class Alphabet:
    """Constants, variables and an optional marker, all single characters."""

    constants: tuple = ()
    variables: tuple = ()
    marker: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(dict.fromkeys(self.constants)))
        object.__setattr__(self, "variables", tuple(dict.fromkeys(self.variables)))
        for s in self.symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"symbols must be single characters, got {s!r}")
        if set(self.constants) & set(self.variables):
            raise ValueError("constants and variables overlap")
        if self.marker is not None and self.marker in set(self.constants) | set(self.variables):
            raise ValueError(f"marker {self.marker!r} is also a constant or variable")

    @property
    def symbols(self) -> tuple:
        extra = (self.marker,) if self.marker is not None else ()
        return self.constants + self.variables + extra

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def check(self, word: Word) -> Word:
        known = set(self.symbols)
        for s in word:
            if s not in known:
                raise ValueError(f"symbol {s!r} is not in the alphabet")
        return word
