"""Solution sets of linear Diophantine systems over the naturals.

The solutions of ``A x = c`` are described by a finite automaton whose
states are integer vectors ``b`` of bounded 1-norm and whose arcs carry the
affine maps ``x -> x + 1_I`` and ``x -> 2x``.  Walking a path from the zero
state to ``c`` and applying the labels to the zero vector (first arc
innermost) yields a solution, and every solution arises this way.

Read backwards, a path is the halving procedure: subtract the odd part of
the solution, then halve both solution and right-hand side.  Starting from
a system with ``|c|_1 <= |A|_1`` the right-hand side at round boundaries
stays within ``|A|_1`` and the pre-halving intermediates within
``2|A|_1``, which is the cap used for states here.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import IntMatrix, IntVec, LinearSystem, norm1_mat, norm1_vec


class NotNormalizedError(ValueError):
    """Raised when a system with ``|c|_1 > |A|_1`` is handed to the builder."""


@dataclass(frozen=True, order=True)
class AffineMap:
    """``x -> scale * x + 1_I``; ``add_set`` holds 0-based coordinates."""

    scale: int
    add_set: tuple
    dim: int = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "add_set", tuple(sorted(set(self.add_set))))
        if self.scale not in (1, 2):
            raise ValueError(f"scale must be 1 or 2, got {self.scale}")
        if self.scale == 1 and not self.add_set:
            raise ValueError("an add label needs a non-empty index set")
        if self.scale == 2 and self.add_set:
            raise ValueError("a doubling label carries no index set")
        if any(i < 0 or i >= self.dim for i in self.add_set):
            raise ValueError(f"index set {self.add_set} out of range for dimension {self.dim}")

    @classmethod
    def double(cls, dim: int) -> "AffineMap":
        return cls(2, (), dim)

    @classmethod
    def add(cls, index_set: Iterable[int], dim: int) -> "AffineMap":
        return cls(1, tuple(index_set), dim)

    @property
    def is_double(self) -> bool:
        return self.scale == 2

    def __call__(self, x):
        if self.scale == 2:
            return IntVec(2 * e for e in x)
        s = set(self.add_set)
        return IntVec(e + 1 if i in s else e for i, e in enumerate(x))

    def label(self) -> str:
        if self.scale == 2:
            return "2x"
        return "+1_{" + ",".join(str(i + 1) for i in self.add_set) + "}"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class AffineAutomaton:
    dim: int
    states: tuple
    arcs: tuple  # (source, AffineMap, target), lexicographically sorted
    initial: IntVec
    final: IntVec
    norm_bound: int

    def successors(self) -> dict:
        out = {s: [] for s in self.states}
        for p, h, q in self.arcs:
            out[p].append((h, q))
        return out

    @property
    def is_empty(self) -> bool:
        return not self.states


@dataclass(frozen=True)
class SolutionSetReport:
    solvable: bool
    infinite: bool
    witness: Optional[IntVec] = None

    def __post_init__(self):
        if self.infinite and not self.solvable:
            raise ValueError("an infinite solution set must be solvable")


def normalize_system(s: LinearSystem):
    """Pad ``s`` with a dummy variable until ``|c|_1 <= |A|_1``.

    The dummy gets a fresh row ``d * y = 0`` where ``d`` is the norm deficit,
    so it is forced to zero and the projected solution set is unchanged.
    Returns the padded system and the original coordinates (0-based).
    """
    n = s.n
    projection = tuple(range(n))
    deficit = s.c.norm1() - s.a.norm1()
    if deficit <= 0:
        return s, projection
    rows = [list(r) + [0] for r in s.a.tolist()]
    rows.append([0] * n + [deficit])
    return LinearSystem(IntMatrix(rows), IntVec(tuple(s.c) + (0,))), projection


def _nonempty_subsets(n: int):
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def _add_vec(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _norm(v):
    return sum(x if x >= 0 else -x for x in v)


def build_solution_automaton(s: LinearSystem) -> AffineAutomaton:
    """Trimmed automaton over affine maps whose paths 0 -> c give all solutions."""
    if not s.is_normalized:
        raise NotNormalizedError(
            f"|c|_1 = {s.c.norm1()} exceeds |A|_1 = {s.a.norm1()}; call normalize_system first"
        )
    n = s.n
    bound = 2 * norm1_mat(s.a)
    double = AffineMap.double(n)
    adds = [(AffineMap.add(I, n), tuple(s.a.column_sum(I))) for I in _nonempty_subsets(n)]

    zero = (0,) * n
    forward = {zero: []}
    queue = deque([zero])
    while queue:
        b = queue.popleft()
        out = forward[b]
        d = tuple(2 * x for x in b)
        if _norm(d) <= bound:
            out.append((double, d))
            if d not in forward:
                forward[d] = []
                queue.append(d)
        for h, col in adds:
            t = _add_vec(b, col)
            if _norm(t) <= bound:
                out.append((h, t))
                if t not in forward:
                    forward[t] = []
                    queue.append(t)

    target = tuple(s.c)
    live = set()
    if target in forward:
        backward = {}
        for p, out in forward.items():
            for _, q in out:
                backward.setdefault(q, []).append(p)
        live.add(target)
        queue = deque([target])
        while queue:
            q = queue.popleft()
            for p in backward.get(q, ()):
                if p not in live:
                    live.add(p)
                    queue.append(p)

    arcs = sorted(
        (IntVec(p), h, IntVec(q))
        for p in live
        for h, q in forward[p]
        if q in live
    )
    return AffineAutomaton(
        dim=n,
        states=tuple(sorted(IntVec(b) for b in live)),
        arcs=tuple(arcs),
        initial=IntVec(zero),
        final=IntVec(target),
        norm_bound=bound,
    )


def is_solvable(aut: AffineAutomaton) -> bool:
    # trimmed: the zero state survives iff some path reaches the final state
    return aut.initial in set(aut.states)


def is_infinite(aut_for_c: AffineAutomaton, s: LinearSystem) -> bool:
    """Solvable and the homogeneous system has a nonzero natural solution."""
    if not is_solvable(aut_for_c):
        return False
    hom = build_solution_automaton(LinearSystem(s.a, IntVec.zeros(s.n)))
    return any(not h.is_double for _, h, _ in hom.arcs)


def enumerate_solutions(aut: AffineAutomaton, coord_bound: int) -> list:
    """All accepted values ``h(0)`` with every coordinate at most ``coord_bound``."""
    if coord_bound < 0:
        raise ValueError("coord_bound must be nonnegative")
    if not is_solvable(aut):
        return []
    succ = aut.successors()
    start = (aut.initial, tuple(aut.initial))
    seen = {start}
    queue = deque([start])
    found = set()
    while queue:
        state, x = queue.popleft()
        if state == aut.final:
            found.add(x)
        for h, q in succ[state]:
            y = tuple(h(x))
            if max(y) > coord_bound:
                continue  # both label families are monotone on naturals
            pair = (q, y)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return [IntVec(x) for x in sorted(found)]


def minimal_solution(aut: AffineAutomaton) -> Optional[IntVec]:
    """A solution of least 1-norm (ties broken lexicographically), or None."""
    if not is_solvable(aut):
        return None
    succ = aut.successors()
    zero = tuple(aut.initial)
    heap = [(0, zero, aut.initial)]
    done = set()
    while heap:
        weight, x, state = heapq.heappop(heap)
        if (state, x) in done:
            continue
        done.add((state, x))
        if state == aut.final:
            return IntVec(x)
        for h, q in succ[state]:
            y = tuple(h(x))
            if (q, y) not in done:
                heapq.heappush(heap, (sum(y), y, q))
    return None


def brute_force_solutions(s: LinearSystem, coord_bound: int) -> list:
    """Exhaustive scan of ``[0..coord_bound]^n``."""
    rows = s.a.tolist()
    c = tuple(s.c)
    out = []
    for x in itertools.product(range(coord_bound + 1), repeat=s.n):
        if all(sum(a * v for a, v in zip(r, x)) == ci for r, ci in zip(rows, c)):
            out.append(IntVec(x))
    return out


def project(x, projection) -> IntVec:
    return IntVec(x[i] for i in projection)


def analyze(s: LinearSystem) -> tuple:
    """Normalize, build and query ``s``.

    Returns ``(report, automaton, normalized_system, projection)``; the
    witness in the report is already projected to the original coordinates.
    """
    norm_s, projection = normalize_system(s)
    aut = build_solution_automaton(norm_s)
    solvable = is_solvable(aut)
    infinite = is_infinite(aut, norm_s)
    witness = minimal_solution(aut)
    if witness is not None:
        witness = project(witness, projection)
    return SolutionSetReport(solvable, infinite, witness), aut, norm_s, projection


def state_bound(a: IntMatrix) -> int:
    """Upper bound ``(2|A|_1 + 1)^n`` on the number of automaton states."""
    return (2 * a.norm1() + 1) ** a.rows


def reference_state_count(a: IntMatrix) -> int:
    """``|A|_1^(2n+1)``, the classical count of round-boundary vectors."""
    return a.norm1() ** (2 * a.rows + 1)
