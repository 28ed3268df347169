import itertools
import random
from collections import deque

import pytest

from corpus import planted_corpus, uniform_corpus
from eqset.core import IntVec, LinearSystem
from eqset.lindio import (
    AffineMap,
    NotNormalizedError,
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
    state_bound,
)


def oracle(a, c, bound):
    """Direct substitution over the box, written independently of the library."""
    n = len(c)
    return {
        x
        for x in itertools.product(range(bound + 1), repeat=n)
        if all(sum(r[j] * x[j] for j in range(n)) == c[i] for i, r in enumerate(a))
    }


def build(a, c):
    s, proj = normalize_system(LinearSystem.of(a, c))
    return build_solution_automaton(s), s, proj


def accepted_values(aut, max_len):
    """h(0) for every accepting path of at most ``max_len`` arcs (plain DFS)."""
    succ = aut.successors()
    out = set()

    def walk(state, x, depth):
        if state == aut.final:
            out.add(tuple(x))
        if depth == max_len:
            return
        for h, q in succ[state]:
            walk(q, h(x), depth + 1)

    if is_solvable(aut):
        walk(aut.initial, aut.initial, 0)
    return out


# -- affine maps ---------------------------------------------------------


def test_affine_map_invariants():
    assert AffineMap.double(3)((1, 2, 3)) == (2, 4, 6)
    assert AffineMap.add((0, 2), 3)((1, 2, 3)) == (2, 2, 4)
    assert AffineMap.add((2, 0), 3).label() == "+1_{1,3}"
    assert AffineMap.double(2).label() == "2x"
    with pytest.raises(ValueError):
        AffineMap(1, (), 2)
    with pytest.raises(ValueError):
        AffineMap(2, (0,), 2)
    with pytest.raises(ValueError):
        AffineMap(3, (), 2)
    with pytest.raises(ValueError):
        AffineMap.add((2,), 2)


def test_report_invariant():
    with pytest.raises(ValueError):
        SolutionSetReport(solvable=False, infinite=True)


# -- normalize_system ----------------------------------------------------


def test_normalize_noop():
    s = LinearSystem.of([[1, 1], [0, 0]], [2, 0])
    t, proj = normalize_system(s)
    assert t == s
    assert proj == (0, 1)


def test_normalize_pads_one_dummy():
    s = LinearSystem.of([[2]], [3])
    t, proj = normalize_system(s)
    assert t.a.tolist() == [[2, 0], [0, 1]]
    assert tuple(t.c) == (3, 0)
    assert proj == (0,)
    assert t.c.norm1() <= t.a.norm1() == 3
    padded = {tuple(x[i] for i in proj) for x in oracle(t.a.tolist(), tuple(t.c), 10)}
    assert padded == oracle([[2]], (3,), 10)


def test_normalize_zero_matrix():
    s = LinearSystem.of([[0]], [5])
    t, proj = normalize_system(s)
    assert t.is_normalized
    assert oracle([[0]], (5,), 10) == set()
    assert oracle(t.a.tolist(), tuple(t.c), 10) == set()


def test_normalize_preserves_solution_sets_on_corpus(seed):
    for s in uniform_corpus(seed, 150):
        t, proj = normalize_system(s)
        assert t.is_normalized
        before = oracle(s.a.tolist(), tuple(s.c), 5)
        after = {tuple(x[i] for i in proj) for x in oracle(t.a.tolist(), tuple(t.c), 5)}
        assert before == after


# -- build_solution_automaton --------------------------------------------


def test_build_rejects_unnormalized():
    with pytest.raises(NotNormalizedError):
        build_solution_automaton(LinearSystem.of([[1]], [2]))


def test_build_x_equals_two():
    # x = 2 needs one dummy; the solution path is 0 -(+1_{1})-> (1,0) -(2x)-> (2,0)
    aut, s, proj = build([[1]], [2])
    assert s.a.tolist() == [[1, 0], [0, 1]]
    arcs = set(aut.arcs)
    assert ((0, 0), AffineMap.add((0,), 2), (1, 0)) in arcs
    assert ((1, 0), AffineMap.double(2), (2, 0)) in arcs
    value = AffineMap.double(2)(AffineMap.add((0,), 2)((0, 0)))
    assert value == (2, 0)
    assert oracle([[1]], (2,), 20) == {(2,)}
    assert {project(x, proj) for x in accepted_values(aut, 6)} == {(2,)}


def test_build_parity_obstruction():
    aut, _, _ = build([[2]], [1])
    assert aut.states == () and aut.arcs == ()
    assert not is_solvable(aut)


def test_build_accepted_compositions_match_oracle():
    aut, _, _ = build([[1, 1], [0, 0]], [2, 0])
    assert accepted_values(aut, 8) == oracle([[1, 1], [0, 0]], (2, 0), 4) == {
        (0, 2), (1, 1), (2, 0)
    }


def test_build_is_trim():
    aut, _, _ = build([[1, -1], [1, 1]], [0, 4])
    succ = aut.successors()
    # forward from the initial state and backward from the final state reach everything
    seen, stack = {aut.initial}, [aut.initial]
    while stack:
        for _, q in succ[stack.pop()]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    assert seen == set(aut.states)
    pred = {s: [] for s in aut.states}
    for p, _, q in aut.arcs:
        pred[q].append(p)
    seen, stack = {aut.final}, [aut.final]
    while stack:
        for p in pred[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    assert seen == set(aut.states)


def test_build_output_is_canonically_ordered():
    aut, _, _ = build([[1, -1], [1, 1]], [0, 4])
    assert list(aut.arcs) == sorted(aut.arcs)
    assert list(aut.states) == sorted(aut.states)
    again, _, _ = build([[1, -1], [1, 1]], [0, 4])
    assert again == aut


def test_arc_soundness_and_norm_bound(seed):
    for s in uniform_corpus(seed, 100) + planted_corpus(seed, 50):
        t, _ = normalize_system(s)
        aut = build_solution_automaton(t)
        assert aut.norm_bound == 2 * t.a.norm1()
        for b in aut.states:
            assert b.norm1() <= aut.norm_bound
        for p, h, q in aut.arcs:
            if h.is_double:
                assert q == tuple(2 * v for v in p)
            else:
                assert q == p + t.a.column_sum(h.add_set)
        assert len(aut.states) <= state_bound(t.a)


def test_path_soundness_by_sampling(seed):
    rng = random.Random(seed)
    for s in planted_corpus(seed, 40):
        t, _ = normalize_system(s)
        aut = build_solution_automaton(t)
        assert is_solvable(aut)
        succ = aut.successors()
        for _ in range(25):
            state, x = aut.initial, aut.initial
            for _ in range(rng.randint(0, 12)):
                if not succ[state]:
                    break
                h, state = rng.choice(succ[state])
                x = h(x)
            # in a trim automaton every state can still reach the final one
            path = _complete(aut, succ, state)
            for h in path:
                x = h(x)
            assert t.is_solution(x)


def _complete(aut, succ, state):
    prev = {state: None}
    queue = deque([state])
    while queue:
        p = queue.popleft()
        if p == aut.final:
            break
        for h, q in succ[p]:
            if q not in prev:
                prev[q] = (p, h)
                queue.append(q)
    labels = []
    node = aut.final
    while prev[node] is not None:
        node, h = prev[node]
        labels.append(h)
    return labels[::-1]


# -- queries -------------------------------------------------------------


@pytest.mark.parametrize(
    "a, c, expected",
    [
        ([[1]], [0], True),
        ([[2]], [1], False),
        ([[3]], [12], True),
    ],
)
def test_is_solvable_examples(a, c, expected):
    aut, _, _ = build(a, c)
    assert is_solvable(aut) is expected
    assert bool(oracle(a, tuple(c), 20)) is expected


def test_c_zero_has_empty_path_solution():
    aut, s, proj = build([[1]], [0])
    assert aut.initial == aut.final
    assert minimal_solution(aut) == (0,)


@pytest.mark.parametrize(
    "a, c, expected",
    [
        ([[1, -1], [0, 0]], [0, 0], True),
        ([[1, 0], [0, 1]], [1, 1], False),
        ([[1, 1], [0, 0]], [2, 0], False),
    ],
)
def test_is_infinite_examples(a, c, expected):
    aut, s, _ = build(a, c)
    assert is_infinite(aut, s) is expected


def test_is_infinite_oracles():
    assert len(oracle([[1, -1], [0, 0]], (0, 0), 5)) >= 5
    assert oracle([[1, 0], [0, 1]], (1, 1), 10) == {(1, 1)}
    assert len(oracle([[1, 1], [0, 0]], (2, 0), 10)) == 3


def test_unsolvable_is_never_infinite():
    # homogeneous part has (1,1) but 2x - 2y = 1 has no solution
    aut, s, _ = build([[2, -2], [0, 0]], [1, 0])
    assert not is_solvable(aut)
    assert not is_infinite(aut, s)


@pytest.mark.parametrize(
    "a, c, bound",
    [
        ([[1, 1], [0, 0]], [2, 0], 4),
        ([[2]], [1], 100),
        ([[1, -1], [0, 0]], [0, 0], 3),
    ],
)
def test_enumerate_examples(a, c, bound):
    aut, s, _ = build(a, c)
    got = enumerate_solutions(aut, bound)
    assert set(map(tuple, got)) == oracle(s.a.tolist(), tuple(s.c), bound)
    assert got == sorted(got)


def test_enumerate_frozen_values():
    aut, _, _ = build([[1, -1], [0, 0]], [0, 0])
    assert enumerate_solutions(aut, 3) == [(0, 0), (1, 1), (2, 2), (3, 3)]
    aut, _, _ = build([[1, 1], [0, 0]], [2, 0])
    assert enumerate_solutions(aut, 4) == [(0, 2), (1, 1), (2, 0)]


def test_enumerate_rejects_negative_bound():
    aut, _, _ = build([[1]], [1])
    with pytest.raises(ValueError):
        enumerate_solutions(aut, -1)


@pytest.mark.parametrize(
    "a, c, bound, expected",
    [
        ([[1, 1], [0, 0]], [2, 0], 2, [(0, 2), (1, 1), (2, 0)]),
        ([[3]], [7], 10, []),
        ([[1, 2], [3, 4]], [0, 0], 0, [(0, 0)]),
    ],
)
def test_brute_force(a, c, bound, expected):
    assert brute_force_solutions(LinearSystem.of(a, c), bound) == expected


def test_minimal_solution_has_least_norm(seed):
    for s in planted_corpus(seed, 60):
        t, proj = normalize_system(s)
        aut = build_solution_automaton(t)
        w = minimal_solution(aut)
        sols = oracle(t.a.tolist(), tuple(t.c), 6)
        best = min(sum(x) for x in sols)
        assert t.is_solution(w)
        assert sum(w) == best
        assert tuple(w) == min(x for x in sols if sum(x) == best)


def test_completeness_on_corpus(seed):
    for s in uniform_corpus(seed + 7, 80) + planted_corpus(seed + 7, 40):
        t, _ = normalize_system(s)
        aut = build_solution_automaton(t)
        assert enumerate_solutions(aut, 6) == brute_force_solutions(t, 6)


def test_analyze_projects_witness():
    report, aut, s, proj = analyze(LinearSystem.of([[3]], [12]))
    assert report == SolutionSetReport(True, False, IntVec((4,)))
    assert s.n == 2 and proj == (0,)


def test_large_coefficients_stay_exact():
    big = 10**20
    report, aut, _, _ = analyze(LinearSystem.of([[1, -1]] + [[0, 0]], [0, 0]))
    assert report.infinite
    report, _, _, _ = analyze(LinearSystem.of([[big]], [big]))
    assert report.witness == (1,)
