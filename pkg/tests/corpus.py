"""Random linear systems shared by the lindio tests and the acceptance suite."""

import random

from eqset.core import IntMatrix, IntVec, LinearSystem


def random_system(rng, n, lo=-3, hi=3):
    a = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
    c = [rng.randint(lo, hi) for _ in range(n)]
    return LinearSystem(IntMatrix(a), IntVec(c))


def uniform_corpus(seed, count=500):
    rng = random.Random(seed)
    return [random_system(rng, rng.choice((1, 2, 3))) for _ in range(count)]


def planted_corpus(seed, count=100):
    """Systems with c = A x0 for a small x0, kept only if c stays in [-3, 3]."""
    rng = random.Random(seed + 1)
    out = []
    while len(out) < count:
        n = rng.choice((1, 2, 3))
        s = random_system(rng, n)
        x0 = [rng.randint(0, 2) for _ in range(n)]
        c = s.a @ x0
        if all(-3 <= v <= 3 for v in c):
            out.append(LinearSystem(s.a, c))
    return out
