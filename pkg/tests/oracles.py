"""Independent oracles for the zigzag decomposition tests.

brute_decompose enumerates every nonnegative interval assignment consistent
with the node dimensions and keeps those matching the full generalized-rank
table computed by the literal limit->colimit construction; the solution is
unique by inclusion-exclusion.  planted_zigzag builds a module whose
decomposition is known ahead of time and hides it behind random basis
changes.  Neither goes anywhere near the code path used by decompose().
"""

from __future__ import annotations

import random
from collections import Counter

import numpy as np

from paramhom.fieldlin import PrimeField
from paramhom.zigzag import ZigzagModule, limit_colimit_rank


def invert(field: PrimeField, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    R, piv = field.rref(np.hstack([A, field.identity(n)]))
    assert piv == list(range(n)), "matrix not invertible"
    return R[:, n:]


def random_invertible(rng: random.Random, field: PrimeField, n: int) -> np.ndarray:
    if n == 0:
        return field.identity(0)
    while True:
        A = np.array([rng.randrange(field.p) for _ in range(n * n)],
                     dtype=np.int64).reshape(n, n)
        if field.rank(A) == n:
            return A


def random_zigzag(rng: random.Random, field: PrimeField,
                  max_len: int = 8, max_dim: int = 5) -> ZigzagModule:
    n = rng.randint(1, max_len)
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    arrows = []
    for i in range(n - 1):
        direction = rng.choice("fb")
        shape = (dims[i + 1], dims[i]) if direction == "f" else (dims[i], dims[i + 1])
        M = np.array([rng.randrange(field.p) for _ in range(shape[0] * shape[1])],
                     dtype=np.int64).reshape(shape)
        arrows.append((direction, M))
    return ZigzagModule(field, dims, arrows)


def planted_zigzag(rng: random.Random, field: PrimeField, max_len: int = 6,
                   max_bars: int = 6) -> tuple[ZigzagModule, dict]:
    """A module isomorphic to a known interval sum, in a scrambled basis."""
    n = rng.randint(1, max_len)
    bars = []
    for _ in range(rng.randint(0, max_bars)):
        p = rng.randint(1, n)
        bars.append((p, rng.randint(p, n)))
    bars.sort()
    dims = [sum(1 for (p, q) in bars if p <= i <= q) for i in range(1, n + 1)]
    alive = [[j for j, (p, q) in enumerate(bars) if p <= i <= q] for i in range(1, n + 1)]
    pos = [{j: c for c, j in enumerate(a)} for a in alive]
    change = [random_invertible(rng, field, d) for d in dims]
    arrows = []
    for i in range(n - 1):
        direction = rng.choice("fb")
        if direction == "f":
            M = field.zeros(dims[i + 1], dims[i])
            for j in alive[i]:
                if j in pos[i + 1]:
                    M[pos[i + 1][j], pos[i][j]] = 1
            M = field.matmul(field.matmul(change[i + 1], M), invert(field, change[i]))
        else:
            M = field.zeros(dims[i], dims[i + 1])
            for j in alive[i + 1]:
                if j in pos[i]:
                    M[pos[i][j], pos[i + 1][j]] = 1
            M = field.matmul(field.matmul(change[i], M), invert(field, change[i + 1]))
        arrows.append((direction, M))
    return ZigzagModule(field, dims, arrows), dict(Counter(bars))


def brute_decompose(Z: ZigzagModule) -> dict:
    """Exhaustive search against the independent rank table; asserts a unique
    solution exists (guaranteed mathematically, so failure means a bug)."""
    n = Z.n
    if n == 0:
        return {}
    intervals = [(p, q) for p in range(1, n + 1) for q in range(p, n + 1)]
    table = {(p, q): limit_colimit_rank(Z, p, q) for (p, q) in intervals}
    solutions: list[dict] = []
    assignment: dict = {}
    rem = list(Z.dims)

    def matches_table() -> bool:
        for (p, q) in intervals:
            got = sum(m for (a, b), m in assignment.items() if a <= p and q <= b)
            if got != table[(p, q)]:
                return False
        return True

    def rec(idx: int) -> None:
        if idx == len(intervals):
            if all(v == 0 for v in rem) and matches_table():
                solutions.append({k: v for k, v in assignment.items() if v})
            return
        p, q = intervals[idx]
        # nothing after this point covers nodes below p
        if any(rem[j] for j in range(p - 1)):
            return
        cap = min(rem[p - 1:q])
        for m in range(cap, -1, -1):
            assignment[(p, q)] = m
            for j in range(p - 1, q):
                rem[j] -= m
            rec(idx + 1)
            for j in range(p - 1, q):
                rem[j] += m
        del assignment[(p, q)]

    rec(0)
    assert len(solutions) == 1, f"expected a unique decomposition, found {len(solutions)}"
    return solutions[0]


def brute_bottleneck(a_pts, b_pts) -> float:
    """Exhaustive minimum over all partial matchings (small inputs only).

    Uses the same ground metric as the implementation but replaces the
    matching search with full enumeration.
    """
    import math

    from paramhom.bottleneck import diagonal_distance, dinf

    a_pts, b_pts = list(a_pts), list(b_pts)
    best = math.inf

    def rec(i: int, used: frozenset, cur: float) -> None:
        nonlocal best
        if cur >= best and best < math.inf:
            return
        if i == len(a_pts):
            rest = max((diagonal_distance(b_pts[j])
                        for j in range(len(b_pts)) if j not in used),
                       default=0.0)
            best = min(best, max(cur, rest))
            return
        x = a_pts[i]
        rec(i + 1, used, max(cur, diagonal_distance(x)))
        for j in range(len(b_pts)):
            if j not in used:
                rec(i + 1, used | {j}, max(cur, dinf(x, b_pts[j])))

    rec(0, frozenset(), 0.0)
    return best
