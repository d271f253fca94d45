"""Bottleneck distance between undecorated diagrams, and the stability check.

Points live in the extended plane.  Two equal infinite coordinates are at
distance 0, an infinite coordinate facing a finite one is at distance +inf,
so bars with matching infinite ends compare by their finite ends and
mismatched infinite bars can never be matched (nor parked on the diagonal)
at finite cost.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .diagrams import BehaviorType
from .levelset import all_diagrams
from .rspace import ConstructibleRSpace

__all__ = [
    "dinf",
    "diagonal_distance",
    "bottleneck_distance",
    "StabilityRecord",
    "stability_report",
]

Point = tuple[float, float]


def _diff(u: float, v: float) -> float:
    if u == v:
        return 0.0  # covers equal infinities
    if math.isinf(u) or math.isinf(v):
        return math.inf
    return abs(u - v)


def dinf(x: Point, y: Point) -> float:
    """l-infinity distance with the extended-plane infinity conventions."""
    return max(_diff(x[0], y[0]), _diff(x[1], y[1]))


def diagonal_distance(x: Point) -> float:
    """Cost of leaving x unmatched: its distance to the diagonal."""
    p, q = x
    if math.isinf(p) or math.isinf(q):
        return math.inf
    return (q - p) / 2.0


def _expand(D: Mapping[Point, int] | Iterable[Point]) -> list[Point]:
    if isinstance(D, Mapping):
        pts = []
        for pt, m in D.items():
            if m < 0:
                raise ValueError("negative multiplicity")
            pts.extend([(float(pt[0]), float(pt[1]))] * m)
        return pts
    return [(float(p), float(q)) for p, q in D]


def _feasible(a_pts: list[Point], b_pts: list[Point], delta: float) -> bool:
    """Is there a partial matching of cost <= delta?

    Reduction to perfect bipartite matching: the left side is A plus one
    diagonal slot per point of B, the right side is B plus one slot per
    point of A; diagonal slots pair with their own point when that point
    may stay unmatched, and with each other freely.
    """
    na, nb = len(a_pts), len(b_pts)
    size = na + nb
    adj: list[list[int]] = []
    for i in range(na):
        row = [j for j in range(nb) if dinf(a_pts[i], b_pts[j]) <= delta]
        if diagonal_distance(a_pts[i]) <= delta:
            row.append(nb + i)
        adj.append(row)
    diag_row = list(range(nb, size))
    for j in range(nb):
        row = list(diag_row)
        if diagonal_distance(b_pts[j]) <= delta:
            row.append(j)
        adj.append(row)

    match_right = [-1] * size

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] == -1 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(size):
        if augment(u, [False] * size):
            matched += 1
    return matched == size


def bottleneck_distance(A, B) -> float:
    """Minimal cost of a partial matching between two undecorated diagrams.

    Arguments are multisets of (p, q) pairs, as mappings to multiplicities
    or as point iterables.  The optimum is attained at one of the pairwise
    distances or diagonal distances, so a binary search over that candidate
    set is exact.
    """
    a_pts, b_pts = _expand(A), _expand(B)
    if not a_pts and not b_pts:
        return 0.0
    candidates = {0.0, math.inf}
    candidates.update(diagonal_distance(x) for x in a_pts)
    candidates.update(diagonal_distance(y) for y in b_pts)
    candidates.update(dinf(x, y) for x in a_pts for y in b_pts)
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(a_pts, b_pts, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]


@dataclass(frozen=True)
class StabilityRecord:
    distance: float
    delta: float
    passed: bool


def _same_combinatorics(X: ConstructibleRSpace, Y: ConstructibleRSpace) -> bool:
    return (X.n_critical == Y.n_critical
            and X.vertex_complexes == Y.vertex_complexes
            and X.edge_complexes == Y.edge_complexes
            and X.left_maps == Y.left_maps
            and X.right_maps == Y.right_maps)


def stability_report(X: ConstructibleRSpace, Y: ConstructibleRSpace,
                     tolerance: float = 1e-9
                     ) -> dict[tuple[int, BehaviorType], StabilityRecord]:
    """Compare the diagrams of two spaces differing only in critical values.

    delta is the sup-norm distance between the two parameter functions; for
    each degree and behaviour type the bottleneck distance of the
    undecorated diagrams must be at most delta.

    Raises:
        ValueError: if the spaces differ in anything but their values.
    """
    if not _same_combinatorics(X, Y):
        raise ValueError("spaces must share complexes and attaching maps")
    delta = max(abs(a - b) for a, b in zip(X.critical_values, Y.critical_values))
    report = {}
    for k in range(max(X.max_piece_dimension(), 0) + 2):
        DX, DY = all_diagrams(X, k), all_diagrams(Y, k)
        for t in BehaviorType:
            A = Counter({(pt.p, pt.q): m for pt, m in DX[t].points()})
            B = Counter({(pt.p, pt.q): m for pt, m in DY[t].points()})
            d = bottleneck_distance(A, B)
            report[(k, t)] = StabilityRecord(d, delta, d <= delta + tolerance)
    return report
