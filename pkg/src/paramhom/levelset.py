"""Levelset zigzag of a constructible space and its decorated diagrams.

For a space with n critical values the degree-k levelset zigzag has 2n + 1
nodes, alternating gap fibers and critical fibers:

    F_0  ->  S_1  <-  F_1  ->  S_2  <-  ...  ->  S_n  <-  F_n

where S_i is the fiber at the i-th critical value, F_i is the fiber over the
open gap above it (F_0 below the first value and F_n above the last one are
empty), and every arrow is induced by the attachment of a gap fiber to the
critical fiber it abuts.  Decomposing this module and reading interval
endpoints back through the node positions yields the four decorated
diagrams.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .diagrams import BehaviorType, DecoratedDiagram, DecoratedPoint
from .rspace import ConstructibleRSpace
from .zigzag import BACKWARD, FORWARD, ZigzagModule, decompose

__all__ = ["levelset_zigzag", "translate", "all_diagrams"]


def levelset_zigzag(X: ConstructibleRSpace, k: int) -> ZigzagModule:
    """Degree-k levelset zigzag module of X.

    Node annotations are ("F", i) for the gap fiber above the i-th critical
    value (("F", 0) is the empty fiber below all of them) and ("S", i) for
    the fiber at the i-th critical value, i counted from 1.
    """
    n = X.n_critical
    dims: list[int] = []
    annotations: list[tuple[str, int]] = []
    bases = []  # homology basis per node, None for the empty ends
    for i in range(2 * n + 1):
        if i % 2 == 0:
            gap = i // 2
            annotations.append(("F", gap))
            if 0 < gap < n:
                h = X.piece_homology(("E", gap - 1), k)
            else:
                h = None
            bases.append(h)
            dims.append(0 if h is None else h.rank)
        else:
            s = (i + 1) // 2
            annotations.append(("S", s))
            h = X.piece_homology(("V", s - 1), k)
            bases.append(h)
            dims.append(h.rank)

    arrows: list[tuple[str, np.ndarray]] = []
    for i in range(1, n + 1):
        s_basis = bases[2 * i - 1]
        below = bases[2 * i - 2]
        above = bases[2 * i]
        if below is None:
            fwd = np.zeros((s_basis.rank, 0), dtype=np.int64)
        else:
            fwd = X.attachment_homology_map(i - 2, "right", k)
        arrows.append((FORWARD, fwd))
        if above is None:
            bwd = np.zeros((s_basis.rank, 0), dtype=np.int64)
        else:
            bwd = X.attachment_homology_map(i - 1, "left", k)
        arrows.append((BACKWARD, bwd))
    return ZigzagModule(X.field, tuple(dims), arrows, tuple(annotations))


def _endpoints(lo: int, hi: int, vals: Sequence[float], n: int
               ) -> tuple[float, float, bool, bool]:
    """Map a node interval [lo, hi] (1-based positions) to value endpoints.

    Returns (left, right, left_closed, right_closed).  A closed end sits at
    a critical value; an open end at a gap fiber opens at the critical value
    bounding that gap on the interval side (or at infinity for the outer
    gaps).
    """
    if lo % 2 == 0:
        left, left_closed = vals[lo // 2 - 1], True
    else:
        gap = (lo - 1) // 2
        left = -math.inf if gap == 0 else vals[gap - 1]
        left_closed = False
    if hi % 2 == 0:
        right, right_closed = vals[hi // 2 - 1], True
    else:
        gap = (hi - 1) // 2
        right = math.inf if gap == n else vals[gap]
        right_closed = False
    return left, right, left_closed, right_closed


def translate(multiplicities: Mapping[tuple[int, int], int],
              critical_values: Sequence[float]
              ) -> dict[BehaviorType, DecoratedDiagram]:
    """Turn an interval decomposition of a levelset zigzag into diagrams.

    Keys of `multiplicities` are 1-based node position pairs on the 2n + 1
    node module over the given critical values.
    """
    vals = [float(v) for v in critical_values]
    n = len(vals)
    out = {t: DecoratedDiagram() for t in BehaviorType}
    for (lo, hi), mult in sorted(multiplicities.items()):
        if mult == 0:
            continue
        if not (1 <= lo <= hi <= 2 * n + 1):
            raise ValueError(f"interval [{lo}, {hi}] out of range for n={n}")
        left, right, lc, rc = _endpoints(lo, hi, vals, n)
        btype = {
            (True, True): BehaviorType.CLOSED_CLOSED,
            (True, False): BehaviorType.CLOSED_OPEN,
            (False, True): BehaviorType.OPEN_CLOSED,
            (False, False): BehaviorType.OPEN_OPEN,
        }[(lc, rc)]
        pdec, qdec = btype.decorations
        out[btype].add(DecoratedPoint(left, pdec, right, qdec), mult)
    return out


def all_diagrams(X: ConstructibleRSpace, k: int
                 ) -> dict[BehaviorType, DecoratedDiagram]:
    """Decorated diagrams of X in degree k, one per behaviour type."""
    return translate(decompose(levelset_zigzag(X, k)), X.critical_values)
