"""Parametrized cohomology diagrams via the dual zigzag.

Over a field the cohomology of every fiber and slice is the linear dual of
its homology, and restriction maps dualize to transposes, so the levelset
zigzag dualizes node by node with all arrows reversed and decomposes into
the same intervals with the same multiplicities.  Running the decomposition
on the transposed matrices is an independent computation, which makes
agreement with the homology diagrams a genuine consistency check; a
disagreement means the decomposition itself is broken and is raised rather
than returned.
"""

from __future__ import annotations

from .diagrams import BehaviorType, DecoratedDiagram
from .levelset import all_diagrams, levelset_zigzag, translate
from .rspace import ConstructibleRSpace
from .zigzag import decompose, dualize

__all__ = ["DualityError", "cohomology_diagrams"]


class DualityError(Exception):
    """Cohomology and homology diagrams disagree on the same space."""


def cohomology_diagrams(X: ConstructibleRSpace, k: int
                        ) -> dict[BehaviorType, DecoratedDiagram]:
    """Degree-k cohomology diagrams of X, checked against homology."""
    dual = dualize(levelset_zigzag(X, k))
    diagrams = translate(decompose(dual), X.critical_values)
    if diagrams != all_diagrams(X, k):
        raise DualityError(
            f"degree {k}: cohomology diagrams differ from homology diagrams")
    return diagrams
