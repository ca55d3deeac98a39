"""Ambient manifold of a system without heteroclinic curves."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagram import Diagram
from .errors import InconsistentDiagram, NotApplicable


class ManifoldKind(str, enum.Enum):
    SPHERE3 = "Sphere3"
    CONNECTED_SUM = "ConnectedSumS2xS1"


@dataclass(frozen=True)
class ManifoldClass:
    m: int
    kind: ManifoldKind
    saddle_points: int
    node_points: int

    def __post_init__(self):
        if (self.kind is ManifoldKind.SPHERE3) != (self.m == 0):
            raise ValueError("the 3-sphere is exactly the case m = 0")

    def __str__(self) -> str:
        if self.kind is ManifoldKind.SPHERE3:
            return "S^3"
        return f"#{self.m}(S^2 x S^1)"


def classify(diagram: Diagram) -> ManifoldClass:
    """Number ``m = (saddles - nodes + 2) / 2`` of ``S^2 x S^1`` summands.

    Saddles and nodes are counted as periodic points. ``m = 0`` means the
    ambient manifold is the 3-sphere.

    Raises:
        NotApplicable: the diagram has heteroclinic curves.
        InconsistentDiagram: ``m`` is negative or not an integer.
    """
    if not diagram.no_heteroclinic_curves:
        raise NotApplicable("classification needs a diagram without heteroclinic curves")
    counts = diagram.point_counts()
    saddles = counts[1] + counts[2]
    nodes = counts[0] + counts[3]
    twice_m = saddles - nodes + 2
    if twice_m < 0 or twice_m % 2:
        raise InconsistentDiagram(
            f"{saddles} saddle and {nodes} node points give m = {twice_m}/2, "
            "which is not a non-negative integer"
        )
    m = twice_m // 2
    kind = ManifoldKind.SPHERE3 if m == 0 else ManifoldKind.CONNECTED_SUM
    return ManifoldClass(m=m, kind=kind, saddle_points=saddles, node_points=nodes)
