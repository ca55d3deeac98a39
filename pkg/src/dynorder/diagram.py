"""Combinatorial model of a Morse-Smale diffeomorphism of a closed 3-manifold.

A :class:`Diagram` lists the periodic orbits with their Morse index
(dimension of the unstable manifold) and period, the intersection relation
between invariant manifolds, the point-level separatrix data of the saddles
with one-dimensional invariant manifolds, and external embedding annotations.

Points of an orbit of period ``p`` are labelled ``0 .. p-1`` and the map acts
on them as the cyclic shift ``j -> j + 1 (mod p)``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import UnknownOrbit

SINK, SOURCE = 0, 3


class EdgeKind(str, enum.Enum):
    NODE_BASIN = "node_basin"
    HETEROCLINIC_POINT = "heteroclinic_point"
    HETEROCLINIC_CURVE = "heteroclinic_curve"


def expected_kind(upper_index: int, lower_index: int) -> EdgeKind | None:
    """Kind of intersection ``W^u(upper) & W^s(lower)`` allowed by the indices.

    Returns ``None`` when two distinct orbits with these indices cannot have a
    transverse intersection of their unstable and stable manifolds.
    """
    if lower_index > upper_index:
        return None
    if lower_index == SINK or upper_index == SOURCE:
        if lower_index == upper_index:
            return None
        return EdgeKind.NODE_BASIN
    if lower_index == upper_index:
        # 1-dimensional and 2-dimensional manifolds of two distinct saddles
        return EdgeKind.HETEROCLINIC_POINT
    return EdgeKind.HETEROCLINIC_CURVE


class OrbitPoint(NamedTuple):
    orbit: str
    point: int

    def __str__(self) -> str:
        return f"{self.orbit}[{self.point}]"


@dataclass(frozen=True)
class Orbit:
    id: str
    period: int
    index: int
    separatrix_swap: bool = False

    @property
    def is_sink(self) -> bool:
        return self.index == SINK

    @property
    def is_source(self) -> bool:
        return self.index == SOURCE

    @property
    def is_saddle(self) -> bool:
        return self.index in (1, 2)


@dataclass(frozen=True)
class IntersectionEdge:
    """``W^u(upper)`` meets ``W^s(lower)``, i.e. ``lower`` precedes ``upper``."""

    upper: str
    lower: str
    kind: EdgeKind

    def __post_init__(self):
        object.__setattr__(self, "kind", EdgeKind(self.kind))


@dataclass(frozen=True)
class SeparatrixRecord:
    """Limit points of the two one-dimensional separatrices of a saddle point.

    On the attractor side ``saddle`` is a point of an index-1 orbit and the
    branches are its unstable separatrices. On the repeller side ``saddle``
    is a point of an index-2 orbit and the branches are its stable
    separatrices.
    """

    saddle: OrbitPoint
    branches: tuple[tuple[OrbitPoint, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "saddle", OrbitPoint(*self.saddle))
        object.__setattr__(
            self,
            "branches",
            tuple(tuple(OrbitPoint(*t) for t in branch) for branch in self.branches),
        )

    def targets(self) -> set[OrbitPoint]:
        return {t for branch in self.branches for t in branch}


@dataclass(frozen=True)
class EmbeddingAnnotation:
    """Embedding data of the one-dimensional attractor created by ``saddle_orbit``.

    ``tight`` and ``strongly_tight`` are topological facts that cannot be
    derived from the combinatorics and are supplied by the user.
    """

    saddle_orbit: str
    tight: bool
    strongly_tight: bool
    handle_genus_witness: int


@dataclass(frozen=True)
class Diagram:
    name: str
    orbits: tuple[Orbit, ...]
    edges: tuple[IntersectionEdge, ...] = ()
    separatrices: tuple[SeparatrixRecord, ...] = ()
    repeller_separatrices: tuple[SeparatrixRecord, ...] = ()
    annotations: tuple[EmbeddingAnnotation, ...] = ()
    repeller_annotations: tuple[EmbeddingAnnotation, ...] = ()
    no_heteroclinic_curves: bool = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        for name in (
            "orbits",
            "edges",
            "separatrices",
            "repeller_separatrices",
            "annotations",
            "repeller_annotations",
        ):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.no_heteroclinic_curves is None:
            object.__setattr__(
                self,
                "no_heteroclinic_curves",
                not any(e.kind is EdgeKind.HETEROCLINIC_CURVE for e in self.edges),
            )

    @cached_property
    def orbit_map(self) -> dict[str, Orbit]:
        return {o.id: o for o in self.orbits}

    def orbit(self, orbit_id: str) -> Orbit:
        try:
            return self.orbit_map[orbit_id]
        except KeyError:
            raise UnknownOrbit(orbit_id) from None

    def ids(self, index: int | None = None) -> list[str]:
        return [o.id for o in self.orbits if index is None or o.index == index]

    def point_counts(self) -> dict[int, int]:
        """Period-weighted number of periodic points of each Morse index."""
        counts = Counter({q: 0 for q in range(4)})
        for o in self.orbits:
            counts[o.index] += o.period
        return dict(counts)

    def points(self, orbit_id: str) -> list[OrbitPoint]:
        return [OrbitPoint(orbit_id, j) for j in range(self.orbit(orbit_id).period)]

    def annotation_for(self, orbit_id: str, repeller: bool = False) -> EmbeddingAnnotation | None:
        pool = self.repeller_annotations if repeller else self.annotations
        for a in pool:
            if a.saddle_orbit == orbit_id:
                return a
        return None

    def inverse(self) -> Diagram:
        """The diagram of the inverse diffeomorphism.

        Morse indices become ``3 - q``, every edge is reversed, and the two
        sides of separatrix and annotation data trade places. Points are
        relabelled ``j -> -j (mod p)`` so that the inverse map again acts as
        the cyclic shift; on orbits whose return map swaps the branches the
        branch labels of points ``j != 0`` are exchanged accordingly. Applying
        ``inverse`` twice returns an equal diagram.
        """
        periods = {o.id: o.period for o in self.orbits}

        def flip(p: OrbitPoint) -> OrbitPoint:
            period = periods.get(p.orbit)
            if not period:
                return p
            return OrbitPoint(p.orbit, (-p.point) % period)

        def flip_record(rec: SeparatrixRecord) -> SeparatrixRecord:
            branches = tuple(tuple(flip(t) for t in b) for b in rec.branches)
            orbit = self.orbit_map.get(rec.saddle.orbit)
            period = periods.get(rec.saddle.orbit)
            if orbit is not None and orbit.separatrix_swap and period and rec.saddle.point % period:
                branches = branches[::-1]
            return SeparatrixRecord(flip(rec.saddle), branches)

        return Diagram(
            name=self.name,
            orbits=tuple(replace(o, index=3 - o.index) for o in self.orbits),
            edges=tuple(IntersectionEdge(e.lower, e.upper, e.kind) for e in self.edges),
            separatrices=tuple(flip_record(r) for r in self.repeller_separatrices),
            repeller_separatrices=tuple(flip_record(r) for r in self.separatrices),
            annotations=self.repeller_annotations,
            repeller_annotations=self.annotations,
            no_heteroclinic_curves=self.no_heteroclinic_curves,
        )

    def with_annotations(
        self,
        annotations: Iterable[EmbeddingAnnotation] | None = None,
        repeller_annotations: Iterable[EmbeddingAnnotation] | None = None,
    ) -> Diagram:
        return replace(
            self,
            annotations=tuple(self.annotations if annotations is None else annotations),
            repeller_annotations=tuple(
                self.repeller_annotations if repeller_annotations is None else repeller_annotations
            ),
        )


@dataclass(frozen=True)
class Violation:
    """One broken invariant; ``elements`` names the offending ids."""

    code: str
    message: str
    elements: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


def shift(p: OrbitPoint, period: int, steps: int = 1) -> OrbitPoint:
    return OrbitPoint(p.orbit, (p.point + steps) % period)
