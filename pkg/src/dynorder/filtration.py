"""Attractor filtration, its repeller mirror, and genus bookkeeping.

For a dynamical numbering ``O_1 .. O_k`` the attractor at level ``i`` is the
union of the unstable manifolds of ``O_1 .. O_i``. Up to the last index-1
orbit it is a graph whose vertices are sink and saddle points and whose edges
join a saddle point to the limit points of its separatrices. Its genus is
``components + saddle points - sink points``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, EmbeddingAnnotation, OrbitPoint, Violation
from .errors import InconsistentDiagram, MissingSeparatrixData
from .ordering import Numbering, induced_inverse_numbering


class UnionFind:
    """Disjoint sets over hashable items with a running component count."""

    def __init__(self):
        self._parent: dict = {}
        self._rank: dict = {}
        self.components = 0

    def __contains__(self, item) -> bool:
        return item in self._parent

    def add(self, item) -> None:
        if item not in self._parent:
            self._parent[item] = item
            self._rank[item] = 0
            self.components += 1

    def find(self, item):
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        self.components -= 1
        return True


@dataclass(frozen=True)
class AttractorData:
    level: int
    orbit_id: str  # orbit added at this level
    orbit_ids: frozenset[str]
    components: int
    saddles: int
    sinks: int
    genus: int

    @property
    def euler_characteristic(self) -> int:
        return self.sinks - self.saddles


@dataclass(frozen=True)
class Filtration:
    """Attractor rows for levels ``1 .. attractor_levels`` and the repeller mirror.

    ``sink_levels`` is the number of sink orbits and ``attractor_levels`` the
    number of sink plus index-1 orbits. The repeller rows are the attractor
    rows of the inverse diagram under the induced numbering.
    """

    attractors: tuple[AttractorData, ...]
    repellers: tuple[AttractorData, ...]
    sink_levels: int
    attractor_levels: int
    source_levels: int
    repeller_levels: int
    total_levels: int

    @property
    def splitting_genus(self) -> int:
        return self.attractors[-1].genus

    def one_dimensional(self, repeller: bool = False) -> tuple[AttractorData, ...]:
        rows = self.repellers if repeller else self.attractors
        skip = self.source_levels if repeller else self.sink_levels
        return rows[skip:]


def attractor_rows(diagram: Diagram, numbering: Numbering) -> tuple[AttractorData, ...]:
    """Rows ``1 .. (sinks + index-1 orbits)`` of the attractor filtration of ``diagram``.

    Raises:
        MissingSeparatrixData: an index-1 point in range has no record.
        InconsistentDiagram: the numbering does not start with the sinks and
            the index-1 saddles, or a separatrix target lies outside the
            preceding attractor.
    """
    records: dict[OrbitPoint, object] = {}
    for rec in diagram.separatrices:
        records.setdefault(rec.saddle, rec)

    n_sinks = len(diagram.ids(0))
    n_levels = n_sinks + len(diagram.ids(1))
    seq = list(numbering)
    for i, oid in enumerate(seq[:n_levels]):
        want = 0 if i < n_sinks else 1
        if diagram.orbit(oid).index != want:
            raise InconsistentDiagram(
                f"position {i + 1} holds {oid!r} of index {diagram.orbit(oid).index}, expected {want}"
            )

    uf = UnionFind()
    saddles = sinks = 0
    members: set[str] = set()
    rows = []
    for level, oid in enumerate(seq[:n_levels], start=1):
        orbit = diagram.orbit(oid)
        members.add(oid)
        points = diagram.points(oid)
        if orbit.index == 0:
            for p in points:
                uf.add(p)
            sinks += orbit.period
        else:
            for p in points:
                rec = records.get(p)
                if rec is None:
                    raise MissingSeparatrixData(oid, p.point)
                uf.add(p)
                for t in rec.targets():
                    if t not in uf:
                        raise InconsistentDiagram(
                            f"separatrix of {p} ends at {t}, which is not in the attractor below it"
                        )
                    uf.union(p, t)
            saddles += orbit.period
        rows.append(
            AttractorData(
                level=level,
                orbit_id=oid,
                orbit_ids=frozenset(members),
                components=uf.components,
                saddles=saddles,
                sinks=sinks,
                genus=uf.components + saddles - sinks,
            )
        )
    return tuple(rows)


def build_filtration(diagram: Diagram, numbering: Numbering) -> Filtration:
    inverse = diagram.inverse()
    attractors = attractor_rows(diagram, numbering)
    repellers = attractor_rows(inverse, induced_inverse_numbering(numbering))
    return Filtration(
        attractors=attractors,
        repellers=repellers,
        sink_levels=len(diagram.ids(0)),
        attractor_levels=len(attractors),
        source_levels=len(diagram.ids(3)),
        repeller_levels=len(repellers),
        total_levels=len(diagram.orbits),
    )


@dataclass(frozen=True)
class MonotonicityRow:
    level: int
    genus: int
    next_genus: int
    premise_ok: bool  # components lost <= saddle points gained

    @property
    def ok(self) -> bool:
        return self.premise_ok and self.next_genus >= self.genus


def genus_monotonicity_report(filtration: Filtration, repeller: bool = False) -> list[MonotonicityRow]:
    """Compare consecutive one-dimensional levels ``i -> i + 1``.

    Starts at the last sink level. A failed premise means the separatrix data
    merges more components than the added saddle points can account for.
    """
    rows = filtration.repellers if repeller else filtration.attractors
    start = filtration.source_levels if repeller else filtration.sink_levels
    out = []
    for i in range(max(start, 1), len(rows)):
        a, b = rows[i - 1], rows[i]
        premise = (a.components - b.components) <= (b.saddles - a.saddles)
        out.append(MonotonicityRow(a.level, a.genus, b.genus, premise))
    return out


def _check_annotation(row: AttractorData, ann: EmbeddingAnnotation | None, side: str) -> list[Violation]:
    oid = row.orbit_id
    if ann is None:
        return [Violation("annotation-missing", f"{side} created by {oid!r} has no annotation", (oid,))]
    out = []
    if ann.handle_genus_witness < row.genus:
        out.append(
            Violation(
                "annotation-genus-bound",
                f"{side} at level {row.level} ({oid!r}): handle genus witness "
                f"{ann.handle_genus_witness} is below the attractor genus {row.genus}",
                (oid,),
            )
        )
    if ann.tight and ann.handle_genus_witness != row.genus:
        out.append(
            Violation(
                "annotation-tight-genus",
                f"{side} at level {row.level} ({oid!r}) is marked tight but its witness "
                f"genus {ann.handle_genus_witness} differs from {row.genus}",
                (oid,),
            )
        )
    if ann.strongly_tight and not ann.tight:
        out.append(
            Violation(
                "annotation-strong-not-tight",
                f"{side} created by {oid!r} is strongly tight but not tight",
                (oid,),
            )
        )
    return out


def annotation_consistency(diagram: Diagram, filtration: Filtration) -> list[Violation]:
    """Check every one-dimensional attractor and repeller annotation against its genus."""
    out = []
    for row in filtration.one_dimensional():
        out += _check_annotation(row, diagram.annotation_for(row.orbit_id), "attractor")
    for row in filtration.one_dimensional(repeller=True):
        out += _check_annotation(row, diagram.annotation_for(row.orbit_id, repeller=True), "repeller")
    return out
