"""Existence of a dynamically ordered energy function and its level certificate.

The decision uses only the embedding annotations of the one-dimensional
attractors and repellers:

* an attractor or repeller that is not tightly embedded rules the function out;
* if all of them are strongly tightly embedded the function exists;
* on the 3-sphere without heteroclinic curves tightness alone suffices;
* otherwise the answer is unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .classification import ManifoldClass, ManifoldKind, classify
from .diagram import Diagram, Violation
from .errors import IncompleteAnnotations, InconsistentDiagram, NotApplicable
from .filtration import AttractorData, Filtration, annotation_consistency, build_filtration
from .ordering import Numbering, OrderRelation, canonical_numbering, compute_order


class Status(str, enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


class Rule(str, enum.Enum):
    NECESSITY = "necessity"  # a tight embedding is necessary
    STRONG_TIGHTNESS = "strong-tightness"  # strong tightness everywhere is sufficient
    SPHERE_CRITERION = "sphere-criterion"  # on S^3 without curves tightness is sufficient
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Reason:
    rule: Rule
    detail: str
    side: str | None = None
    orbit_id: str | None = None


@dataclass(frozen=True)
class Verdict:
    status: Status
    reasons: tuple[Reason, ...]

    @property
    def witnesses(self) -> list[str]:
        return [r.orbit_id for r in self.reasons if r.orbit_id is not None]


def _embedded(diagram: Diagram, filtration: Filtration):
    """Yield ``(side, row, annotation)`` for every one-dimensional attractor and repeller."""
    for repeller, side in ((False, "attractor"), (True, "repeller")):
        for row in filtration.one_dimensional(repeller):
            ann = diagram.annotation_for(row.orbit_id, repeller)
            if ann is None:
                raise IncompleteAnnotations(row.orbit_id, side)
            yield side, row, ann


def decide(
    diagram: Diagram,
    filtration: Filtration | None = None,
    classification: ManifoldClass | None = None,
) -> Verdict:
    """Decide whether ``diagram`` admits a dynamically ordered energy function.

    Raises:
        IncompleteAnnotations: a one-dimensional attractor or repeller has no
            annotation.
        InconsistentDiagram: the annotations contradict the computed genera,
            or the sphere criterion applies but some genus is non-zero.
    """
    if filtration is None:
        order = compute_order(diagram)
        filtration = build_filtration(diagram, canonical_numbering(diagram, order))
    embedded = list(_embedded(diagram, filtration))
    problems = annotation_consistency(diagram, filtration)
    if problems:
        raise InconsistentDiagram("; ".join(str(v) for v in problems))

    loose = [
        Reason(Rule.NECESSITY, f"{side} at level {row.level} is not tightly embedded", side, row.orbit_id)
        for side, row, ann in embedded
        if not ann.tight
    ]
    if loose:
        return Verdict(Status.NOT_EXISTS, tuple(loose))

    if all(ann.strongly_tight for _, _, ann in embedded):
        detail = (
            f"all {len(embedded)} one-dimensional attractors and repellers are strongly tightly embedded"
            if embedded
            else "there are no one-dimensional attractors or repellers"
        )
        return Verdict(Status.EXISTS, (Reason(Rule.STRONG_TIGHTNESS, detail),))

    if diagram.no_heteroclinic_curves:
        manifold = classification if classification is not None else classify(diagram)
        if manifold.kind is ManifoldKind.SPHERE3:
            nonzero = [(side, row) for side, row, _ in embedded if row.genus != 0]
            if nonzero:
                side, row = nonzero[0]
                raise InconsistentDiagram(
                    f"{side} at level {row.level} has genus {row.genus} on the 3-sphere; "
                    "every one-dimensional attractor there has genus 0"
                )
            return Verdict(
                Status.EXISTS,
                (Reason(Rule.SPHERE_CRITERION, "tightly embedded on S^3 without heteroclinic curves"),),
            )

    detail = "tight but not strongly tight"
    if not diagram.no_heteroclinic_curves:
        detail += ", heteroclinic curves present"
    else:
        detail += ", ambient manifold is not S^3"
    return Verdict(
        Status.UNKNOWN,
        tuple(
            Reason(Rule.INCONCLUSIVE, detail, side, row.orbit_id)
            for side, row, ann in embedded
            if not ann.strongly_tight
        ),
    )


@dataclass(frozen=True)
class CriticalLevel:
    value: int
    orbit_id: str
    morse_index: int


@dataclass(frozen=True)
class RegularBand:
    """Regular level between ``lower`` and ``upper``: component count and total genus.

    ``side`` says which filtration the data comes from. ``mirror`` holds the
    other side's description where both exist.
    """

    lower: int
    upper: int
    components: int
    genus: int
    side: str
    mirror: tuple[int, int] | None = None


@dataclass(frozen=True)
class EnergyCertificate:
    critical_levels: tuple[CriticalLevel, ...]
    regular_bands: tuple[RegularBand, ...]
    splitting_level: int
    splitting_genus: int

    def value_of(self) -> dict[str, int]:
        return {lvl.orbit_id: lvl.value for lvl in self.critical_levels}

    def violations(self, diagram: Diagram | None = None) -> list[Violation]:
        out = []
        n = len(self.critical_levels)
        for i, lvl in enumerate(self.critical_levels, start=1):
            if lvl.value != i:
                out.append(Violation("level-value", f"orbit {lvl.orbit_id!r} sits at {lvl.value}, expected {i}", (lvl.orbit_id,)))
            if diagram is not None and lvl.orbit_id in diagram.orbit_map:
                q = diagram.orbit(lvl.orbit_id).index
                if q != lvl.morse_index:
                    out.append(
                        Violation(
                            "level-index",
                            f"orbit {lvl.orbit_id!r} has unstable dimension {q} but Morse index {lvl.morse_index}",
                            (lvl.orbit_id,),
                        )
                    )
        indices = [lvl.morse_index for lvl in self.critical_levels]
        if indices != sorted(indices):
            out.append(Violation("level-index-order", "Morse indices decrease along the levels", ()))
        if [(b.lower, b.upper) for b in self.regular_bands] != [(i, i + 1) for i in range(1, n)]:
            out.append(Violation("band-layout", "regular bands do not separate consecutive levels", ()))
        for b in self.regular_bands:
            if b.lower == self.splitting_level:
                if b.genus != self.splitting_genus:
                    out.append(Violation("band-splitting", f"splitting band has genus {b.genus}, expected {self.splitting_genus}", ()))
                if b.mirror is None or b.mirror != (b.components, b.genus):
                    out.append(
                        Violation(
                            "band-mirror",
                            f"splitting band is {(b.components, b.genus)} from below but {b.mirror} from above",
                            (),
                        )
                    )
        return out


def _band(lower: int, row: AttractorData, side: str, mirror: AttractorData | None = None) -> RegularBand:
    return RegularBand(
        lower=lower,
        upper=lower + 1,
        components=row.components,
        genus=row.genus,
        side=side,
        mirror=None if mirror is None else (mirror.components, mirror.genus),
    )


def build_certificate(
    diagram: Diagram,
    numbering: Numbering,
    filtration: Filtration,
    verdict: Verdict | None = None,
) -> EnergyCertificate:
    """Level schedule of a dynamically ordered energy function.

    Orbit ``i`` of the numbering sits at level ``i``. Bands up to the last
    index-1 level carry the attractor data; bands above it carry the repeller
    data through the reversed numbering.

    Raises:
        NotApplicable: the verdict is not ``Exists``.
    """
    if verdict is None:
        verdict = decide(diagram, filtration)
    if verdict.status is not Status.EXISTS:
        raise NotApplicable(f"no certificate for verdict {verdict.status.value}")

    total = len(numbering)
    split = filtration.attractor_levels
    levels = tuple(
        CriticalLevel(i, oid, diagram.orbit(oid).index) for i, oid in enumerate(numbering, start=1)
    )
    bands = []
    for i in range(1, total):
        if i < split:
            bands.append(_band(i, filtration.attractors[i - 1], "attractor"))
        elif i == split:
            mirror = filtration.repellers[total - i - 1]
            bands.append(_band(i, filtration.attractors[i - 1], "attractor", mirror))
        else:
            bands.append(_band(i, filtration.repellers[total - i - 1], "repeller"))
    return EnergyCertificate(
        critical_levels=levels,
        regular_bands=tuple(bands),
        splitting_level=split,
        splitting_genus=filtration.splitting_genus,
    )


def check_lyapunov_schedule(
    certificate: EnergyCertificate, order: OrderRelation, diagram: Diagram | None = None
) -> list[Violation]:
    """Combinatorial descent conditions on the level values.

    Every related pair must sit strictly increasing, every limit point of an
    unstable separatrix below its saddle, and every limit point of a stable
    separatrix above it.
    """
    out = []
    value = certificate.value_of()
    for oid in order.topological:
        if oid not in value:
            out.append(Violation("schedule-missing", f"orbit {oid!r} has no critical level", (oid,)))
    for lo, up in sorted(order.strict_pairs):
        if lo in value and up in value and value[lo] >= value[up]:
            out.append(
                Violation(
                    "schedule-order",
                    f"{lo!r} precedes {up!r} but sits at level {value[lo]} >= {value[up]}",
                    (lo, up),
                )
            )
    if diagram is not None:
        for records, below in ((diagram.separatrices, True), (diagram.repeller_separatrices, False)):
            for rec in records:
                s = rec.saddle.orbit
                for t in sorted(rec.targets()):
                    if s not in value or t.orbit not in value:
                        continue
                    if (value[t.orbit] < value[s]) != below:
                        where = "below" if below else "above"
                        out.append(
                            Violation(
                                "schedule-separatrix",
                                f"separatrix of {rec.saddle} reaches {t}, which should sit {where} "
                                f"level {value[s]} but sits at {value[t.orbit]}",
                                (s, t.orbit),
                            )
                        )
    return out
