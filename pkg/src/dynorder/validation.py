"""Consistency checks for a :class:`~dynorder.diagram.Diagram`.

:func:`validate` never raises on bad data; every broken invariant is returned
as a :class:`~dynorder.diagram.Violation`. Checks that need a well-formed
relation (acyclicity, separatrix coherence, filtration identities) only run
once the structural checks they depend on have passed.
"""

from __future__ import annotations

from collections import Counter

from .diagram import Diagram, EdgeKind, OrbitPoint, SeparatrixRecord, Violation, expected_kind, shift
from .errors import CyclicRelation, DynorderError
from .filtration import UnionFind, annotation_consistency, build_filtration
from .ordering import Numbering, OrderRelation, canonical_numbering, compute_order

_SIDES = {False: "attractor", True: "repeller"}


def validate(diagram: Diagram, numbering: Numbering | None = None) -> list[Violation]:
    """Every broken invariant of ``diagram``; empty when it is valid.

    Annotation witnesses are checked against the filtration of ``numbering``
    (default: the canonical numbering). Pass the induced numbering when
    validating the inverse of a diagram annotated under its own numbering.
    """
    out: list[Violation] = []
    out += _orbit_violations(diagram)
    out += _edge_violations(diagram)
    out += _count_violations(diagram)
    structural = not out

    order = None
    if not any(v.code in ("edge-unknown-orbit", "orbit-duplicate") for v in out):
        try:
            order = compute_order(diagram)
        except CyclicRelation as exc:
            out.append(
                Violation(
                    "order-cycle",
                    "intersection relation is cyclic: " + " -> ".join(exc.cycle),
                    tuple(dict.fromkeys(exc.cycle)),
                )
            )
            structural = False

    if not any(v.code == "orbit-duplicate" for v in out):
        inverse = diagram.inverse()
        inverse_order = None
        if order is not None:
            inverse_order = compute_order(inverse)
        for repeller, d, o in ((False, diagram, order), (True, inverse, inverse_order)):
            side = _separatrix_violations(d, o, _SIDES[repeller])
            side += _annotation_violations(d, _SIDES[repeller])
            structural = structural and not side
            out += side

    if structural and order is not None:
        out += _filtration_violations(diagram, order, out, numbering)
    return out


def _orbit_violations(d: Diagram) -> list[Violation]:
    out = []
    seen = Counter(o.id for o in d.orbits)
    for oid, n in sorted(seen.items()):
        if n > 1:
            out.append(Violation("orbit-duplicate", f"orbit id {oid!r} is used {n} times", (oid,)))
    for o in d.orbits:
        if not o.id:
            out.append(Violation("orbit-id", "orbit with an empty id", ()))
        if not isinstance(o.period, int) or o.period < 1:
            out.append(Violation("orbit-period", f"orbit {o.id!r} has period {o.period!r}", (o.id,)))
        if o.index not in (0, 1, 2, 3):
            out.append(Violation("orbit-index", f"orbit {o.id!r} has Morse index {o.index!r}", (o.id,)))
    if not d.ids(0):
        out.append(Violation("orbit-no-sink", "a diffeomorphism of a closed manifold has a sink", ()))
    if not d.ids(3):
        out.append(Violation("orbit-no-source", "a diffeomorphism of a closed manifold has a source", ()))
    return out


def _edge_violations(d: Diagram) -> list[Violation]:
    out = []
    known = d.orbit_map
    has_curve = False
    for e in d.edges:
        label = f"edge {e.upper!r} -> {e.lower!r}"
        missing = [x for x in (e.upper, e.lower) if x not in known]
        if missing:
            out.append(Violation("edge-unknown-orbit", f"{label} names unknown orbits {missing}", tuple(missing)))
            continue
        if e.kind is EdgeKind.HETEROCLINIC_CURVE:
            has_curve = True
        if e.upper == e.lower:
            out.append(Violation("edge-self", f"{label} joins an orbit to itself", (e.upper,)))
            continue
        qu, ql = known[e.upper].index, known[e.lower].index
        want = expected_kind(qu, ql)
        if want is None:
            out.append(
                Violation(
                    "edge-index",
                    f"{label}: unstable manifold of index {qu} cannot meet the stable "
                    f"manifold of a distinct index-{ql} orbit transversally",
                    (e.upper, e.lower),
                )
            )
        elif want is not e.kind:
            out.append(
                Violation(
                    "edge-kind",
                    f"{label} between indices {qu} and {ql} must be {want.value}, not {e.kind.value}",
                    (e.upper, e.lower),
                )
            )
    if d.no_heteroclinic_curves == has_curve:
        out.append(
            Violation(
                "heteroclinic-flag",
                f"no_heteroclinic_curves is {d.no_heteroclinic_curves} but the edge list "
                f"{'has' if has_curve else 'has no'} heteroclinic curves",
                (),
            )
        )
    return out


def _count_violations(d: Diagram) -> list[Violation]:
    if any(o.index not in (0, 1, 2, 3) or not isinstance(o.period, int) or o.period < 1 for o in d.orbits):
        return []
    n = d.point_counts()
    left = 1 + n[1] - n[0]
    right = 1 + n[2] - n[3]
    if left != right:
        return [
            Violation(
                "duality",
                f"point counts {n[0]}, {n[1]}, {n[2]}, {n[3]} (indices 0..3) break "
                f"1 + |index 1| - |index 0| = 1 + |index 2| - |index 3|: {left} != {right}",
                (),
            )
        ]
    return []


def _separatrix_violations(d: Diagram, order: OrderRelation | None, side: str) -> list[Violation]:
    """Checks on the separatrix records of the index-1 orbits of ``d``."""
    out = []
    known = d.orbit_map
    raw = {(e.upper, e.lower) for e in d.edges}
    by_point: dict[OrbitPoint, SeparatrixRecord] = {}
    well_formed = True

    def bad(code: str, msg: str, *elements: str) -> None:
        nonlocal well_formed
        well_formed = False
        out.append(Violation(f"separatrix-{code}", f"{side} side: {msg}", elements))

    for rec in d.separatrices:
        s = rec.saddle
        orbit = known.get(s.orbit)
        if orbit is None:
            bad("unknown-orbit", f"record for unknown saddle {s.orbit!r}", s.orbit)
            continue
        if orbit.index != 1:
            bad("saddle-index", f"record for {s.orbit!r}, which is not a saddle of this side", s.orbit)
            continue
        if not 0 <= s.point < orbit.period:
            bad("point-range", f"point {s} is outside period {orbit.period}", s.orbit)
            continue
        if s in by_point:
            bad("duplicate", f"two records for {s}", s.orbit)
            continue
        by_point[s] = rec
        if len(rec.branches) != 2:
            bad("branch-count", f"{s} has {len(rec.branches)} branches, expected 2", s.orbit)
            continue
        for b, branch in enumerate(rec.branches):
            if not branch:
                bad("empty-branch", f"branch {b} of {s} has no limit points", s.orbit)
            for t in branch:
                target = known.get(t.orbit)
                if target is None:
                    bad("unknown-target", f"{s} branch {b} ends at unknown orbit {t.orbit!r}", s.orbit, t.orbit)
                    continue
                if not 0 <= t.point < target.period:
                    bad("point-range", f"target {t} is outside period {target.period}", t.orbit)
                if target.index not in (0, 1) or t.orbit == s.orbit:
                    bad(
                        "target-index",
                        f"{s} branch {b} ends at {t}, which is neither a sink nor another index-1 saddle",
                        s.orbit,
                        t.orbit,
                    )
                elif (s.orbit, t.orbit) not in raw:
                    bad(
                        "target-edge",
                        f"{s} branch {b} ends at {t} but no edge {s.orbit!r} -> {t.orbit!r} is listed",
                        s.orbit,
                        t.orbit,
                    )

    for orbit in d.orbits:
        if orbit.index != 1 or not isinstance(orbit.period, int) or orbit.period < 1:
            continue
        missing = [j for j in range(orbit.period) if OrbitPoint(orbit.id, j) not in by_point]
        if missing:
            bad("missing", f"saddle {orbit.id!r} lacks records for points {missing}", orbit.id)

    if not well_formed:
        return out

    for orbit in d.orbits:
        if orbit.index != 1:
            continue
        p = orbit.period
        for j in range(p):
            rec = by_point[OrbitPoint(orbit.id, j)]
            moved = [frozenset(shift(t, known[t.orbit].period) for t in b) for b in rec.branches]
            if j == p - 1 and orbit.separatrix_swap:
                moved.reverse()
            nxt = by_point[OrbitPoint(orbit.id, (j + 1) % p)]
            actual = [frozenset(b) for b in nxt.branches]
            if moved != actual:
                out.append(
                    Violation(
                        "separatrix-equivariance",
                        f"{side} side: the map sends the separatrices of {orbit.id}[{j}] to "
                        f"{_fmt(moved)} but {nxt.saddle} records {_fmt(actual)}",
                        (orbit.id,),
                    )
                )
                break

    if order is not None:
        out += _coherence_violations(d, order, by_point, side)
    return out


def _fmt(branches) -> str:
    return "(" + " | ".join(", ".join(str(t) for t in sorted(b)) for b in branches) + ")"


def _coherence_violations(
    d: Diagram, order: OrderRelation, by_point: dict[OrbitPoint, SeparatrixRecord], side: str
) -> list[Violation]:
    """Each separatrix closure is connected, so its limit points share a component.

    The component structure is taken in the attractor formed by the orbits
    strictly below the saddle.
    """
    out = []
    for orbit in d.orbits:
        if orbit.index != 1:
            continue
        uf = UnionFind()
        below = order.below(orbit.id)
        for oid in below:
            for p in d.points(oid):
                uf.add(p)
        for oid in below:
            if d.orbit(oid).index == 1:
                for p in d.points(oid):
                    for t in by_point[p].targets():
                        uf.union(p, t)
        for p in d.points(orbit.id):
            for b, branch in enumerate(by_point[p].branches):
                roots = {uf.find(t) for t in branch if t in uf}
                if len(roots) > 1:
                    out.append(
                        Violation(
                            "separatrix-coherence",
                            f"{side} side: branch {b} of {p} accumulates on {len(roots)} "
                            "distinct components of the attractor below it",
                            (orbit.id,),
                        )
                    )
    return out


def _annotation_violations(d: Diagram, side: str) -> list[Violation]:
    out = []
    known = d.orbit_map
    count = Counter(a.saddle_orbit for a in d.annotations)
    for a in d.annotations:
        orbit = known.get(a.saddle_orbit)
        if orbit is None:
            out.append(Violation("annotation-unknown-orbit", f"{side} annotation for unknown orbit {a.saddle_orbit!r}", (a.saddle_orbit,)))
        elif orbit.index != 1:
            out.append(
                Violation(
                    "annotation-saddle-index",
                    f"{side} annotation for {a.saddle_orbit!r}, which does not create a {side}",
                    (a.saddle_orbit,),
                )
            )
        if a.handle_genus_witness < 0:
            out.append(Violation("annotation-witness", f"{side} annotation for {a.saddle_orbit!r} has negative genus", (a.saddle_orbit,)))
        if a.strongly_tight and not a.tight:
            out.append(
                Violation(
                    "annotation-strong-not-tight",
                    f"{side} created by {a.saddle_orbit!r} is strongly tight but not tight",
                    (a.saddle_orbit,),
                )
            )
    for oid, n in sorted(count.items()):
        if n > 1:
            out.append(Violation("annotation-duplicate", f"{n} {side} annotations for {oid!r}", (oid,)))
    for oid in d.ids(1):
        if oid not in count:
            out.append(Violation("annotation-missing", f"{side} created by {oid!r} has no annotation", (oid,)))
    return out


def _filtration_violations(
    d: Diagram, order: OrderRelation, found: list[Violation], numbering: Numbering | None
) -> list[Violation]:
    out = []
    if numbering is None:
        numbering = canonical_numbering(d, order)
    elif sorted(numbering) != sorted(d.ids()):
        return [Violation("numbering", "the numbering does not list exactly the diagram's orbits", ())]
    try:
        filtration = build_filtration(d, numbering)
    except DynorderError as exc:
        return [Violation("filtration", f"cannot build the filtration: {exc}", ())]
    top, top_r = filtration.attractors[-1], filtration.repellers[-1]
    if top.components != 1:
        out.append(
            Violation(
                "attractor-disconnected",
                f"the largest one-dimensional attractor has {top.components} components, expected 1",
                (),
            )
        )
    if top_r.components != 1:
        out.append(
            Violation(
                "repeller-disconnected",
                f"the largest one-dimensional repeller has {top_r.components} components, expected 1",
                (),
            )
        )
    if top.genus != top_r.genus:
        out.append(
            Violation(
                "splitting-genus",
                f"attractor genus {top.genus} and repeller genus {top_r.genus} differ",
                (),
            )
        )
    seen = {(v.code, v.elements) for v in found}
    out += [v for v in annotation_consistency(d, filtration) if (v.code, v.elements) not in seen]
    return out

