"""Report sections and their text, JSON and DOT renderings."""

from __future__ import annotations

import json
from typing import Any

from .classification import classify
from .diagram import Diagram, EdgeKind, Violation
from .energy import Status, build_certificate, check_lyapunov_schedule, decide
from .errors import DynorderError
from .filtration import AttractorData, build_filtration, genus_monotonicity_report
from .ordering import (
    behaviour_indices,
    canonical_numbering,
    compute_order,
    count_numberings,
    induced_inverse_numbering,
)
from .validation import validate

SECTIONS = ("validation", "order", "filtration", "classification", "energy")


def _violations(vs: list[Violation]) -> list[dict[str, Any]]:
    return [{"code": v.code, "message": v.message, "elements": list(v.elements)} for v in vs]


def _row(r: AttractorData) -> dict[str, Any]:
    return {
        "level": r.level,
        "orbit": r.orbit_id,
        "components": r.components,
        "saddles": r.saddles,
        "sinks": r.sinks,
        "genus": r.genus,
    }


class Analysis:
    """Lazily computed sections for one valid diagram."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.violations = validate(diagram)

    @property
    def valid(self) -> bool:
        return not self.violations

    def validation(self) -> dict[str, Any]:
        return {"diagram": self.diagram.name, "valid": self.valid, "violations": _violations(self.violations)}

    def _base(self):
        order = compute_order(self.diagram)
        numbering = canonical_numbering(self.diagram, order)
        return order, numbering

    def order(self) -> dict[str, Any]:
        d = self.diagram
        order, numbering = self._base()
        b = behaviour_indices(d, order)
        pos = numbering.positions()
        return {
            "pairs": [list(p) for p in sorted(order.strict_pairs)],
            "orbits": [
                {
                    "id": oid,
                    "index": d.orbit(oid).index,
                    "period": d.orbit(oid).period,
                    "behaviour": b[oid],
                    "position": pos[oid],
                }
                for oid in numbering
            ],
            "numbering": list(numbering),
            "numbering_count": count_numberings(d, order),
            "inverse_numbering": list(induced_inverse_numbering(numbering)),
        }

    def filtration(self) -> dict[str, Any]:
        _, numbering = self._base()
        f = build_filtration(self.diagram, numbering)
        return {
            "sink_levels": f.sink_levels,
            "attractor_levels": f.attractor_levels,
            "source_levels": f.source_levels,
            "repeller_levels": f.repeller_levels,
            "attractors": [_row(r) for r in f.attractors],
            "repellers": [_row(r) for r in f.repellers],
            "monotonicity": [
                {"level": m.level, "genus": m.genus, "next_genus": m.next_genus, "premise": m.premise_ok, "ok": m.ok}
                for m in genus_monotonicity_report(f)
            ],
        }

    def classification(self) -> dict[str, Any]:
        try:
            c = classify(self.diagram)
        except DynorderError as exc:
            return {"applicable": False, "reason": str(exc)}
        return {
            "applicable": True,
            "manifold": c.kind.value,
            "m": c.m,
            "saddle_points": c.saddle_points,
            "node_points": c.node_points,
            "name": str(c),
        }

    def energy(self) -> dict[str, Any]:
        order, numbering = self._base()
        f = build_filtration(self.diagram, numbering)
        verdict = decide(self.diagram, f)
        out: dict[str, Any] = {
            "status": verdict.status.value,
            "reasons": [
                {"rule": r.rule.value, "detail": r.detail, "side": r.side, "orbit": r.orbit_id}
                for r in verdict.reasons
            ],
            "witnesses": verdict.witnesses,
            "certificate": None,
        }
        if verdict.status is Status.EXISTS:
            cert = build_certificate(self.diagram, numbering, f, verdict)
            out["certificate"] = {
                "critical_levels": [
                    {"value": lv.value, "orbit": lv.orbit_id, "morse_index": lv.morse_index}
                    for lv in cert.critical_levels
                ],
                "regular_bands": [
                    {
                        "between": [b.lower, b.upper],
                        "components": b.components,
                        "genus": b.genus,
                        "side": b.side,
                        "mirror": None if b.mirror is None else list(b.mirror),
                    }
                    for b in cert.regular_bands
                ],
                "splitting_level": cert.splitting_level,
                "splitting_genus": cert.splitting_genus,
                "violations": _violations(
                    cert.violations(self.diagram) + check_lyapunov_schedule(cert, order, self.diagram)
                ),
            }
        return out

    def sections(self, names) -> dict[str, Any]:
        out = {"diagram": self.diagram.name}
        for name in names:
            out[name] = getattr(self, name)()
        return out


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _table(header: list[str], rows: list[list[Any]]) -> list[str]:
    cells = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]


def to_text(payload: dict[str, Any]) -> str:
    lines = [f"diagram: {payload['diagram']}"]
    if "validation" in payload:
        v = payload["validation"]
        lines.append(f"validation: {'ok' if v['valid'] else str(len(v['violations'])) + ' violation(s)'}")
        lines += [f"  [{x['code']}] {x['message']}" for x in v["violations"]]
    if "order" in payload:
        o = payload["order"]
        lines.append("dynamical numbering:")
        lines += [
            "  " + s
            for s in _table(
                ["pos", "orbit", "index", "period", "behaviour"],
                [[x["position"], x["id"], x["index"], x["period"], x["behaviour"]] for x in o["orbits"]],
            )
        ]
        lines.append(f"numberings: {o['numbering_count']}")
        lines.append("inverse numbering: " + " ".join(o["inverse_numbering"]))
        lines.append("order: " + (", ".join(f"{lo} < {up}" for lo, up in o["pairs"]) or "(empty)"))
    if "filtration" in payload:
        f = payload["filtration"]
        for side in ("attractors", "repellers"):
            lines.append(f"{side}:")
            lines += [
                "  " + s
                for s in _table(
                    ["i", "orbit", "c", "r", "s", "g"],
                    [[r["level"], r["orbit"], r["components"], r["saddles"], r["sinks"], r["genus"]] for r in f[side]],
                )
            ]
        for m in f["monotonicity"]:
            lines.append(
                f"  genus {m['level']} -> {m['level'] + 1}: {m['genus']} -> {m['next_genus']} "
                f"{'ok' if m['ok'] else 'VIOLATED'}"
            )
    if "classification" in payload:
        c = payload["classification"]
        if c["applicable"]:
            lines.append(f"manifold: {c['manifold']} (m={c['m']}, {c['name']})")
        else:
            lines.append(f"manifold: not classified ({c['reason']})")
    if "energy" in payload:
        e = payload["energy"]
        lines.append(f"verdict: {e['status']}")
        for r in e["reasons"]:
            who = f" [{r['side']} {r['orbit']}]" if r["orbit"] else ""
            lines.append(f"  {r['rule']}: {r['detail']}{who}")
        cert = e["certificate"]
        if cert is not None:
            lines.append("critical levels: " + ", ".join(
                f"{lv['value']}:{lv['orbit']}(q={lv['morse_index']})" for lv in cert["critical_levels"]
            ))
            for b in cert["regular_bands"]:
                lines.append(
                    f"  band {b['between'][0]}-{b['between'][1]}: {b['components']} component(s), genus {b['genus']} ({b['side']})"
                )
            lines.append(f"splitting genus: {cert['splitting_genus']}")
            if cert["violations"]:
                lines += [f"  [{x['code']}] {x['message']}" for x in cert["violations"]]
    return "\n".join(lines) + "\n"


_EDGE_STYLE = {
    EdgeKind.NODE_BASIN: 'style=solid, color="black"',
    EdgeKind.HETEROCLINIC_POINT: 'style=dashed, color="blue"',
    EdgeKind.HETEROCLINIC_CURVE: 'style=bold, color="red"',
}
_SHAPE = {0: "circle", 1: "diamond", 2: "diamond", 3: "doublecircle"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(diagram: Diagram) -> str:
    """Phase diagram: orbits labelled ``id / q / b / position``, edges from upper to lower."""
    lines = [f"digraph {_q(diagram.name)} {{", "  rankdir=TB;", "  node [fontname=\"Helvetica\"];"]
    try:
        order = compute_order(diagram)
        b = behaviour_indices(diagram, order)
        pos = canonical_numbering(diagram, order).positions()
    except DynorderError:
        b, pos = {}, {}
    for o in diagram.orbits:
        label = f"{o.id}\\nq={o.index} b={b.get(o.id, '?')} #{pos.get(o.id, '?')}"
        if o.period > 1:
            label += f"\\nperiod {o.period}"
        lines.append(f"  {_q(o.id)} [label=\"{label}\", shape={_SHAPE.get(o.index, 'box')}];")
    for e in diagram.edges:
        lines.append(f"  {_q(e.upper)} -> {_q(e.lower)} [{_EDGE_STYLE[e.kind]}, tooltip={_q(e.kind.value)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
