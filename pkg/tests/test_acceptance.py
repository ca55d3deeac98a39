"""Acceptance criteria, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line with its timing; the lines
are printed together at the end of the pytest run. Runtimes include
generating the corpus.
"""

from __future__ import annotations

import sys
import time
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from dynorder import (  # noqa: E402
    IntersectionEdge,
    ManifoldKind,
    Orbit,
    Status,
    behaviour,
    build_certificate,
    build_filtration,
    canonical_numbering,
    check_lyapunov_schedule,
    classify,
    compute_order,
    count_numberings,
    decide,
    genus_monotonicity_report,
    induced_inverse_numbering,
    validate,
)
from dynorder.diagram import EdgeKind  # noqa: E402
from dynorder.examples import BUILTIN, chain, north_south, pixton, random_corpus  # noqa: E402
from dynorder.ordering import behaviour_indices  # noqa: E402

ROWS: list = []  # every filtration row built in this module
LINES: list[str] = []  # printed by the terminal summary hook in conftest


def filtration_of(d, numbering=None):
    if numbering is None:
        numbering = canonical_numbering(d, compute_order(d))
    f = build_filtration(d, numbering)
    ROWS.extend(f.attractors + f.repellers)
    return f


def verdict(number: int, title: str, failures: list[str], elapsed: float, limit: float | None, detail: str):
    slow = limit is not None and elapsed >= limit
    ok = not failures and not slow
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} [{elapsed:.2f}s{budget}] {detail}"
    LINES.append(line)
    print(line)
    assert not failures, "\n".join(failures[:10])
    assert not slow, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_pixton():
    t = time.perf_counter()
    d = pixton()
    fails = []
    f = filtration_of(d)
    row = f.attractors[2]
    if (row.level, row.components, row.saddles, row.sinks, row.genus) != (3, 1, 1, 2, 0):
        fails.append(f"row 3 is {row}")
    v = decide(d, f)
    if v.status is not Status.NOT_EXISTS or v.witnesses != ["sigma"]:
        fails.append(f"verdict {v}")
    verdict(1, "Pixton example: g_3 = 0, NotExists with witness sigma", fails, time.perf_counter() - t, 1.0,
            f"g_3={row.genus} status={v.status.value} witnesses={v.witnesses}")


def test_criterion_02_north_south():
    t = time.perf_counter()
    d = north_south()
    fails = []
    c = classify(d)
    if (c.kind, c.m) != (ManifoldKind.SPHERE3, 0):
        fails.append(f"classified as {c}")
    n = canonical_numbering(d, compute_order(d))
    f = filtration_of(d, n)
    v = decide(d, f)
    if v.status is not Status.EXISTS:
        fails.append(f"verdict {v.status}")
    else:
        cert = build_certificate(d, n, f, v)
        if [lv.morse_index for lv in cert.critical_levels] != [0, 3]:
            fails.append(f"levels {cert.critical_levels}")
        if [(b.genus,) for b in cert.regular_bands] != [(0,)]:
            fails.append(f"bands {cert.regular_bands}")
    verdict(2, "north-south: Sphere3 with m = 0, Exists, 2 levels and one genus-0 band", fails,
            time.perf_counter() - t, 1.0, f"m={c.m} status={v.status.value}")


def _corruptions(d):
    """Roster corruptions, each of which changes the point counts on one side only."""
    sources = [o for o in d.orbits if o.index == 3]
    saddle = next((o for o in d.orbits if o.index == 1), None)
    node = next(o for o in d.orbits if o.index == 0)
    yield "extra sink", replace(
        d,
        orbits=d.orbits + (Orbit("zz-extra", 1, 0),),
        edges=d.edges + (IntersectionEdge(sources[0].id, "zz-extra", EdgeKind.NODE_BASIN),),
    )
    gone = sources[-1].id
    yield "dropped source", replace(
        d,
        orbits=tuple(o for o in d.orbits if o.id != gone),
        edges=tuple(e for e in d.edges if gone not in (e.upper, e.lower)),
    )
    yield "longer period", replace(d, orbits=tuple(replace(o, period=o.period + 1) if o is node else o for o in d.orbits))
    if saddle is not None:
        yield "index flip", replace(d, orbits=tuple(replace(o, index=2) if o is saddle else o for o in d.orbits))


def test_criterion_03_duality():
    t = time.perf_counter()
    corpus = random_corpus(1000, seed=301)
    fails, corrupted = [], 0
    for d in corpus:
        n = d.point_counts()
        if 1 + n[1] - n[0] != 1 + n[2] - n[3]:
            fails.append(f"{d.name}: counts {n}")
        if validate(d):
            fails.append(f"{d.name}: generated diagram is invalid")
        for label, bad in _corruptions(d):
            corrupted += 1
            if "duality" not in {v.code for v in validate(bad)}:
                fails.append(f"{d.name}: {label} not flagged")
    verdict(3, "duality identity on generated diagrams, corrupted rosters flagged", fails,
            time.perf_counter() - t, 10.0, f"{len(corpus)} diagrams, {corrupted} corruptions")


def test_criterion_04_behaviour_oracle():
    t = time.perf_counter()
    corpus = random_corpus(500, seed=401, max_orbits=8)
    fails, pairs = [], 0
    for d in corpus:
        order = compute_order(d)
        up = oracles.closed_up(d)
        for hi in d.ids():
            for lo in d.ids():
                if hi == lo:
                    continue
                pairs += 1
                want = oracles.longest_chain(up, hi, lo)
                got = behaviour(order, hi, lo)
                if got != want:
                    fails.append(f"{d.name}: beh({hi}|{lo}) = {got}, enumeration gives {want}")
        if behaviour_indices(d, order) != oracles.behaviour_indices(d):
            fails.append(f"{d.name}: behaviour indices differ")
    verdict(4, "behaviour DP equals exhaustive chain enumeration (<= 8 orbits)", fails,
            time.perf_counter() - t, 30.0, f"{len(corpus)} diagrams, {pairs} pairs")


def test_criterion_05_count_oracle():
    t = time.perf_counter()
    corpus = random_corpus(200, seed=501, max_orbits=6)
    fails = []
    for d in corpus:
        got = count_numberings(d, compute_order(d))
        want = oracles.count_numberings(d)
        if got != want:
            fails.append(f"{d.name}: {got} != brute force {want}")
    verdict(5, "count_numberings equals permutation filtering (<= 6 orbits)", fails,
            time.perf_counter() - t, 60.0, f"{len(corpus)} diagrams")


def test_criterion_06_order_preservation():
    t = time.perf_counter()
    corpus = random_corpus(1000, seed=601)
    fails = []
    for d in corpus:
        pos = canonical_numbering(d, compute_order(d)).positions()
        for hi, los in oracles.reachable_below(d).items():
            for lo in los:
                if pos[lo] > pos[hi]:
                    fails.append(f"{d.name}: {lo} < {hi} but numbered {pos[lo]} > {pos[hi]}")
    verdict(6, "canonical numbering preserves the order", fails, time.perf_counter() - t, None,
            f"{len(corpus)} diagrams")


def test_criterion_07_sphere_genus():
    t = time.perf_counter()
    corpus = random_corpus(300, seed=701, sphere=True) + random_corpus(300, seed=702)
    fails, checked = [], 0
    for d in corpus:
        if not d.no_heteroclinic_curves or classify(d).m != 0:
            continue
        checked += 1
        f = filtration_of(d)
        for side, rows, k0 in (("attractor", f.attractors, f.sink_levels), ("repeller", f.repellers, f.source_levels)):
            for row in rows[k0:]:
                if row.genus != 0:
                    fails.append(f"{d.name}: {side} row {row.level} has genus {row.genus}")
        for rep in (False, True):
            for m in genus_monotonicity_report(f, repeller=rep):
                if not m.ok:
                    fails.append(f"{d.name}: genus drops at {m.level}")
    if checked < 300:
        fails.append(f"only {checked} sphere diagrams")
    verdict(7, "g_i = 0 and monotone on curve-free diagrams with m = 0", fails, time.perf_counter() - t, None,
            f"{checked} sphere diagrams")


def test_criterion_08_mirror():
    t = time.perf_counter()
    corpus = random_corpus(300, seed=801) + random_corpus(100, seed=802, sphere=True)
    fails = []
    for d in corpus:
        n = canonical_numbering(d, compute_order(d))
        rev = induced_inverse_numbering(n)
        if induced_inverse_numbering(rev) != n:
            fails.append(f"{d.name}: induced numbering is not an involution")
        inv = d.inverse()
        if inv.inverse() != d:
            fails.append(f"{d.name}: inversion is not an involution")
        f = filtration_of(d, n)
        fi = filtration_of(inv, rev)
        if f.attractors[-1].genus != f.repellers[-1].genus:
            fails.append(f"{d.name}: g_k1 = {f.attractors[-1].genus}, mirror {f.repellers[-1].genus}")
        if fi.attractors != f.repellers or fi.repellers != f.attractors:
            fails.append(f"{d.name}: inverse filtration is not the mirror")
        a, b = decide(d, f), decide(inv, fi)
        if a.status is not b.status:
            fails.append(f"{d.name}: decide gives {a.status.value} but {b.status.value} for the inverse")
    verdict(8, "mirror genus, induced numbering involution, decide invariant under inversion", fails,
            time.perf_counter() - t, None, f"{len(corpus)} diagrams")


def test_criterion_09_euler_characteristic():
    t = time.perf_counter()
    for name, build in BUILTIN.items():
        d = build(3) if name == "chain-N" else build()
        filtration_of(d)
    for d in random_corpus(500, seed=901) + random_corpus(200, seed=902, sphere=True):
        filtration_of(d)
        filtration_of(d.inverse(), induced_inverse_numbering(canonical_numbering(d, compute_order(d))))
    fails = [
        f"row {r.level} ({r.orbit_id}): c - g = {r.components - r.genus}, s - r = {r.sinks - r.saddles}"
        for r in ROWS
        if r.components - r.genus != r.sinks - r.saddles or r.euler_characteristic != r.sinks - r.saddles
    ]
    verdict(9, "c_i - g_i = s_i - r_i on every filtration row", fails, time.perf_counter() - t, None,
            f"{len(ROWS)} rows")


def test_criterion_10_certificates():
    t = time.perf_counter()
    corpus = random_corpus(600, seed=1001) + random_corpus(400, seed=1002, sphere=True) + [chain(k) for k in range(1, 6)]
    fails, exists = [], 0
    for d in corpus:
        order = compute_order(d)
        n = canonical_numbering(d, order)
        f = filtration_of(d, n)
        v = decide(d, f)
        if v.status is not Status.EXISTS:
            continue
        exists += 1
        try:
            cert = build_certificate(d, n, f, v)
        except Exception as exc:  # noqa: BLE001
            fails.append(f"{d.name}: build_certificate raised {exc!r}")
            continue
        problems = cert.violations(d) + check_lyapunov_schedule(cert, order, d)
        fails += [f"{d.name}: {p}" for p in problems]
    if exists == 0:
        fails.append("no Exists verdicts in the corpus")
    verdict(10, "every Exists verdict yields a sound certificate", fails, time.perf_counter() - t, None,
            f"{exists} certificates over {len(corpus)} diagrams")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
