"""Built-in diagrams and a random generator of valid diagrams."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .diagram import (
    Diagram,
    EdgeKind,
    EmbeddingAnnotation,
    IntersectionEdge,
    Orbit,
    OrbitPoint,
    SeparatrixRecord,
)

NB, HP, HC = EdgeKind.NODE_BASIN, EdgeKind.HETEROCLINIC_POINT, EdgeKind.HETEROCLINIC_CURVE


def _fixed(saddle: str, left: str, right: str) -> SeparatrixRecord:
    return SeparatrixRecord(OrbitPoint(saddle, 0), ((OrbitPoint(left, 0),), (OrbitPoint(right, 0),)))


def north_south() -> Diagram:
    """One sink and one source on the 3-sphere."""
    return Diagram(
        name="north-south",
        orbits=(Orbit("omega", 1, 0), Orbit("alpha", 1, 3)),
        edges=(IntersectionEdge("alpha", "omega", NB),),
    )


def pixton(strongly_tight: bool = False) -> Diagram:
    """Two sinks, one index-1 saddle whose separatrices go to both, one source.

    The one-dimensional attractor has genus 0 but is not tightly embedded.
    With ``strongly_tight=True`` the annotation is overridden, which gives a
    hypothetical input with a certificate.
    """
    ann = EmbeddingAnnotation("sigma", strongly_tight, strongly_tight, 0)
    return Diagram(
        name="pixton-strong" if strongly_tight else "pixton",
        orbits=(
            Orbit("omega1", 1, 0),
            Orbit("omega2", 1, 0),
            Orbit("sigma", 1, 1),
            Orbit("alpha", 1, 3),
        ),
        edges=(
            IntersectionEdge("sigma", "omega1", NB),
            IntersectionEdge("sigma", "omega2", NB),
            IntersectionEdge("alpha", "sigma", NB),
            IntersectionEdge("alpha", "omega1", NB),
            IntersectionEdge("alpha", "omega2", NB),
        ),
        separatrices=(_fixed("sigma", "omega1", "omega2"),),
        annotations=(ann,),
    )


def s2xs1_basic(tight: bool = True, strongly_tight: bool = False) -> Diagram:
    """Sink, index-1 and index-2 saddles looping back to one node each, source.

    Both one-dimensional separatrix loops give genus 1; the ambient manifold
    is ``S^2 x S^1``.
    """
    witness = 1
    return Diagram(
        name="s2xs1-basic",
        orbits=(
            Orbit("omega", 1, 0),
            Orbit("sigma1", 1, 1),
            Orbit("sigma2", 1, 2),
            Orbit("alpha", 1, 3),
        ),
        edges=(
            IntersectionEdge("sigma1", "omega", NB),
            IntersectionEdge("sigma2", "omega", NB),
            IntersectionEdge("alpha", "sigma1", NB),
            IntersectionEdge("alpha", "sigma2", NB),
            IntersectionEdge("alpha", "omega", NB),
        ),
        separatrices=(_fixed("sigma1", "omega", "omega"),),
        repeller_separatrices=(_fixed("sigma2", "alpha", "alpha"),),
        annotations=(EmbeddingAnnotation("sigma1", tight, strongly_tight, witness),),
        repeller_annotations=(EmbeddingAnnotation("sigma2", tight, strongly_tight, witness),),
    )


def curve_chain() -> Diagram:
    """Four fixed points related in one chain through a heteroclinic curve."""
    return Diagram(
        name="curve-chain",
        orbits=(
            Orbit("omega", 1, 0),
            Orbit("sigma1", 1, 1),
            Orbit("sigma2", 1, 2),
            Orbit("alpha", 1, 3),
        ),
        edges=(
            IntersectionEdge("sigma1", "omega", NB),
            IntersectionEdge("sigma2", "sigma1", HC),
            IntersectionEdge("alpha", "sigma2", NB),
        ),
        separatrices=(_fixed("sigma1", "omega", "omega"),),
        repeller_separatrices=(_fixed("sigma2", "alpha", "alpha"),),
        annotations=(EmbeddingAnnotation("sigma1", True, False, 1),),
        repeller_annotations=(EmbeddingAnnotation("sigma2", True, False, 1),),
    )


def chain(n: int) -> Diagram:
    """Gradient-like system on the 3-sphere with ``n`` index-1 saddles.

    Sinks ``omega1 .. omega{n+1}`` are joined in a path by the saddles
    ``sigma{k}`` (separatrices to ``omega{k}`` and ``omega{k+1}``); a single
    source lies above everything. Every attractor is a tree, so every genus
    is 0, and all annotations are strongly tight.
    """
    if n < 0:
        raise ValueError("chain length must be non-negative")
    sinks = [f"omega{k}" for k in range(1, n + 2)]
    saddles = [f"sigma{k}" for k in range(1, n + 1)]
    edges = []
    records = []
    for k, s in enumerate(saddles):
        edges += [IntersectionEdge(s, sinks[k], NB), IntersectionEdge(s, sinks[k + 1], NB)]
        records.append(_fixed(s, sinks[k], sinks[k + 1]))
    edges += [IntersectionEdge("alpha", x, NB) for x in saddles + sinks]
    return Diagram(
        name=f"chain-{n}",
        orbits=tuple(
            [Orbit(x, 1, 0) for x in sinks] + [Orbit(x, 1, 1) for x in saddles] + [Orbit("alpha", 1, 3)]
        ),
        edges=tuple(edges),
        separatrices=tuple(records),
        annotations=tuple(EmbeddingAnnotation(s, True, True, 0) for s in saddles),
    )


BUILTIN = {
    "north-south": north_south,
    "pixton": pixton,
    "s2xs1-basic": s2xs1_basic,
    "chain-N": chain,
    "pixton-strong": lambda: pixton(strongly_tight=True),
    "curve-chain": curve_chain,
}


def example_names() -> list[str]:
    return list(BUILTIN)


def get_example(name: str) -> Diagram:
    """Look up a built-in diagram; ``chain-N`` takes the saddle count, e.g. ``chain-3``."""
    m = re.fullmatch(r"chain-(\d+)", name)
    if m:
        return chain(int(m.group(1)))
    if name not in BUILTIN or name == "chain-N":
        choices = ", ".join(n for n in BUILTIN if n != "chain-N")
        raise KeyError(f"unknown example {name!r}; choose from {choices} or chain-N with N >= 0 saddles, e.g. chain-3")
    return BUILTIN[name]()


# --- random generator -------------------------------------------------------


@dataclass
class _Half:
    """One side of a diagram drawn as an attractor: nodes of index 0, saddles of index 1."""

    nodes: list[tuple[str, int]] = field(default_factory=list)
    saddles: list[tuple[str, int, bool]] = field(default_factory=list)
    records: list[SeparatrixRecord] = field(default_factory=list)
    edges: set[tuple[str, str, EdgeKind]] = field(default_factory=set)
    # a sink limit point of each saddle's point 0 branch 0, for heteroclinic branches
    anchor: dict[str, OrbitPoint] = field(default_factory=dict)
    periods: dict[str, int] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        points = sum(p for _, p in self.nodes)
        return 1 + sum(p for _, p, _ in self.saddles) - points

    def add_saddle(self, sid: str, period: int, pattern: list[list[OrbitPoint]], swap: bool = False) -> None:
        """Add a saddle whose point ``k`` has the pattern shifted by ``k``."""
        for k in range(period):
            branches = tuple(
                tuple(OrbitPoint(t.orbit, (t.point + k) % self.periods[t.orbit]) for t in b) for b in pattern
            )
            self.records.append(SeparatrixRecord(OrbitPoint(sid, k), branches))
        for b in pattern:
            for t in b:
                kind = HP if t.orbit in self.anchor else NB
                self.edges.add((sid, t.orbit, kind))
        self.saddles.append((sid, period, swap))
        self.periods[sid] = period
        self.anchor[sid] = next(t for t in pattern[0] if t.orbit not in self.anchor)


def _branch_to(rng: random.Random, half: _Half, node: str, period: int, heteroclinic: float) -> list[OrbitPoint]:
    """A branch ending in the component of ``node``, sometimes through a saddle."""
    saddles = [s for s, p, _ in half.saddles if period % p == 0]
    if saddles and rng.random() < heteroclinic:
        s = rng.choice(saddles)
        t = rng.randrange(half.periods[s])
        a = half.anchor[s]
        return [OrbitPoint(s, t), OrbitPoint(a.orbit, (a.point + t) % half.periods[a.orbit])]
    return [OrbitPoint(node, rng.randrange(half.periods[node]))]


def _grow_half(
    rng: random.Random,
    node_prefix: str,
    saddle_prefix: str,
    n_nodes: int,
    n_extra: int,
    max_period: int,
    heteroclinic: float,
) -> _Half:
    half = _Half()
    for i in range(n_nodes):
        period = 1 if i == 0 else rng.randint(1, max_period)
        nid = f"{node_prefix}{i}"
        half.nodes.append((nid, period))
        half.periods[nid] = period
    counter = 0

    # a spanning forest: every later node hangs from the connected part
    attached = [half.nodes[0]]
    for nid, period in half.nodes[1:]:
        parent, _ = rng.choice([(x, p) for x, p in attached if period % p == 0])
        pattern = [
            _branch_to(rng, half, parent, period, heteroclinic),
            [OrbitPoint(nid, rng.randrange(period))],
        ]
        if rng.random() < 0.5:
            pattern.reverse()
        half.add_saddle(f"{saddle_prefix}{counter}", period, pattern)
        counter += 1
        attached.append((nid, period))

    # extra saddles close loops and raise the genus
    for _ in range(n_extra):
        period = rng.randint(1, max_period)
        nodes = [x for x, p in half.nodes if period % p == 0]
        swap = rng.random() < 0.3
        first = _branch_to(rng, half, rng.choice(nodes), period, heteroclinic)
        second = list(first) if swap else _branch_to(rng, half, rng.choice(nodes), period, heteroclinic)
        half.add_saddle(f"{saddle_prefix}{counter}", period, [first, second], swap)
        counter += 1
    return half


def _pad(half: _Half, saddle_prefix: str, amount: int, max_period: int) -> None:
    """Raise the genus by ``amount`` with loops at the period-1 hub node."""
    hub = half.nodes[0][0]
    counter = len(half.saddles)
    while amount > 0:
        period = min(amount, max_period)
        loop = [OrbitPoint(hub, 0)]
        half.add_saddle(f"{saddle_prefix}{counter}", period, [list(loop), list(loop)])
        counter += 1
        amount -= period


def _half_diagram(half: _Half) -> Diagram:
    return Diagram(
        name="half",
        orbits=tuple(
            [Orbit(n, p, 0) for n, p in half.nodes] + [Orbit(s, p, 1, swap) for s, p, swap in half.saddles]
        ),
        edges=tuple(IntersectionEdge(u, lo, k) for u, lo, k in sorted(half.edges)),
        separatrices=tuple(half.records),
    )


def _annotate(rng: random.Random, rows, p_tight: float, p_strong: float) -> list[EmbeddingAnnotation]:
    out = []
    for row in rows:
        tight = rng.random() < p_tight
        strong = tight and rng.random() < p_strong
        witness = row.genus if tight else row.genus + rng.randint(0, 2)
        out.append(EmbeddingAnnotation(row.orbit_id, tight, strong, witness))
    return out


def random_diagram(
    rng: random.Random | int | None = None,
    *,
    max_nodes: int = 3,
    max_extra: int = 2,
    max_period: int = 3,
    sphere: bool = False,
    curves: float = 0.2,
    heteroclinic: float = 0.3,
    p_tight: float = 0.85,
    p_strong: float = 0.6,
    name: str = "random",
) -> Diagram:
    """Draw a diagram that passes :func:`~dynorder.validation.validate`.

    Each side (sinks with index-1 saddles, sources with index-2 saddles) is
    grown as a connected graph: a spanning forest of saddles plus ``extra``
    loop saddles, with separatrices sometimes routed through earlier saddles
    (heteroclinic points). The side with the smaller genus is padded so both
    genera agree, which makes the point counts satisfy the duality identity.
    With ``sphere=True`` both sides are trees and no heteroclinic curves are
    drawn, so the ambient manifold is the 3-sphere.
    """
    from .filtration import build_filtration
    from .ordering import canonical_numbering, compute_order

    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    n_extra = 0 if sphere else max_extra
    low = _grow_half(rng, "w", "s", rng.randint(1, max_nodes), rng.randint(0, n_extra), max_period, heteroclinic)
    high = _grow_half(rng, "a", "t", rng.randint(1, max_nodes), rng.randint(0, n_extra), max_period, heteroclinic)
    if low.genus < high.genus:
        _pad(low, "s", high.genus - low.genus, max_period)
    elif high.genus < low.genus:
        _pad(high, "t", low.genus - high.genus, max_period)

    upper = _half_diagram(high).inverse()
    lower = _half_diagram(low)
    sinks = lower.ids(0)
    index1 = lower.ids(1)
    sources = upper.ids(3)
    index2 = upper.ids(2)

    cross = set()
    for a in sources:
        for w in rng.sample(sinks, rng.randint(1, len(sinks))):
            cross.add((a, w, NB))
    for t in index2:
        for w in rng.sample(sinks, rng.randint(1, len(sinks))):
            cross.add((t, w, NB))
    for s in index1:
        cross.add((rng.choice(sources), s, NB))
    if not sphere:
        for t in index2:
            for s in index1:
                if rng.random() < curves:
                    cross.add((t, s, HC))

    diagram = Diagram(
        name=name,
        orbits=lower.orbits + upper.orbits,
        edges=lower.edges + upper.edges + tuple(IntersectionEdge(*e) for e in sorted(cross)),
        separatrices=lower.separatrices,
        repeller_separatrices=upper.repeller_separatrices,
    )
    order = compute_order(diagram)
    filtration = build_filtration(diagram, canonical_numbering(diagram, order))
    return diagram.with_annotations(
        _annotate(rng, filtration.one_dimensional(), p_tight, p_strong),
        _annotate(rng, filtration.one_dimensional(repeller=True), p_tight, p_strong),
    )


def random_corpus(count: int, seed: int = 0, max_orbits: int | None = None, **kwargs) -> list[Diagram]:
    """``count`` random diagrams, optionally restricted to at most ``max_orbits`` orbits."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = random_diagram(rng, name=f"random-{seed}-{len(out)}", **kwargs)
        if max_orbits is None or len(d.orbits) <= max_orbits:
            out.append(d)
    return out
