"""Smale order on periodic orbits, behaviour, and dynamical numberings."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterator

from .diagram import Diagram
from .errors import CyclicRelation, UnknownOrbit


@dataclass(frozen=True)
class OrderRelation:
    """Strict partial order ``lower < upper`` on orbit ids.

    ``strict_pairs`` is the transitive closure of the intersection edges.
    ``topological`` lists every orbit so that lower orbits come first.
    """

    strict_pairs: frozenset[tuple[str, str]]
    topological: tuple[str, ...]
    _below: dict[str, frozenset[str]] = field(repr=False, compare=False)
    _chains: dict[str, dict[str, int]] = field(default_factory=dict, repr=False, compare=False)

    def __contains__(self, orbit_id: str) -> bool:
        return orbit_id in self._below

    def precedes(self, lower: str, upper: str) -> bool:
        return (lower, upper) in self.strict_pairs

    def below(self, orbit_id: str) -> frozenset[str]:
        """Orbits strictly below ``orbit_id``."""
        self._check(orbit_id)
        return self._below[orbit_id]

    def _check(self, *orbit_ids: str) -> None:
        for oid in orbit_ids:
            if oid not in self._below:
                raise UnknownOrbit(oid)

    def longest_chains_from(self, lower: str) -> dict[str, int]:
        """Length of the longest chain from ``lower`` to every orbit above it.

        Longest path over the closed relation, by dynamic programming along
        the topological order.
        """
        self._check(lower)
        cached = self._chains.get(lower)
        if cached is not None:
            return cached
        dist = {lower: 0}
        for node in self.topological:
            best = -1
            for pred in self._below[node]:
                d = dist.get(pred)
                if d is not None and d + 1 > best:
                    best = d + 1
            if best > 0:
                dist[node] = best
        del dist[lower]
        self._chains[lower] = dist
        return dist


def compute_order(diagram: Diagram) -> OrderRelation:
    """Transitive closure of the intersection relation.

    Raises:
        CyclicRelation: if the relation has a cycle (including an orbit
            intersecting itself), with one cycle as witness.
        UnknownOrbit: if an edge names an orbit that is not in the diagram.
    """
    known = diagram.orbit_map
    preds: dict[str, set[str]] = {oid: set() for oid in known}
    for e in diagram.edges:
        for oid in (e.upper, e.lower):
            if oid not in known:
                raise UnknownOrbit(oid)
        if e.upper == e.lower:
            raise CyclicRelation([e.lower, e.upper])
        preds[e.upper].add(e.lower)

    sorter = TopologicalSorter({oid: sorted(ps) for oid, ps in preds.items()})
    try:
        topo = tuple(sorter.static_order())
    except CycleError as exc:
        raise CyclicRelation(list(exc.args[1])) from None

    below: dict[str, frozenset[str]] = {}
    for node in topo:
        acc: set[str] = set()
        for p in preds[node]:
            acc.add(p)
            acc |= below[p]
        below[node] = frozenset(acc)
    pairs = frozenset((lo, up) for up, los in below.items() for lo in los)
    return OrderRelation(strict_pairs=pairs, topological=topo, _below=below)


def behaviour(order: OrderRelation, upper: str, lower: str) -> int:
    """Maximal length of a chain of distinct orbits from ``lower`` up to ``upper``.

    Zero when ``lower`` does not precede ``upper``.
    """
    order._check(upper, lower)
    return order.longest_chains_from(lower).get(upper, 0)


def behaviour_index(diagram: Diagram, order: OrderRelation, orbit_id: str) -> int:
    """Largest behaviour of ``orbit_id`` relative to any sink orbit."""
    order._check(orbit_id)
    return max((behaviour(order, orbit_id, s) for s in diagram.ids(0)), default=0)


def behaviour_indices(diagram: Diagram, order: OrderRelation) -> dict[str, int]:
    result = dict.fromkeys(diagram.ids(), 0)
    for sink in diagram.ids(0):
        for oid, d in order.longest_chains_from(sink).items():
            if d > result[oid]:
                result[oid] = d
    return result


@dataclass(frozen=True)
class Numbering:
    """A bijection from orbits onto ``1 .. k`` stored as the ordered id list."""

    order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise ValueError("numbering lists an orbit twice")

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[str]:
        return iter(self.order)

    def position(self, orbit_id: str) -> int:
        try:
            return self.order.index(orbit_id) + 1
        except ValueError:
            raise UnknownOrbit(orbit_id) from None

    def positions(self) -> dict[str, int]:
        return {oid: i for i, oid in enumerate(self.order, start=1)}

    def orbit_at(self, position: int) -> str:
        if not 1 <= position <= len(self.order):
            raise IndexError(position)
        return self.order[position - 1]


def _sort_key(diagram: Diagram, b: dict[str, int]):
    return lambda oid: (diagram.orbit(oid).index, b[oid], oid)


def canonical_numbering(diagram: Diagram, order: OrderRelation) -> Numbering:
    """Dynamical numbering sorted by (Morse index, behaviour index, id)."""
    b = behaviour_indices(diagram, order)
    return Numbering(tuple(sorted(diagram.ids(), key=_sort_key(diagram, b))))


def count_numberings(diagram: Diagram, order: OrderRelation) -> int:
    """Number of dynamical numberings.

    A numbering is dynamical exactly when it is sorted by (index, behaviour
    index); orbits sharing both values may be permuted freely.
    """
    b = behaviour_indices(diagram, order)
    classes = Counter((o.index, b[o.id]) for o in diagram.orbits)
    return math.prod(math.factorial(n) for n in classes.values())


def induced_inverse_numbering(numbering: Numbering) -> Numbering:
    """Numbering of the orbits for the inverse map: position ``i`` takes orbit ``k + 1 - i``."""
    return Numbering(tuple(reversed(numbering.order)))


def dynamical_violations(
    diagram: Diagram, order: OrderRelation, numbering: Numbering
) -> list[tuple[str, str, str]]:
    """Pairs ``(reason, earlier, later)`` breaking the numbering rules.

    ``reason`` is ``"index"`` when a higher Morse index comes first and
    ``"behaviour"`` when, at equal index, a higher behaviour index comes first.
    """
    b = behaviour_indices(diagram, order)
    out = []
    seq = list(numbering)
    if sorted(seq) != sorted(diagram.ids()):
        raise ValueError("numbering does not list exactly the diagram's orbits")
    for i, early in enumerate(seq):
        qi = diagram.orbit(early).index
        for late in seq[i + 1 :]:
            qj = diagram.orbit(late).index
            if qi > qj:
                out.append(("index", early, late))
            elif qi == qj and b[early] > b[late]:
                out.append(("behaviour", early, late))
    return out


def order_violations(order: OrderRelation, numbering: Numbering) -> list[tuple[str, str]]:
    """Related pairs ``(lower, upper)`` that the numbering places upper-first."""
    pos = numbering.positions()
    return sorted((lo, up) for lo, up in order.strict_pairs if pos[lo] > pos[up])
