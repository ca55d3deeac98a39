import pytest
from hypothesis import given, settings, strategies as st

from dynorder import (
    CyclicRelation,
    Diagram,
    EdgeKind,
    IntersectionEdge,
    Orbit,
    UnknownOrbit,
    behaviour,
    behaviour_index,
    canonical_numbering,
    compute_order,
    count_numberings,
    induced_inverse_numbering,
)
from dynorder.diagram import expected_kind
from dynorder.examples import chain, curve_chain, north_south, pixton
from dynorder.ordering import Numbering, behaviour_indices, dynamical_violations, order_violations

import oracles


@st.composite
def dags(draw, max_orbits=7):
    """Orbit sets with random index-compatible edges; not necessarily realizable."""
    n = draw(st.integers(2, max_orbits))
    indices = sorted(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    orbits = tuple(Orbit(f"o{i}", 1, q) for i, q in enumerate(indices))
    edges = []
    for i in range(n):
        for j in range(i):
            kind = expected_kind(indices[i], indices[j])
            if kind is not None and draw(st.booleans()):
                edges.append(IntersectionEdge(f"o{i}", f"o{j}", kind))
    return Diagram("dag", orbits, tuple(edges))


def test_north_south_order():
    assert compute_order(north_south()).strict_pairs == {("omega", "alpha")}


def test_chain_closure():
    pairs = compute_order(curve_chain()).strict_pairs
    assert {("omega", "sigma2"), ("omega", "alpha"), ("sigma1", "alpha")} <= pairs
    assert len(pairs) == 6


def test_cycle_rejected():
    d = Diagram("c", (Orbit("a", 1, 1), Orbit("b", 1, 1)), (
        IntersectionEdge("a", "b", EdgeKind.HETEROCLINIC_POINT),
        IntersectionEdge("b", "a", EdgeKind.HETEROCLINIC_POINT),
    ))
    with pytest.raises(CyclicRelation) as exc:
        compute_order(d)
    assert set(exc.value.cycle) == {"a", "b"}


def test_self_loop_rejected():
    d = Diagram("c", (Orbit("a", 1, 1),), (IntersectionEdge("a", "a", EdgeKind.HETEROCLINIC_POINT),))
    with pytest.raises(CyclicRelation):
        compute_order(d)


def test_unknown_orbit_in_edge():
    d = Diagram("u", (Orbit("a", 1, 0),), (IntersectionEdge("b", "a", EdgeKind.NODE_BASIN),))
    with pytest.raises(UnknownOrbit):
        compute_order(d)


def test_behaviour_examples():
    d = curve_chain()
    order = compute_order(d)
    assert behaviour(order, "sigma2", "omega") == 2
    assert behaviour_index(d, order, "alpha") == 3
    assert behaviour(order, "omega", "alpha") == 0
    with pytest.raises(UnknownOrbit):
        behaviour(order, "nope", "omega")


def test_pixton_numbering():
    d = pixton()
    order = compute_order(d)
    assert list(canonical_numbering(d, order)) == ["omega1", "omega2", "sigma", "alpha"]
    assert [behaviour_index(d, order, x) for x in ["omega1", "omega2", "sigma", "alpha"]] == [0, 0, 1, 2]
    assert count_numberings(d, order) == 2
    assert list(induced_inverse_numbering(canonical_numbering(d, order))) == ["alpha", "sigma", "omega2", "omega1"]


@pytest.mark.parametrize("d,expected", [(north_south(), 1), (curve_chain(), 1), (pixton(), 2)])
def test_count_matches_brute_force(d, expected):
    assert count_numberings(d, compute_order(d)) == expected == oracles.count_numberings(d)


def test_chain_numbering():
    d = curve_chain()
    assert list(canonical_numbering(d, compute_order(d))) == ["omega", "sigma1", "sigma2", "alpha"]


def test_numbering_accessors():
    n = Numbering(("a", "b", "c"))
    assert n.position("b") == 2 and n.orbit_at(3) == "c" and len(n) == 3
    with pytest.raises(UnknownOrbit):
        n.position("z")
    with pytest.raises(IndexError):
        n.orbit_at(0)
    with pytest.raises(ValueError):
        Numbering(("a", "a"))


def test_chain_n_numbering_count():
    # n+1 sinks commute, n saddles commute
    d = chain(3)
    assert count_numberings(d, compute_order(d)) == 24 * 6


@settings(max_examples=150, deadline=None)
@given(dags())
def test_closure_matches_dfs(d):
    below = oracles.reachable_below(d)
    assert compute_order(d).strict_pairs == {(lo, up) for up, los in below.items() for lo in los}


@settings(max_examples=150, deadline=None)
@given(dags())
def test_behaviour_matches_enumeration(d):
    order = compute_order(d)
    got = behaviour_indices(d, order)
    assert got == oracles.behaviour_indices(d, closed=True)
    # closing the relation does not change the longest chain
    assert got == oracles.behaviour_indices(d, closed=False)
    up = oracles.raw_up(d)
    for a in d.ids():
        for b in d.ids():
            if a != b:
                assert behaviour(order, a, b) == oracles.longest_chain(up, a, b)


@settings(max_examples=100, deadline=None)
@given(dags(max_orbits=6))
def test_count_matches_permutations(d):
    assert count_numberings(d, compute_order(d)) == oracles.count_numberings(d)


@settings(max_examples=150, deadline=None)
@given(dags())
def test_canonical_numbering_is_dynamical_and_order_preserving(d):
    order = compute_order(d)
    n = canonical_numbering(d, order)
    assert dynamical_violations(d, order, n) == []
    assert order_violations(order, n) == []
    assert induced_inverse_numbering(induced_inverse_numbering(n)) == n


@settings(max_examples=150, deadline=None)
@given(dags())
def test_reversal_preserves_inverse_order(d):
    inv = d.inverse()
    n = canonical_numbering(d, compute_order(d))
    rev = induced_inverse_numbering(n)
    assert order_violations(compute_order(inv), rev) == []
    # index condition survives reversal
    assert not [v for v in dynamical_violations(inv, compute_order(inv), rev) if v[0] == "index"]


def test_reversal_can_break_behaviour_condition():
    # three index-1 saddles a < b and c, one index-2 saddle above them, one source
    NB, HP, HC = EdgeKind.NODE_BASIN, EdgeKind.HETEROCLINIC_POINT, EdgeKind.HETEROCLINIC_CURVE
    d = Diagram(
        "reversal",
        (Orbit("w", 1, 0), Orbit("sa", 1, 1), Orbit("sb", 1, 1), Orbit("sc", 1, 1), Orbit("t", 1, 2), Orbit("a", 1, 3)),
        (
            IntersectionEdge("sa", "w", NB), IntersectionEdge("sb", "sa", HP), IntersectionEdge("sc", "w", NB),
            IntersectionEdge("t", "sb", HC), IntersectionEdge("t", "sc", HC), IntersectionEdge("a", "t", NB),
        ),
    )
    order = compute_order(d)
    n = Numbering(("w", "sc", "sa", "sb", "t", "a"))
    assert dynamical_violations(d, order, n) == []
    inv = d.inverse()
    rev = induced_inverse_numbering(n)
    b_inv = behaviour_indices(inv, compute_order(inv))
    assert [b_inv[x] for x in ("sb", "sa", "sc")] == [2, 3, 2]
    assert ("behaviour", "sa", "sc") in dynamical_violations(inv, compute_order(inv), rev)
    assert order_violations(compute_order(inv), rev) == []
