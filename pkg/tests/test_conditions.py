from __future__ import annotations

import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import INF, degree_three_example, gamma, star, totally_ramified_comb
from relsmooth.conditions import (
    RelativeCondition,
    TangencyData,
    check_relative,
    is_K_Gamma,
    is_M_Gamma,
    is_N_Gamma,
    is_reduced,
    reduce_contracted,
)
from relsmooth.errors import GammaMismatchError, InputError, InvalidGraphError
from relsmooth.graph import DualMapGraph, Edge, MarkedPoint, Vertex, comb, single_vertex, validate
from relsmooth.sample import random_graph
from relsmooth.target import weighted_projective


def test_totally_ramified_comb_passes():
    report = check_relative(totally_ramified_comb(3), gamma("(1,1,1)@inf"))
    assert report.statuses() == {"inf": (True, True, True)}
    assert report.at("inf").witnesses == ()


def test_degree_three_example_fails_only_balance():
    report = check_relative(degree_three_example(), gamma("(1,1,1)@inf"))
    p = report.at("inf")
    assert (p.condition1, p.condition2, p.condition3) == (True, True, False)
    found = {(w.kind, w.ids, w.lhs, w.rhs) for w in p.witnesses}
    assert found == {("subtree", (1,), 2, 1), ("mark", (1,), 1, 2)}


def test_smooth_source_with_matching_ramification():
    g = single_vertex(5, (2, 2, 1))
    assert check_relative(g, gamma("(2,2,1)@inf")).ok


def test_wrong_target_is_a_condition_one_witness():
    t = INF.with_relative(("inf", "0"))
    g = DualMapGraph(
        (Vertex.active(0, 1),),
        (),
        (MarkedPoint(1, 0, 1, "0"), MarkedPoint(2, 0, 1, "inf")),
        t,
        1,
    )
    gam = TangencyData(0, (RelativeCondition("inf", (1,), (1,)), RelativeCondition("0", (1,), (2,))), ())
    p = check_relative(g, gam).at("inf")
    assert not p.condition1
    assert any(w.kind == "wrong-target" and w.ids == (1,) for w in p.witnesses)


def test_unmarked_node_between_active_components_fails_condition_two():
    g = DualMapGraph(
        (Vertex.active(0, 1), Vertex.active(1, 1)),
        (Edge(0, (0, 1), (1, 1), 1, "inf"),),
        (MarkedPoint(1, 0, 0), MarkedPoint(2, 1, 0)),
        INF,
        2,
    )
    assert validate(g).ok
    p = check_relative(g, TangencyData(2, (RelativeCondition("inf", ()),))).at("inf")
    assert not p.condition2
    assert any(w.kind == "unmarked-node" for w in p.witnesses)


def test_fiber_deficit_fails_condition_two():
    g = replace(single_vertex(3, (1, 1)), fiber_flags=(("inf", False),))
    p = check_relative(g, gamma("(1,1)@inf")).at("inf")
    assert not p.condition2
    assert any(w.kind == "fiber-deficit" for w in p.witnesses)


def test_free_mark_over_relative_point_fails_balance():
    g = DualMapGraph(
        (Vertex.active(0, 2),),
        (),
        (MarkedPoint(1, 0, 0, "inf"), MarkedPoint(2, 0, 1, "inf")),
        INF,
        2,
    )
    assert validate(g).ok
    p = check_relative(g, TangencyData(1, (RelativeCondition("inf", (1,)),))).at("inf")
    assert not p.condition3
    assert any(w.kind == "mark" and w.ids == (1,) and (w.lhs, w.rhs) == (0, 1) for w in p.witnesses)


def test_gamma_must_match_marks():
    with pytest.raises(GammaMismatchError):
        check_relative(totally_ramified_comb(3), gamma("(1,1)@inf"))
    with pytest.raises(GammaMismatchError):
        check_relative(totally_ramified_comb(3), gamma("(1,2)@inf"))


def test_relative_point_must_exist():
    with pytest.raises(InputError):
        check_relative(single_vertex(1, (1,)), gamma("(1)@zero"))


def test_invalid_graph_is_rejected():
    with pytest.raises(InvalidGraphError):
        check_relative(comb(1, 1, (1,)), gamma("(1)@inf"))


def test_explicit_mark_ids():
    g = totally_ramified_comb(3)
    gam = TangencyData(0, (RelativeCondition("inf", (1, 1, 1), (3, 1, 2)),))
    assert check_relative(g, gam).ok
    bad = TangencyData(0, (RelativeCondition("inf", (1, 1, 1), (1, 2, 7)),))
    with pytest.raises(GammaMismatchError):
        check_relative(g, bad)


def test_parse_and_dict_round_trip():
    g = TangencyData.parse("2; (1, 2)@inf; (3)@0")
    assert g.n_free == 2
    assert g.tangencies("inf") == (1, 2) and g.tangencies("0") == (3,)
    assert TangencyData.from_dict(g.to_dict()) == g
    with pytest.raises(InputError):
        TangencyData.parse("(1,x)@inf")


def test_per_fiber_total_is_required():
    g = DualMapGraph((Vertex.active(0, 3),), (), (MarkedPoint(1, 0, 1, "inf", 3),), INF, 3)
    p = check_relative(g, gamma("(1)@inf")).at("inf")
    assert any(w.kind == "fiber-total" for w in p.witnesses)


# -- predicates ----------------------------------------------------------------


def test_predicates_on_smooth_source():
    g, gam = single_vertex(3, (1, 2)), gamma("(1,2)@inf")
    assert is_M_Gamma(g, gam) and is_N_Gamma(g, gam) and is_K_Gamma(g, gam)


def test_predicates_on_comb():
    g, gam = totally_ramified_comb(3), gamma("(1,1,1)@inf")
    assert is_K_Gamma(g, gam)
    assert not is_N_Gamma(g, gam)
    assert not is_M_Gamma(g, gam)


def test_empty_tangency_data_is_always_smoothable():
    t = weighted_projective(4, 6, ())
    g = DualMapGraph(
        (Vertex.active(0, 2), Vertex.active(1, 1), Vertex.contracted(2, "[1:0]")),
        (Edge(0, (0, 2), 2), Edge(1, (1, 2), 1)),
        (MarkedPoint(1, 2, 0, None, None, 2), MarkedPoint(2, 0, 0)),
        t,
        3,
    )
    assert validate(g).ok
    assert is_K_Gamma(g, TangencyData(2))


def test_smooth_source_nonbalanced_is_not_n():
    g = single_vertex(3, (1, 2), ramifications=(2, 1))
    gam = gamma("(1,2)@inf")
    assert not is_K_Gamma(g, gam) and not is_N_Gamma(g, gam) and not is_M_Gamma(g, gam)


def test_realizability_warning():
    g = single_vertex(4, (2, 2))
    g = replace(g, vertices=g.vertices, marks=g.marks)
    report = check_relative(g, gamma("(2,2)@inf"))
    assert report.ok and report.warnings == ()
    t = INF.with_relative(("a", "b", "c"))
    bad = DualMapGraph(
        (Vertex.active(0, 2),),
        (),
        tuple(MarkedPoint(i + 1, 0, 2, p) for i, p in enumerate("abc")),
        t,
        2,
    )
    report = check_relative(bad, gamma("(2)@a;(2)@b;(2)@c"))
    assert report.ok
    assert any("no genus-zero cover" in w for w in report.warnings)


# -- reduction -------------------------------------------------------------------


def _chain() -> DualMapGraph:
    return DualMapGraph(
        (Vertex.active(0, 2), Vertex.active(1, 1), Vertex.contracted(2, "inf"), Vertex.contracted(3, "inf")),
        (Edge(0, (0, 2), 2), Edge(1, (2, 3), 1), Edge(2, (3, 1), 1)),
        (MarkedPoint(1, 2, 1, "inf"), MarkedPoint(2, 2, 1, "inf"), MarkedPoint(3, 3, 1, "inf")),
        INF,
        3,
    )


def test_chain_of_contracted_vertices_merges():
    g = _chain()
    assert validate(g).ok and not is_reduced(g)
    r = reduce_contracted(g)
    assert validate(r).ok and is_reduced(r)
    assert [v.id for v in r.contracted_vertices] == [2]
    assert sorted(m.id for m in r.marks_on(2)) == [1, 2, 3]
    assert sorted((e.id, e.ramification) for e in r.edges_at(2)) == [(0, 2), (2, 1)]
    assert check_relative(r, gamma("(1,1,1)@inf")).statuses() == check_relative(g, gamma("(1,1,1)@inf")).statuses()


def test_reduction_fixed_points():
    for g in (single_vertex(2, (1, 1)), totally_ramified_comb(3), star([2, 3], [1, 1, 3])):
        assert reduce_contracted(g) == g


def test_reduction_preserves_statuses_on_samples(rng):
    for _ in range(300):
        g = random_graph(rng, points=("inf", "0"))
        gam = TangencyData.from_graph(g)
        r = reduce_contracted(g)
        assert validate(r).ok
        assert check_relative(r, gam, realizability=False).statuses() == check_relative(g, gam, realizability=False).statuses()


def test_balance_witnesses_are_sound(rng):
    for _ in range(300):
        g = random_graph(rng)
        gam = TangencyData.from_graph(g)
        for p in check_relative(g, gam, realizability=False).points:
            for w in p.witnesses:
                if w.condition != 3:
                    continue
                if w.kind == "subtree":
                    d = sum(m.tangency for v in w.ids for m in g.marks_on(v))
                    e = sum(edge.index_at(edge.other(v)) for v in w.ids for edge in g.edges_at(v)
                            if edge.other(v) not in w.ids)
                else:
                    m = g.mark(w.ids[0])
                    d, e = m.tangency, m.local_ramification
                assert d != e


def test_implication_chain_on_samples(rng):
    for _ in range(300):
        g = random_graph(rng, points=rng.choice([("inf",), ("inf", "0")]))
        gam = TangencyData.from_graph(g)
        m, n, k = is_M_Gamma(g, gam), is_N_Gamma(g, gam), is_K_Gamma(g, gam)
        assert (not m or n) and (not n or k)


def test_single_vertex_condition_two_matches_fiber_sum(rng):
    for _ in range(200):
        deg = rng.randint(1, 6)
        parts = []
        rest = rng.randint(0, deg)
        while rest:
            x = rng.randint(1, rest)
            parts.append(x)
            rest -= x
        if not parts:
            continue
        g = replace(single_vertex(deg, tuple(parts)), fiber_flags=(("inf", False),))
        gam = TangencyData(0, (RelativeCondition("inf", tuple(parts)),))
        assert check_relative(g, gam, realizability=False).at("inf").condition2 == (sum(parts) == deg)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([("inf",), ("inf", "0"), ("0",)]))
def test_reduction_is_idempotent_and_status_preserving(seed, points):
    g = random_graph(random.Random(seed), points=points)
    gam = TangencyData.from_graph(g)
    r = reduce_contracted(g)
    assert reduce_contracted(r) == r and is_reduced(r)
    assert check_relative(r, gam, realizability=False).statuses() == check_relative(g, gam, realizability=False).statuses()
