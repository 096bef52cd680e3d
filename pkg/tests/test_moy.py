import pytest

from algebra.combinat import quantum_int
from algebra.poly import ONE, t_power
from checks.suites import moy_annulus, moy_corpus, moy_square, moy_theta
from evaluate.moy import (
    annulus_value,
    enumerate_moy_states,
    eta,
    eta_over_states,
    moy_bracket,
    moy_normalization,
    moy_original_bracket,
    moy_state_sum,
    substitution_check,
)
from evaluate.tensor_eval import evaluate
from webs.library import unknot
from webs.moy_graph import MOYGraph, MOYSlice, expand_W, moy_edges, parse_moy, render_moy
from errors import FlowViolation, OpenDiagram, ValidationError, WebSyntaxError


@pytest.mark.parametrize("n", [2, 3, 4])
def test_annulus_labelled_one_is_quantum_n(n):
    graph = moy_annulus(n, 1)
    assert moy_bracket(graph) == quantum_int(n, n)
    assert moy_state_sum(graph) == quantum_int(n, n)


@pytest.mark.parametrize("n", [2, 3])
def test_annulus_labelled_n_is_power_of_quantum_n(n):
    graph = moy_annulus(n, n)
    expected = quantum_int(n, n) ** n
    assert moy_bracket(graph) == expected
    assert moy_state_sum(graph) == expected


def test_clockwise_annulus_has_the_same_bracket():
    assert moy_bracket(moy_annulus(3, 1, orient="du")) == moy_bracket(moy_annulus(3, 1))
    assert moy_state_sum(moy_annulus(3, 1, orient="du")) == quantum_int(3, 3)


def test_annulus_expands_to_the_unknot():
    assert evaluate(expand_W(moy_annulus(3, 1))) == evaluate(unknot(3))


def test_theta_edges_and_windings():
    edges, vertices = moy_edges(moy_theta(3, 1, 1))
    assert sorted(edge.label for edge in edges) == [1, 1, 2]
    assert all(edge.kind == "edge" for edge in edges)
    assert [vertex.gen for vertex in vertices] == ["split", "merge"]
    (thick,) = [edge for edge in edges if edge.label == 2]
    assert thick.winding == 1
    assert vertices[0].e0 == vertices[1].e0 == thick.edge_id


def test_theta_at_two():
    # q = t^2: N = q[2] = q^2 + 1 and the state sum is 1 + q^2.
    graph = moy_theta(2, 1, 1)
    q_squared_plus_one = t_power(4) + ONE
    assert moy_normalization(graph) == q_squared_plus_one
    assert moy_state_sum(graph) == q_squared_plus_one * q_squared_plus_one
    assert moy_bracket(graph) == q_squared_plus_one * q_squared_plus_one
    assert len(list(enumerate_moy_states(graph))) == 2


@pytest.mark.parametrize("n", [2, 3])
def test_state_sum_matches_web_bracket_on_corpus(n):
    for name, graph in moy_corpus(n).items():
        assert moy_state_sum(graph) == moy_bracket(graph), name


@pytest.mark.parametrize("n", [2, 3])
def test_substitution_identity_on_corpus(n):
    for name, graph in moy_corpus(n).items():
        report = substitution_check(graph)
        assert report.ok, (name, report.lhs.render(), report.rhs.render())


@pytest.mark.parametrize("n", [2, 3])
def test_sign_does_not_depend_on_the_state(n):
    for name, graph in moy_corpus(n).items():
        assert set(eta_over_states(graph)) == {eta(graph)}, name


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_single_annulus_sign(n):
    assert eta(moy_annulus(n, 1)) == (n + 1) % 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_original_bracket_of_annulus(n):
    assert moy_original_bracket(moy_annulus(n, 1)) == annulus_value(n)


def test_original_bracket_of_annulus_labelled_two():
    assert moy_original_bracket(moy_annulus(3, 2)) == annulus_value(3) ** 2


def test_square_is_consistent_at_three():
    graph = moy_square(3)
    assert moy_state_sum(graph) == moy_bracket(graph)
    assert substitution_check(graph).ok


def test_open_graph_is_rejected():
    graph = MOYGraph(3, (MOYSlice("mcup", 0, (1,)),))
    with pytest.raises(OpenDiagram):
        moy_bracket(graph)
    with pytest.raises(OpenDiagram):
        moy_state_sum(graph)


@pytest.mark.parametrize("n", [2, 3])
def test_render_and_parse_agree(n):
    for graph in moy_corpus(n).values():
        assert parse_moy(render_moy(graph)) == graph


def test_parse_reads_orient_and_override():
    text = '{"n": 3, "slices": [{"gen": "mcup", "at": 0, "labels": [1], "orient": "du"}, {"gen": "mcap", "at": 0, "labels": [1]}]}'
    graph = parse_moy(text, n_override=4)
    assert graph.n == 4
    assert graph.slices[0].orient == "du"


@pytest.mark.parametrize(
    "slices",
    [
        '[{"gen": "mcup", "at": 0, "labels": [3]}, {"gen": "mcap", "at": 0, "labels": [3]}]',
        '[{"gen": "mcup", "at": 0, "labels": [2]}, {"gen": "split", "at": 0, "labels": [1, 2]}]',
        '[{"gen": "mcup", "at": 0, "labels": [1]}, {"gen": "mcap", "at": 0, "labels": [2]}]',
    ],
)
def test_flow_violations(slices):
    with pytest.raises(FlowViolation):
        parse_moy('{"n": 2, "slices": %s}' % slices, require_closed=False)


def test_split_sum_must_match_the_strand():
    text = '{"n": 3, "slices": [{"gen": "mcup", "at": 0, "labels": [2]}, {"gen": "split", "at": 0, "labels": [1, 2]}]}'
    with pytest.raises(FlowViolation):
        parse_moy(text, require_closed=False)


@pytest.mark.parametrize(
    ("slices", "reason"),
    [
        ('[{"gen": "mcup", "at": 0, "labels": [1], "orient": "uu"}]', "orient"),
        ('[{"gen": "mcup", "at": 0, "labels": [2]}, {"gen": "split", "at": 1, "labels": [1, 1]}]', "orientation mismatch"),
        ('[{"gen": "twist", "at": 0, "labels": [1]}]', "unknown generator"),
        ('[{"gen": "mcup", "at": 0, "labels": [1]}]', "non-closed boundary"),
    ],
)
def test_validation_errors(slices, reason):
    with pytest.raises(ValidationError) as info:
        parse_moy('{"n": 3, "slices": %s}' % slices)
    assert info.value.reason == reason


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"n": "3", "slices": []}',
        '{"n": 3, "slices": [{"gen": "mcup", "at": 0, "labels": ["1"]}]}',
    ],
)
def test_syntax_errors(text):
    with pytest.raises(WebSyntaxError):
        parse_moy(text)
