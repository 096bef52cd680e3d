import json

import pytest

from algebra.poly import ONE
from webs.diagram import (
    DOWN,
    UP,
    DiagramCombination,
    Slice,
    SlicedDiagram,
    component_count,
    crossing_sign,
    parse_web,
    render_web,
    rotate_basepoint,
    vertex_count,
    writhe,
)
from webs.library import (
    braid_tangle,
    figure_eight,
    hopf,
    kinked_unknot,
    square,
    theta,
    trefoil,
    two_unknots,
    unknot,
)
from errors import NoSuchVertex, NotALink, OutOfRange, ValidationError, WebSyntaxError


UNKNOT_TEXT = '{"n":2,"slices":[{"gen":"cupE","at":0},{"gen":"capQ","at":0}]}'


def _text(n, *slices, bottom=None):
    payload = {"n": n, "slices": [{"gen": gen, "at": at} for gen, at in slices]}
    if bottom is not None:
        payload["bottom"] = bottom
    return json.dumps(payload)


def test_parse_counterclockwise_unknot():
    diagram = parse_web(UNKNOT_TEXT, require_closed=True)
    assert diagram == unknot(2)
    assert diagram.is_closed
    assert diagram.signatures == ((), (UP, DOWN), ())


def test_parse_theta_web():
    diagram = parse_web(_text(3, ("vout", 0), ("vin", 0)), require_closed=True)
    assert diagram == theta(3)
    assert diagram.width == 3


def test_n_override_replaces_the_stored_n():
    diagram = parse_web(_text(2, ("vout", 0), ("vin", 0)), n_override=4)
    assert diagram.n == 4
    assert diagram.signatures[1] == (UP,) * 4


def test_orientation_mismatch_names_the_slice():
    with pytest.raises(ValidationError) as info:
        parse_web(_text(2, ("cupE", 0), ("capE", 0)))
    assert info.value.slice_index == 1
    assert info.value.reason == "orientation mismatch"


def test_arity_error():
    with pytest.raises(ValidationError) as info:
        parse_web(_text(2, ("cupE", 0), ("capQ", 1)))
    assert info.value.slice_index == 1
    assert info.value.reason == "arity"


def test_unknown_generator():
    with pytest.raises(ValidationError) as info:
        parse_web(_text(2, ("spin", 0)))
    assert info.value.reason == "unknown generator"


def test_open_boundary_when_closure_required():
    with pytest.raises(ValidationError) as info:
        parse_web(_text(2, ("cupE", 0)), require_closed=True)
    assert info.value.reason == "non-closed boundary"
    assert info.value.slice_index == 1


def test_singular_vertex_needs_singular_mode():
    text = _text(3, ("x4", 0), bottom="uu")
    with pytest.raises(ValidationError):
        parse_web(text)
    assert parse_web(text, singular=True).is_singular


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"slices": []}',
        '{"n": 2, "slices": {}}',
        '{"n": 2, "slices": [{"gen": "cupE", "at": true}]}',
        '{"n": 2, "slices": [{"gen": 3, "at": 0}]}',
        '{"n": 2, "slices": [], "bottom": "ux"}',
    ],
)
def test_syntax_errors(text):
    with pytest.raises(WebSyntaxError):
        parse_web(text)


def test_n_below_two_is_rejected():
    with pytest.raises(ValidationError):
        SlicedDiagram(1, ())


@pytest.mark.parametrize(
    "diagram",
    [unknot(3), theta(2), hopf(3), figure_eight(2), square(3), braid_tangle([1, -2], 3, 4)],
)
def test_render_round_trip(diagram):
    assert parse_web(render_web(diagram)) == diagram


def test_writhe_and_components():
    assert (writhe(unknot(3)), component_count(unknot(3))) == (0, 1)
    assert (writhe(kinked_unknot(3, 1)), component_count(kinked_unknot(3, 1))) == (1, 1)
    assert writhe(kinked_unknot(2, -1)) == -1
    assert (writhe(hopf(2)), component_count(hopf(2))) == (2, 2)
    assert writhe(trefoil(2)) == 3
    assert writhe(figure_eight(2)) == 0
    assert component_count(two_unknots(4)) == 2


def test_crossing_signs_follow_orientations():
    assert crossing_sign("xp", (UP, UP)) == 1
    assert crossing_sign("xp", (UP, DOWN)) == -1
    assert crossing_sign("xm", (DOWN, DOWN)) == -1
    assert crossing_sign("xm", (DOWN, UP)) == 1


def test_vertex_counts():
    assert vertex_count(theta(2)) == (1, 1)
    assert vertex_count(square(3)).sinks == 2
    with pytest.raises(NotALink):
        component_count(theta(2))


def test_stacking_and_placing_side_by_side():
    both = unknot(2).beside(theta(2))
    assert both.is_closed
    assert len(both.slices) == 4
    with pytest.raises(ValidationError):
        braid_tangle([1], 2, 3).then(braid_tangle([1], 3, 3))


def test_rotate_basepoint():
    web = theta(3)
    assert rotate_basepoint(web, 0, 0) == web
    for vertex in range(2):
        for k in range(1, 3):
            rotated = rotate_basepoint(web, vertex, k)
            assert rotated.is_closed
            assert vertex_count(rotated) == vertex_count(web)
    with pytest.raises(NoSuchVertex):
        rotate_basepoint(web, 2, 1)
    with pytest.raises(OutOfRange):
        rotate_basepoint(web, 0, 3)


def test_combination_collects_repeats():
    a, b = unknot(2), theta(2)
    combination = DiagramCombination.collect([(a, ONE), (b, 2), (a, -1)])
    assert len(combination) == 1
    (diagram, coeff), = combination
    assert diagram == b and coeff == 2


def test_slices_are_normalised_to_tuples():
    diagram = SlicedDiagram(2, [Slice("cupE", 0), Slice("capQ", 0)], [])
    assert diagram == unknot(2)
