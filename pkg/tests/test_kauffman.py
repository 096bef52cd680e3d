import pytest

from algebra.poly import t_power
from checks.kauffman import kauffman_bracket, kauffman_compare
from webs.library import braid_closure, figure_eight, hopf, kinked_unknot, theta, trefoil, two_unknots, unknot
from errors import HasVertices


def test_unknot_is_one_loop():
    assert kauffman_bracket(unknot(2)) == t_power(2, -1) + t_power(-2, -1)


def test_two_unknots_square_the_loop():
    loop = t_power(2, -1) + t_power(-2, -1)
    assert kauffman_bracket(two_unknots(2)) == loop * loop


def test_kink_scales_by_minus_a_cubed():
    loop = t_power(2, -1) + t_power(-2, -1)
    values = {kauffman_bracket(kinked_unknot(2, 1)), kauffman_bracket(kinked_unknot(2, -1))}
    assert values == {t_power(3, -1) * loop, t_power(-3, -1) * loop}


@pytest.mark.parametrize("build", [unknot, two_unknots, kinked_unknot, hopf, trefoil, figure_eight])
def test_bracket_at_two_matches_kauffman(build):
    report = kauffman_compare(build(2))
    assert report.ok, report.summary()


def test_compare_moves_diagram_to_two():
    report = kauffman_compare(trefoil(3))
    assert report.ok
    assert report.components == 1
    assert report.summary()["ok"] is True


def test_webs_with_vertices_are_rejected():
    with pytest.raises(HasVertices):
        kauffman_bracket(theta(2))


@pytest.mark.parametrize(
    ("word", "strands"),
    [([-1, -1], 2), ([-1, -1, -1], 2), ([-1, -2], 3), ([-1, -1, -1, -1], 2)],
)
def test_negative_writhe_links_match_kauffman(word, strands):
    report = kauffman_compare(braid_closure(word, strands, 2))
    assert report.writhe + report.components <= 0
    assert report.ok, report.summary()


def test_odd_negative_sign_flips_the_kauffman_bracket():
    report = kauffman_compare(braid_closure([-1, -2], 3, 2))
    assert (report.writhe, report.components) == (-2, 1)
    assert report.expected == -report.kauffman
