import random

import pytest

from plumblat import contfrac, kirby
from plumblat.contfrac import all_complementary_pairs
from plumblat.plumbing import PlumbingGraph, determinant


def test_collapse_paper_pair():
    trace = kirby.complementary_collapse((3, 2, 4), (2, 4, 2, 2))
    assert trace.collapsed
    assert len(trace.steps) == 7  # k + l


def test_collapse_base_pair():
    trace = kirby.complementary_collapse((2,), (2,))
    assert trace.collapsed
    assert len(trace.steps) == 2


def test_collapse_stuck():
    trace = kirby.complementary_collapse((3,), (3,))
    assert not trace.collapsed
    assert trace.steps == ()
    assert trace.terminal == ((3,), (3,))


def test_collapse_iff_complementary_exhaustive():
    complementary = set(all_complementary_pairs(8))
    for s1, s2 in complementary:
        trace = kirby.complementary_collapse(s1, s2)
        assert trace.collapsed
        assert len(trace.steps) == len(s1) + len(s2)
    rng = random.Random(5)
    tested = 0
    while tested < 300:
        s1 = tuple(rng.randint(2, 6) for _ in range(rng.randint(1, 4)))
        s2 = tuple(rng.randint(2, 6) for _ in range(rng.randint(1, 4)))
        if (s1, s2) in complementary:
            continue
        tested += 1
        assert not kirby.complementary_collapse(s1, s2).collapsed, (s1, s2)


def test_collapse_trace_format():
    trace = kirby.complementary_collapse((3,), (2, 2))
    lines = trace.report_lines()
    assert lines[0] == "R : (3),(2,2) -> (2),(2)"
    assert trace.collapsed


def test_ribbon_reduction_smallest():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    rep = kirby.ribbon_reduction_cl(g)
    assert rep.lens_string == (2, 2, 2)
    assert rep.in_lisca_list
    assert any(row == "I.1" for row, _ in rep.matches)


def test_ribbon_reduction_requires_complementary_legs():
    with pytest.raises(ValueError):
        kirby.ribbon_reduction_cl(PlumbingGraph.from_text("3; 2,2; 2; 3"))
    with pytest.raises(ValueError):
        kirby.ribbon_reduction_cl(PlumbingGraph.linear((2, 2)))


def test_ribbon_reduction_perturbed_string():
    # complementary legs but L_1 + center not from the candidate lists
    g = PlumbingGraph.star(3, (2, 3, 3), (2,), (2,))
    rep = kirby.ribbon_reduction_cl(g)
    assert rep.lens_string == (3, 3, 2, 2)
    assert not rep.in_lisca_list


def test_ribbon_reduction_on_generated_instances():
    from plumblat import families

    checked = 0
    for d in families.enumerate_descriptors(8):
        if d.source != "thm_cl":
            continue
        g = families.generate(d)
        rep = kirby.ribbon_reduction_cl(g)
        assert rep.in_lisca_list, d.serialize()
        assert rep.lens_I in (-3, -2, -1)
        checked += 1
    assert checked > 50


def test_euler_bookkeeping_lines():
    rep = kirby.ribbon_reduction_cl(PlumbingGraph.from_text("3; 2,2; 2; 2"))
    lines = rep.report_lines()
    assert any("link_components = 2" in ln for ln in lines)
    assert any("Moebius" in ln for ln in lines)


def test_blow_down_chain():
    g = PlumbingGraph.linear((2, 1, 2))
    g2 = kirby.blow_down(g, 1)
    assert g2.legs[0] == (1, 1)
    g3 = kirby.blow_down(g2, 0)
    assert g3.legs[0] == (0,)


def test_blow_down_isolated():
    assert kirby.blow_down(PlumbingGraph.linear((1,)), 0).n == 0


def test_blow_down_rejections():
    with pytest.raises(ValueError):
        kirby.blow_down(PlumbingGraph.linear((2, 1, 2)), 0)  # weight -2
    g = PlumbingGraph.star(1, (2,), (2,), (2,))
    with pytest.raises(ValueError):
        kirby.blow_down(g, 0)  # valence 3


def test_blow_down_star_to_linear():
    g = PlumbingGraph.star(3, (1,), (2,), (2,))
    out = kirby.blow_down(g, 1)
    assert not out.is_star
    assert sorted(out.legs[0]) == [2, 2, 2]


def test_blow_down_preserves_determinant():
    cases = [
        (PlumbingGraph.linear((2, 1, 2)), 1),
        (PlumbingGraph.linear((1, 3, 4)), 0),
        (PlumbingGraph.star(3, (1,), (2,), (2,)), 1),
        (PlumbingGraph.star(4, (2, 1), (3,), (2,)), 2),
    ]
    for g, v in cases:
        before = abs(determinant(g))
        after = abs(determinant(kirby.blow_down(g, v)))
        assert before == after, g.to_text()


def test_blow_down_internal_leg_vertex():
    g = PlumbingGraph.star(3, (2, 1, 2), (2,), (2,))
    out = kirby.blow_down(g, 2)
    assert out.is_star
    assert abs(determinant(out)) == abs(determinant(g))
