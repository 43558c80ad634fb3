import pytest

from plumblat import contfrac, embed, families
from plumblat.families import FamilyDescriptor, classify, generate, link_component_count
from plumblat.plumbing import PlumbingGraph, determinant, is_in_wp, quantity_I


def test_generate_smallest_cl_instance():
    d = FamilyDescriptor.make("thm_cl", "-4.1", -4, {"b": (2,), "legs": (2,)})
    g = generate(d)
    assert g.reordered_legs().to_text() == "3; 2; 2; 2,2"
    assert is_in_wp(g) and quantity_I(g) == -4
    assert embed.find_embedding(g).found


def test_generate_lisca_base():
    d = FamilyDescriptor.make("lisca_linear", "I.1", -3, {"b": (2,)})
    assert generate(d) == (2, 2, 2)


def test_generate_z9_family_a_instance():
    d = FamilyDescriptor.make("thm_ncl", "a", -2, {"s": 2, "t": 1, "b": (2, 2)})
    g = generate(d)
    assert sorted(g.weights()) == sorted((4, 3, 2, 2, 4, 2, 2, 3, 3))
    assert g.center == 4
    assert sorted(g.legs) == [(2, 2), (3, 2), (3, 3, 2, 4)]
    # the paper's printed certificate verifies against it
    z9 = (
        (1, -1, 0, 0, 0, -1, 1, 0, 0),
        (0, 1, -1, 0, 1, 0, 0, 0, 0),
        (0, 0, -1, 0, -1, 0, 0, 0, 0),
        (1, 0, 0, 0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, -1, -1, -1, -1),
        (0, 0, 0, 0, 0, 0, 0, -1, 1),
        (0, 0, 0, 0, 0, 0, -1, 1, 0),
        (-1, -1, 0, 1, 0, 0, 0, 0, 0),
        (0, 1, 1, 1, 0, 0, 0, 0, 0),
    )
    assert embed.verify_certificate(g, z9)


def test_generate_rejects_out_of_range():
    with pytest.raises(ValueError):
        generate(FamilyDescriptor.make("thm_ncl", "a", -2, {"s": 0, "t": 1, "b": (2,)}))
    with pytest.raises(ValueError):
        generate(FamilyDescriptor.make("thm_ncl", "c", -2, {"t": 0, "b": (2,)}))
    with pytest.raises(ValueError):
        generate(FamilyDescriptor.make("thm_cl", "-3.1", -3, {"s": 0, "t": 0, "legs": (2,)}))
    with pytest.raises(ValueError):
        generate(FamilyDescriptor.make("thm_cl", "-4.1", -4, {"b": (2, 1), "legs": (2,)}))


def test_descriptor_serialization_round_trip():
    d = FamilyDescriptor.make("thm_ncl", "a", -2, {"s": 2, "t": 1, "b": (2, 2)})
    assert FamilyDescriptor.parse(d.serialize()) == d
    d2 = FamilyDescriptor.make("thm_cl", "-2.3", -2, {"s": 1, "t": 0, "legs": (3, 2)})
    assert FamilyDescriptor.parse(d2.serialize()) == d2
    assert d2.serialize() == "thm_cl:-2.3:-2:legs=3.2,s=1,t=0"


def test_classify_smallest():
    matches = classify(PlumbingGraph.from_text("3; 2,2; 2; 2"))
    assert any(
        d.source == "thm_cl" and d.row == "-4.1" and d.param_dict()["b"] == (2,)
        for d in matches
    )


def test_classify_empty_for_non_candidates():
    assert classify(PlumbingGraph.from_text("4; 3; 3; 3")) == []
    assert classify(PlumbingGraph.from_text("3; 2; 2; 2")) == []
    with pytest.raises(ValueError):
        classify(PlumbingGraph.linear((2, 2, 2)))


def test_classify_generate_round_trip_small():
    count = 0
    for d in families.enumerate_descriptors(8):
        if d.source == "lisca_linear":
            continue
        g = generate(d)
        matches = classify(g)
        assert any(m.source == d.source and m.row == d.row for m in matches), d.serialize()
        count += 1
    assert count > 100


def test_thm_cl_legs_complementary():
    for d in families.enumerate_descriptors(7):
        if d.source != "thm_cl":
            continue
        g = generate(d)
        assert contfrac.is_complementary(g.legs[1], g.legs[2])


def test_family_instances_embed_and_have_claimed_I():
    for d in families.enumerate_descriptors(8):
        if d.source == "lisca_linear":
            g = PlumbingGraph.linear(generate(d))
        else:
            g = generate(d)
            assert is_in_wp(g), d.serialize()
        assert quantity_I(g) == d.I_value, d.serialize()
        assert embed.find_embedding(g).found, d.serialize()


def test_ncl_rows_all_have_minimal_instances():
    seen = {d.row for d in families.enumerate_descriptors(9) if d.source == "thm_ncl"}
    assert seen == {"a", "b", "c", "d", "e"}


def test_link_component_count():
    # |det| = 16 even: not a knot; corank mod 2 decides the exact count
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    assert determinant(g) == -16
    assert link_component_count(g) == 2
    # odd determinant forces a knot
    g = PlumbingGraph.from_text("4; 3; 3; 3")
    assert abs(determinant(g)) == 81
    assert link_component_count(g) == 1
    # |det| = 12: at least two components
    g = PlumbingGraph.from_text("3; 2; 2; 2")
    assert abs(determinant(g)) == 12
    assert link_component_count(g) >= 2


def test_link_component_count_in_range():
    from plumblat import harness

    for g in harness.enumerate_wp_graphs(6):
        assert link_component_count(g) in (1, 2, 3)


def test_lisca_strings_have_correct_I():
    for row, params, s in families.lisca_strings(10):
        expected = families._LISCA_ROWS[row]
        assert sum(a - 3 for a in s) == expected, (row, params, s)


def test_is_lisca_string_reversal():
    s = families._lisca_string("II.2", {"s": 2, "t": 1})
    assert families.is_lisca_string(s)
    assert families.is_lisca_string(tuple(reversed(s)))
    assert not families.is_lisca_string((2, 3, 3, 2))  # I = -2 but not in the lists
