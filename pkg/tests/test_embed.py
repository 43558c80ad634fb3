import pytest

from plumblat import embed, harness, lattice as lat
from plumblat.embed import SearchLimits, find_embedding, gram_of, verify_certificate
from plumblat.plumbing import PlumbingGraph, intersection_matrix

PROP_SET = (
    (0, 1, -1, 0, 0),
    (1, -1, 0, 0, 0),
    (0, 1, 1, 1, 0),
    (0, 0, 0, -1, 1),
    (0, 0, 0, -1, -1),
)

# the paper's explicit embedding of the 9-vertex family-(a) instance
Z9_VECTORS = (
    (1, -1, 0, 0, 0, -1, 1, 0, 0),   # e1 - e2 - e6 + e7
    (0, 1, -1, 0, 1, 0, 0, 0, 0),    # e2 - e3 + e5
    (0, 0, -1, 0, -1, 0, 0, 0, 0),   # -e3 - e5
    (1, 0, 0, 0, 0, 1, 0, 0, 0),     # e1 + e6
    (0, 0, 0, 0, 0, -1, -1, -1, -1), # -e6 - e7 - e8 - e9
    (0, 0, 0, 0, 0, 0, 0, -1, 1),    # -e8 + e9
    (0, 0, 0, 0, 0, 0, -1, 1, 0),    # -e7 + e8
    (-1, -1, 0, 1, 0, 0, 0, 0, 0),   # -e2 - e1 + e4
    (0, 1, 1, 1, 0, 0, 0, 0, 0),     # e2 + e3 + e4
)
Z9_GRAPH = PlumbingGraph.star(4, (3, 3, 2, 4), (2, 2), (3, 2))


def test_smallest_wp_graph_certificate():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    res = find_embedding(g)
    assert res.found
    assert lat.canonical_vectors(res.certificate.vectors) == lat.canonical_vectors(PROP_SET)
    assert verify_certificate(g, res.certificate)


def test_trivial_cases():
    assert find_embedding(PlumbingGraph.linear((2,))).status == embed.NOT_EMBEDDABLE
    res = find_embedding(PlumbingGraph.linear((1,)))
    assert res.found and res.certificate.vectors == ((1,),)


def test_determinism():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    first = find_embedding(g)
    second = find_embedding(g)
    assert first.certificate.vectors == second.certificate.vectors
    assert first.nodes == second.nodes


def test_gram_of():
    cert = embed.EmbeddingCertificate(PlumbingGraph.linear((1, 1, 1)), ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert gram_of(cert) == [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    ordered = (PROP_SET[2], PROP_SET[1], PROP_SET[0], PROP_SET[3], PROP_SET[4])
    cert = embed.EmbeddingCertificate(g, ordered)
    assert gram_of(cert) == intersection_matrix(g)
    empty = embed.EmbeddingCertificate(PlumbingGraph.linear(()), ())
    assert gram_of(empty) == []


def test_paper_z9_certificate():
    assert verify_certificate(Z9_GRAPH, Z9_VECTORS)
    assert sorted(lat.norm(v) for v in Z9_VECTORS) == sorted(
        a for a in (4, 3, 2, 2, 4, 2, 2, 3, 3)
    )


def test_perturbed_certificate_fails():
    bad = list(Z9_VECTORS)
    v = list(bad[0])
    v[6] = -v[6]  # flip a sign on a coordinate shared with a neighbor
    bad[0] = tuple(v)
    assert not verify_certificate(Z9_GRAPH, tuple(bad))


def test_certificate_dimension_mismatch():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    with pytest.raises(ValueError):
        verify_certificate(g, ((1, 0), (0, 1)))


def test_not_found_is_complete_only_with_full_bound():
    # the single (-3) vertex needs a coordinate of size 1 in Z^1: impossible
    g = PlumbingGraph.linear((3,))
    assert find_embedding(g).status == embed.NOT_EMBEDDABLE
    # a shrunken coordinate cap cannot prove anything
    res = find_embedding(PlumbingGraph.linear((5, 2)), SearchLimits(max_abs_coordinate=1))
    assert res.status == embed.BUDGET_EXHAUSTED


def test_node_budget():
    g = PlumbingGraph.star(3, (2, 2, 2), (2, 2), (2,))
    res = find_embedding(g, SearchLimits(node_budget=3))
    assert res.status == embed.BUDGET_EXHAUSTED
    assert res.nodes >= 3


def test_symmetry_quotient_agrees():
    for text in ("3; 2,2; 2; 2", "4; 2; 2; 2,2", "3; 2; 2; 2,3", "2,2,2", "3,2,4"):
        g = PlumbingGraph.from_text(text)
        with_sb = find_embedding(g, symmetry=True)
        without_sb = find_embedding(g, symmetry=False)
        assert with_sb.found == without_sb.found
        if with_sb.found:
            assert verify_certificate(g, without_sb.certificate)


def test_agreement_with_naive_oracle_small():
    for n in (4, 5, 6):
        for g in harness.enumerate_wp_graphs(n):
            res = find_embedding(g)
            assert res.status != embed.BUDGET_EXHAUSTED
            assert res.found == harness.naive_embeddable(g), g.to_text()


def test_linear_lattice_embeddings():
    # chains of (-2)s embed only at weight -1... the A_n lattice needs n+1
    # coordinates, so (2,2) is not embeddable in Z^2 while (1,) is in Z^1
    assert not find_embedding(PlumbingGraph.linear((2, 2))).found
    # the linear I = -3 base string embeds
    assert find_embedding(PlumbingGraph.linear((2, 2, 2))).found


def test_enumerate_embeddings_dedupe():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    sols = embed.enumerate_embeddings(g)
    classes = {lat.canonical_vectors(s) for s in sols}
    assert classes == {lat.canonical_vectors(PROP_SET)}


def test_certificate_serialization():
    g = PlumbingGraph.from_text("3; 2,2; 2; 2")
    cert = find_embedding(g).certificate
    text = cert.to_text()
    assert text.splitlines()[0] == "graph = 3; 2,2; 2; 2"
    assert len(text.splitlines()) == 2 + g.n
