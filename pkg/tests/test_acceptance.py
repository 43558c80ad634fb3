"""Acceptance suite: one test per criterion, each printing a pass line
with its measured runtime.  Everything is exact arithmetic; the stated
wall-clock limits are asserted as hard bounds.
"""

import random
import time
from fractions import Fraction

import pytest

from plumblat import contfrac, embed, families, harness, kirby, lattice as lat
from plumblat.contfrac import all_complementary_pairs
from plumblat.plumbing import PlumbingGraph, determinant, h1_order, is_in_wp, quantity_I

REPORT = []


def _record(name, seconds, limit, detail):
    line = "criterion %s: PASS (%.2fs < %ds) %s" % (name, seconds, limit, detail)
    REPORT.append(line)
    print("\n" + line)
    assert seconds < limit, "%s exceeded its %ds budget (%.1fs)" % (name, limit, seconds)


@pytest.fixture(scope="module")
def sweeps():
    """Definitive classification sweeps for n = 4..7 with the naive-oracle
    cross-check; shared by criteria 3, 4, 5, 7 and 9."""
    out = {}
    start = time.time()
    for n in (4, 5, 6, 7):
        out[n] = harness.verify_classification(n, check_oracle=True)
    out["seconds"] = time.time() - start
    return out


def test_criterion_1_point_rule():
    start = time.time()
    assert contfrac.point_rule_complement((3, 2, 4)) == (2, 4, 2, 2)
    rng = random.Random(2026)
    checked = 0
    # exhaustive up to length 4 with entries <= 6, random within the full
    # length <= 12 / entries <= 9 domain
    stack = [()]
    while stack:
        s = stack.pop()
        if s:
            comp = contfrac.point_rule_complement(s)
            assert contfrac.point_rule_complement(comp) == s
            p, q = contfrac.cf_eval(s).as_integer_ratio()
            assert contfrac.cf_eval(comp) == Fraction(p, p - q)
            checked += 1
        if len(s) < 4:
            stack.extend(s + (a,) for a in range(2, 7))
    for _ in range(3000):
        s = tuple(rng.randint(2, 9) for _ in range(rng.randint(1, 12)))
        comp = contfrac.point_rule_complement(s)
        assert contfrac.point_rule_complement(comp) == s
        p, q = contfrac.cf_eval(s).as_integer_ratio()
        assert contfrac.cf_eval(comp) == Fraction(p, p - q)
        checked += 1
    _record("1", time.time() - start, 1, "point rule involution/duality on %d strings" % checked)


def test_criterion_2_determinant_vs_seifert():
    start = time.time()
    rng = random.Random(1137)
    for _ in range(1000):
        n = rng.randint(4, 14)
        l1 = rng.randint(1, n - 3)
        l2 = rng.randint(1, n - 2 - l1)
        l3 = n - 1 - l1 - l2
        legs = [tuple(rng.randint(2, 9) for _ in range(l)) for l in (l1, l2, l3)]
        g = PlumbingGraph.star(rng.randint(3, 9), *legs)
        assert abs(determinant(g)) == h1_order(g)
    _record("2", time.time() - start, 5, "|det Q| = Seifert formula on 1000 random stars, n <= 14")


def test_criterion_3_no_embeddable_at_n4(sweeps):
    start = time.time()
    report = sweeps[4]
    assert report.ok, report.failures
    assert report.embeddable == []
    assert all(v.nodes > 0 for v in report.verdicts)
    _record("3", time.time() - start + report.wall_time, 10,
            "0 embeddable graphs among %d at n = 4, all verdicts definitive" % len(report.verdicts))


def test_criterion_4_z5_classes(sweeps):
    report = sweeps[5]
    assert report.ok, report.failures
    classes = report.classes_z5
    assert len(classes) == 3
    assert sorted(c.I for c in classes) == [-4, -3, -2]
    prop = lat.canonical_vectors(
        ((0, 1, -1, 0, 0), (1, -1, 0, 0, 0), (0, 1, 1, 1, 0), (0, 0, 0, -1, 1), (0, 0, 0, -1, -1))
    )
    i4 = [c for c in classes if c.I == -4][0]
    assert i4.certificates == [prop]
    _record("4", report.wall_time, 120,
            "3 good-set classes in Z^5, I-multiset {-4,-3,-2}, I=-4 certificate as printed")


def test_criterion_5_I_range_and_oracle(sweeps):
    seconds = sweeps["seconds"]
    graphs = 0
    for n in (4, 5, 6, 7):
        report = sweeps[n]
        assert report.ok, report.failures[:3]
        graphs += len(report.verdicts)
        for v in report.verdicts:
            if v.embeddable:
                assert v.I in (-4, -3, -2)
    # the oracle cross-check ran inside the sweeps (check_oracle=True);
    # any disagreement would be a failure entry
    _record("5", seconds, 1800,
            "exhaustive n <= 7 sweep (%d graphs): I range and naive-oracle agreement" % graphs)


def test_criterion_6_family_soundness():
    start = time.time()
    report = harness.verify_families(12)
    assert report.ok, [(c.descriptor.serialize(), c.problems) for c in report.failures[:5]]
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
    g9 = families.generate(
        families.FamilyDescriptor.make("thm_ncl", "a", -2, {"s": 2, "t": 1, "b": (2, 2)})
    )
    assert embed.verify_certificate(g9, z9)
    _record("6", time.time() - start, 600,
            "%d family instances with n <= 12: admissible, claimed I, embeddable" % len(report.checks))


def test_criterion_7_completeness(sweeps):
    start = time.time()
    graphs = 0
    for n in (4, 5, 6, 7):
        for v in sweeps[n].verdicts:
            graphs += 1
            assert v.embeddable == bool(v.descriptors), v.graph.to_text()
    _record("7", time.time() - start, 1800,
            "embeddable iff classified on all %d graphs with n <= 7" % graphs)


def test_criterion_8_collapse_and_reduction():
    start = time.time()
    pairs = list(all_complementary_pairs(10))
    for s1, s2 in pairs:
        trace = kirby.complementary_collapse(s1, s2)
        assert trace.collapsed
        assert len(trace.steps) == len(s1) + len(s2)
    rng = random.Random(88)
    complementary = set(pairs)
    non_compl = 0
    while non_compl < 500:
        s1 = tuple(rng.randint(2, 7) for _ in range(rng.randint(1, 5)))
        s2 = tuple(rng.randint(2, 7) for _ in range(rng.randint(1, 5)))
        if (s1, s2) in complementary:
            continue
        assert not kirby.complementary_collapse(s1, s2).collapsed
        non_compl += 1
    reductions = 0
    for d in families.enumerate_descriptors(10):
        if d.source != "thm_cl":
            continue
        rep = kirby.ribbon_reduction_cl(families.generate(d))
        assert rep.in_lisca_list, d.serialize()
        reductions += 1
    _record("8", time.time() - start, 60,
            "collapse iff complementary (%d pairs, %d non-pairs); %d reductions in the linear lists"
            % (len(pairs), non_compl, reductions))


def test_criterion_9_p_inequality(sweeps):
    start = time.time()
    checked = 0
    for n in (4, 5, 6, 7):
        for v in sweeps[n].verdicts:
            if not v.embeddable:
                continue
            res = embed.find_embedding(v.graph)
            p = lat.ConfiguredSet.from_certificate(v.graph, res.certificate.vectors)
            if lat.quantity_I(p) < 0:
                counts = lat.p_counts(p)
                lhs = 2 * counts.get(1, 0) + counts.get(2, 0)
                rhs = sum((j - 3) * c for j, c in counts.items() if j >= 4)
                assert lhs > rhs, v.graph.to_text()
                checked += 1
    # the sweeps themselves assert the inequality inline on every certificate;
    # re-derive it here independently
    assert checked > 0
    _record("9", time.time() - start, 120,
            "p-inequality on all %d embedded configurations with I < 0" % checked)


def test_zz_report_summary():
    print("\n" + "\n".join(REPORT))
    assert len(REPORT) == 9
