"""Exhaustive desk-scale verification of the classification statements.

The harness enumerates every admissible three-legged graph at a given
vertex count, decides embeddability for each (with definitive verdicts
only), and checks the classification invariants: no embeddable graphs at
n = 4, exactly three good-set classes in Z^5, I restricted to
{-4, -3, -2}, and embeddable iff classified.  A separately coded,
unoptimized brute-force enumerator cross-checks every verdict.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

import numpy

from plumblat import embed, families, lattice
from plumblat.plumbing import PlumbingGraph, determinant, intersection_matrix, quantity_I


def _weight_sequences(length: int, max_sum: int):
    """All tuples of integers >= 2 of the given length with sum <= max_sum."""
    if length == 0:
        yield ()
        return
    for first in range(2, max_sum - 2 * (length - 1) + 1):
        for rest in _weight_sequences(length - 1, max_sum - first):
            yield (first,) + rest


def enumerate_wp_graphs(n: int) -> list[PlumbingGraph]:
    """All three-legged graphs with n vertices, central weight <= -3, leg
    weights <= -2 and I < -1, up to leg reordering.

    I < -1 bounds the weight sum by 3n - 2, which makes the family finite.
    """
    if n < 4:
        raise ValueError("a three-legged graph needs at least 4 vertices")
    budget = 3 * n - 2
    seen = set()
    out = []
    lengths = set()
    for l1 in range(1, n - 2):
        for l2 in range(1, n - 1 - l1):
            l3 = (n - 1) - l1 - l2
            if l3 >= 1:
                lengths.add(tuple(sorted((l1, l2, l3), reverse=True)))
    for l1, l2, l3 in sorted(lengths):
        for center in range(3, budget - 2 * (n - 1) + 1):
            rem = budget - center
            for w1 in _weight_sequences(l1, rem - 2 * (l2 + l3)):
                rem1 = rem - sum(w1)
                for w2 in _weight_sequences(l2, rem1 - 2 * l3):
                    rem2 = rem1 - sum(w2)
                    for w3 in _weight_sequences(l3, rem2):
                        key = (center, tuple(sorted((w1, w2, w3))))
                        if key not in seen:
                            seen.add(key)
                            out.append(PlumbingGraph.star(center, *key[1]))
    out.sort(key=lambda g: (g.center, g.legs))
    return out


# ---------------------------------------------------------------------------
# the independent brute-force oracle


@lru_cache(maxsize=None)
def _vectors_of_norm(n: int, norm: int, bound: int) -> tuple:
    """Every integer vector of the given norm in Z^n with |coords| <= bound."""
    if n == 0:
        return ((),) if norm == 0 else ()
    out = []
    top = min(bound, isqrt(norm))
    for first in range(-top, top + 1):
        for rest in _vectors_of_norm(n - 1, norm - first * first, bound):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _compat_masks(n: int, norm_k: int, norm_j: int, bound: int, target: int):
    """For each vector w of norm norm_k: a bitmask over the norm_j pool
    selecting the vectors v with <v, w> equal to the target."""
    a = numpy.array(_vectors_of_norm(n, norm_k, bound), dtype=numpy.int64).reshape(-1, n)
    b = numpy.array(_vectors_of_norm(n, norm_j, bound), dtype=numpy.int64).reshape(-1, n)
    hits = a @ b.T == target
    packed = numpy.packbits(hits, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def naive_embeddable(g: PlumbingGraph, bound: int | None = None) -> bool:
    """Plain depth-first certificate search with no symmetry breaking.

    Candidates for every vertex are the full list of vectors of the right
    norm with coordinates bounded by isqrt(max weight); vertices are
    assigned in graph order, and assigning one filters the remaining
    candidate lists by the new pairing constraint.  The tree searched is
    the full unquotiented one, so this stays independent of the optimized
    search; domains live in bitmasks to keep the bookkeeping cheap.
    """
    q = intersection_matrix(g)
    n = len(q)
    norms = [-q[k][k] for k in range(n)]
    if bound is None:
        bound = max(isqrt(a) for a in norms)
    pool_sizes = [len(_vectors_of_norm(n, a, bound)) for a in norms]
    full = [(1 << size) - 1 for size in pool_sizes]
    masks = {
        (k, j): _compat_masks(n, norms[k], norms[j], bound, -q[j][k])
        for k in range(n)
        for j in range(k + 1, n)
    }

    failed: set = set()  # transposition table of exhausted states

    def extend(k: int, doms: tuple) -> bool:
        if k == n:
            return True
        state = (k, doms)
        if state in failed:
            return False
        dom = doms[0]
        while dom:
            low = dom & -dom
            dom ^= low
            w_idx = low.bit_length() - 1
            rest = []
            for offset, dj in enumerate(doms[1:]):
                j = k + 1 + offset
                filtered = dj & masks[(k, j)][w_idx]
                if not filtered:
                    break
                rest.append(filtered)
            else:
                if extend(k + 1, tuple(rest)):
                    return True
        failed.add(state)
        return False

    if any(size == 0 for size in pool_sizes):
        return False
    return extend(0, tuple(full))


# ---------------------------------------------------------------------------
# verdict cache


class VerdictCache:
    """Plain-text ledger of embedding verdicts keyed by canonical graph text."""

    def __init__(self, path: str | None = None):
        self.path = path
        self.entries: dict[str, tuple[str, int]] = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    parts = line.rstrip("\n").split("\t")
                    if len(parts) == 3:
                        self.entries[parts[0]] = (parts[1], int(parts[2]))

    def get(self, g: PlumbingGraph):
        return self.entries.get(g.reordered_legs().to_text())

    def put(self, g: PlumbingGraph, status: str, nodes: int) -> None:
        key = g.reordered_legs().to_text()
        if key not in self.entries:
            self.entries[key] = (status, nodes)
            if self.path:
                with open(self.path, "a") as fh:
                    fh.write("%s\t%s\t%d\n" % (key, status, nodes))


# ---------------------------------------------------------------------------
# classification sweeps


@dataclass
class GraphVerdict:
    graph: PlumbingGraph
    I: int
    det: int
    embeddable: bool
    nodes: int
    descriptors: list = field(default_factory=list)

    def report_line(self) -> str:
        fam = ", ".join(d.serialize() for d in self.descriptors) if self.descriptors else "none"
        return "graph = %s | I = %d | det = %d | embeddable = %s | family = %s" % (
            self.graph.to_text(),
            self.I,
            self.det,
            "yes" if self.embeddable else "no",
            fam,
        )


@dataclass
class ClassificationReport:
    n: int
    verdicts: list[GraphVerdict]
    failures: list[str]
    classes_z5: list | None = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def embeddable(self) -> list[GraphVerdict]:
        return [v for v in self.verdicts if v.embeddable]

    def report_lines(self) -> list[str]:
        lines = [v.report_line() for v in self.verdicts]
        if self.classes_z5 is not None:
            for c in self.classes_z5:
                lines.append(
                    "good_set_class = center %d, legs %s, floating %s | I = %d | integral_classes = %d"
                    % (c.center, list(c.connected_legs), list(c.floating), c.I, len(c.certificates))
                )
        lines.append(
            "n = %d | graphs = %d | embeddable = %d | failures = %d | seconds = %.2f"
            % (self.n, len(self.verdicts), len(self.embeddable), len(self.failures), self.wall_time)
        )
        lines.extend("FAIL: " + f for f in self.failures)
        return lines


def _check_p_inequality(vectors, failures: list[str], context: str) -> None:
    """Lemma-level inequality 2 p_1 + p_2 > sum_{j>=4} (j-3) p_j for any
    n-vector subset of Z^n with I < 0; asserted on every certificate."""
    p = lattice.ConfiguredSet.from_vectors(vectors)
    if lattice.quantity_I(p) >= 0:
        return
    counts = lattice.p_counts(p)
    lhs = 2 * counts.get(1, 0) + counts.get(2, 0)
    rhs = sum((j - 3) * c for j, c in counts.items() if j >= 4)
    if lhs <= rhs:
        failures.append("p-inequality fails for %s" % (context,))


def verify_classification(
    n: int,
    limits: embed.SearchLimits | None = None,
    cache: VerdictCache | None = None,
    check_oracle: bool = False,
    parallel: bool = False,
) -> ClassificationReport:
    """Sweep all admissible graphs at n vertices and check the classification.

    Asserts: every verdict definitive; embeddable iff classified; embeddable
    implies I in {-4, -3, -2}; zero embeddable graphs at n = 4; exactly
    three good-set classes in Z^5 at n = 5; the p-inequality on every
    certificate.  With check_oracle the naive enumerator re-decides every
    graph.
    """
    start = time.time()
    failures: list[str] = []
    graphs = enumerate_wp_graphs(n)
    verdicts = []
    if parallel:
        results = _parallel_verdicts(graphs, limits)
    else:
        results = [_one_verdict(g, limits, cache) for g in graphs]
    for g, res in zip(graphs, results):
        if res.status == embed.BUDGET_EXHAUSTED:
            failures.append("budget exhausted on %s" % g.to_text())
            continue
        found = res.status == embed.FOUND
        descriptors = families.classify(g)
        v = GraphVerdict(g, quantity_I(g), determinant(g), found, res.nodes, descriptors)
        verdicts.append(v)
        if found:
            if v.I not in (-4, -3, -2):
                failures.append("embeddable graph %s has I = %d" % (g.to_text(), v.I))
            if not descriptors:
                failures.append("embeddable graph %s is unclassified" % g.to_text())
            _check_p_inequality(res.certificate.vectors, failures, g.to_text())
        elif descriptors:
            failures.append(
                "non-embeddable graph %s matches %s"
                % (g.to_text(), descriptors[0].serialize())
            )
        if check_oracle:
            if naive_embeddable(g) != found:
                failures.append("oracle disagrees on %s" % g.to_text())
    if n == 4:
        emb = [v for v in verdicts if v.embeddable]
        if emb:
            failures.append("expected zero embeddable graphs at n = 4, got %d" % len(emb))
    classes = None
    if n == 5:
        classes = good_set_classes_z5()
        if len(classes) != 3:
            failures.append("expected 3 good-set classes in Z^5, got %d" % len(classes))
        imultiset = sorted(c.I for c in classes)
        if imultiset != [-4, -3, -2]:
            failures.append("Z^5 class I-multiset %s != [-4, -3, -2]" % imultiset)
        prop = lattice.canonical_vectors(
            ((0, 1, -1, 0, 0), (1, -1, 0, 0, 0), (0, 1, 1, 1, 0), (0, 0, 0, -1, 1), (0, 0, 0, -1, -1))
        )
        i4 = [c for c in classes if c.I == -4]
        if not i4 or i4[0].certificates != [prop]:
            failures.append("the I = -4 class certificate is not the expected one")
    return ClassificationReport(n, verdicts, failures, classes, time.time() - start)


def _one_verdict(g, limits, cache):
    if cache is not None:
        hit = cache.get(g)
        if hit is not None and hit[0] != embed.FOUND:
            return embed.EmbedResult(hit[0], None, hit[1])
    res = embed.find_embedding(g, limits)
    if cache is not None:
        cache.put(g, res.status, res.nodes)
    return res


def _parallel_graph_worker(args):
    text, cap, budget = args
    g = PlumbingGraph.from_text(text)
    limits = embed.SearchLimits(max_abs_coordinate=cap, node_budget=budget)
    res = embed.find_embedding(g, limits)
    vectors = res.certificate.vectors if res.certificate else None
    return res.status, vectors, res.nodes


def _parallel_verdicts(graphs, limits):
    import concurrent.futures

    limits = limits or embed.SearchLimits()
    jobs = [(g.to_text(), limits.max_abs_coordinate, limits.node_budget) for g in graphs]
    out = []
    with concurrent.futures.ProcessPoolExecutor() as pool:
        for (status, vectors, nodes), g in zip(pool.map(_parallel_graph_worker, jobs), graphs):
            cert = embed.EmbeddingCertificate(g, vectors) if vectors else None
            out.append(embed.EmbedResult(status, cert, nodes, deterministic=False))
    return out


# ---------------------------------------------------------------------------
# good subsets of Z^5 (the n = 5 base case enumerates configured sets, not
# just connected graphs: a leg may be disconnected from the rest)


def _gamma_gram(center: int, legs_with_gaps) -> list[list[int]]:
    """Gram matrix of a star shape whose legs may have broken edges."""
    size = 1 + sum(len(leg) for leg, _ in legs_with_gaps)
    q = [[0] * size for _ in range(size)]
    q[0][0] = -center
    pos = 1
    for leg, gammas in legs_with_gaps:
        for i, a in enumerate(leg):
            q[pos + i][pos + i] = -a
        q[0][pos] = q[pos][0] = 1
        for i, gamma in enumerate(gammas):
            q[pos + i][pos + i + 1] = q[pos + i + 1][pos + i] = gamma
        pos += len(leg)
    return q


@dataclass
class GoodSetClass:
    """One good-set class: a weighted incidence shape with its embeddings.

    Any two integral realizations of the same shape are equivalent under
    the rational orthogonal group preserving integrality on the set, so
    the shape IS the class in the coarse (paper) sense; certificates lists
    the finer classes up to signed coordinate permutations.
    """

    I: int
    center: int
    connected_legs: tuple
    floating: tuple
    certificates: list


def good_set_classes_z5() -> list[GoodSetClass]:
    """All good 5-vector subsets of Z^5 with a trivalent vertex and I < -1.

    The shapes to try are the star on legs (2,1,1) with the long leg
    either connected or broken (a floating extra vertex).  Irreducibility
    is checked on the realizations; classes are grouped by shape, with
    the O(5;Z)-classes of certificates recorded inside each.
    """
    classes: dict = {}
    budget = 13  # I < -1 at 5 vertices
    for gamma in (1, 0):
        for center in range(3, budget - 8 + 1):
            for a1 in range(2, budget - center - 6 + 1):
                for a2 in range(2, budget - center - a1 - 4 + 1):
                    for a3 in range(2, budget - center - a1 - a2 - 2 + 1):
                        for a4 in range(2, budget - center - a1 - a2 - a3 + 1):
                            if gamma == 1:
                                shape = (center, tuple(sorted(((a1, a2), (a3,), (a4,)))), ())
                            else:
                                shape = (center, tuple(sorted(((a1,), (a3,), (a4,)))), ((a2,),))
                            q = _gamma_gram(center, [((a1, a2), (gamma,)), ((a3,), ()), ((a4,), ())])
                            _, sols, _ = embed.search_gram(q, all_solutions=True)
                            for vectors in sols:
                                p = lattice.ConfiguredSet.from_vectors(vectors)
                                if not lattice.is_good(p):
                                    continue
                                entry = classes.setdefault(
                                    shape, GoodSetClass(lattice.quantity_I(p), shape[0], shape[1], shape[2], [])
                                )
                                key = lattice.canonical_vectors(vectors)
                                if key not in entry.certificates:
                                    entry.certificates.append(key)
    return sorted(classes.values(), key=lambda c: c.I)


# ---------------------------------------------------------------------------
# family sweep


@dataclass
class FamilyCheck:
    descriptor: families.FamilyDescriptor
    graph_text: str
    n: int
    ok: bool
    problems: list[str]


@dataclass
class FamiliesReport:
    max_n: int
    checks: list[FamilyCheck]
    wall_time: float = 0.0

    @property
    def failures(self) -> list[FamilyCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def report_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else "FAIL (%s)" % "; ".join(c.problems)
            lines.append(
                "descriptor = %s | graph = %s | n = %d | %s"
                % (c.descriptor.serialize(), c.graph_text, c.n, status)
            )
        lines.append(
            "descriptors = %d | failures = %d | seconds = %.2f"
            % (len(self.checks), len(self.failures), self.wall_time)
        )
        return lines


def verify_families(max_n: int, limits: embed.SearchLimits | None = None) -> FamiliesReport:
    """Check every family instance with at most max_n vertices.

    thm_cl / thm_ncl instances must be in the admissible family, have the
    row's I, embed, and (thm_cl) reduce into the linear lists; lisca
    strings must have the row's I and embed as linear graphs.
    """
    from plumblat import kirby
    from plumblat.plumbing import is_in_wp

    start = time.time()
    checks = []
    for d in families.enumerate_descriptors(max_n):
        problems = []
        obj = generate_or_none(d, problems)
        if obj is None:
            checks.append(FamilyCheck(d, "-", 0, False, problems))
            continue
        if d.source == "lisca_linear":
            g = PlumbingGraph.linear(obj)
        else:
            g = obj
        if quantity_I(g) != d.I_value:
            problems.append("I = %d, expected %d" % (quantity_I(g), d.I_value))
        if d.source in ("thm_cl", "thm_ncl"):
            if not is_in_wp(g):
                problems.append("not in the admissible family")
            if d.source == "thm_cl":
                if not kirby.ribbon_reduction_cl(g).in_lisca_list:
                    problems.append("reduction leaves the linear lists")
                own = [
                    x
                    for x in families.classify(g)
                    if x.source == d.source and x.row == d.row
                ]
                if not own:
                    problems.append("classify does not recover the row")
        res = embed.find_embedding(g, limits)
        if res.status != embed.FOUND:
            problems.append("no embedding (%s)" % res.status)
        else:
            failures: list[str] = []
            _check_p_inequality(res.certificate.vectors, failures, d.serialize())
            problems.extend(failures)
        checks.append(FamilyCheck(d, g.to_text(), g.n, not problems, problems))
    return FamiliesReport(max_n, checks, time.time() - start)


def generate_or_none(d, problems):
    try:
        return families.generate(d)
    except (ValueError, NotImplementedError) as exc:
        problems.append("generate failed: %s" % exc)
        return None
