"""Deciding the Donaldson obstruction by exhaustive lattice search.

Given a plumbing graph with intersection form Q on n vertices, the search
looks for n integer vectors v_1, ..., v_n in Z^n with -<v_i, v_j> = q_ij,
i.e. a monomorphism of (Z^n, Q) into (Z^n, -Id).  A vector of square -a
has every coordinate bounded by isqrt(a) (its coordinates are a sum of a
unit squares), so the space is finite and a completed search is a proof
of non-embeddability.

Symmetry breaking quotients the O(n;Z) action without losing
completeness: the first vector is forced into nonincreasing nonnegative
form, and later vectors may only introduce fresh coordinates in index
order, as a positive nonincreasing block.  Candidates for each vertex are
generated directly against the incremental inner-product constraints of
all previously placed vertices, so only consistent vectors are ever
materialized.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from plumblat import lattice
from plumblat.plumbing import PlumbingGraph, intersection_matrix

Vector = tuple[int, ...]

FOUND = "found"
NOT_EMBEDDABLE = "not_embeddable"
BUDGET_EXHAUSTED = "budget_exhausted"

DEFAULT_NODE_BUDGET = 200_000_000


@dataclass(frozen=True)
class SearchLimits:
    """Bounds on the search: a coordinate cap (may only shrink the exact
    per-vertex bound) and a node budget."""

    max_abs_coordinate: int | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    deterministic: bool = True

    def __post_init__(self):
        if self.max_abs_coordinate is not None and self.max_abs_coordinate < 1:
            raise ValueError("max_abs_coordinate must be >= 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")


@dataclass(frozen=True)
class EmbeddingCertificate:
    """A vertex-indexed family of vectors witnessing the embedding."""

    graph: PlumbingGraph
    vectors: tuple[Vector, ...]

    def to_text(self) -> str:
        lines = ["graph = %s" % self.graph.to_text(), "n=%d" % len(self.vectors)]
        lines.extend(",".join(str(a) for a in v) for v in self.vectors)
        return "\n".join(lines)


@dataclass
class EmbedResult:
    status: str
    certificate: EmbeddingCertificate | None
    nodes: int
    deterministic: bool = True

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _BudgetExceeded(Exception):
    pass


def _det(matrix) -> int:
    """Exact determinant (fraction-free elimination); local copy to keep the
    searcher self-contained."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _echelon_reduce(rows: list, pivots: list, w):
    """Reduce w against integer echelon rows.

    Returns (reduced row, pivot index), or None when w is linearly
    dependent on the rows.  Fraction-free: reduced entries stay integral
    (scaled), which is all a rank test needs.
    """
    v = list(w)
    for row, piv in zip(rows, pivots):
        if v[piv]:
            scale = row[piv]
            coef = v[piv]
            v = [scale * x - coef * y for x, y in zip(v, row)]
    for i, x in enumerate(v):
        if x:
            return tuple(v), i
    return None


@lru_cache(maxsize=None)
def _square_tails(r: int, max_val: int) -> tuple[tuple[int, ...], ...]:
    """Nonincreasing positive tuples with squares summing to r, entries <= max_val.

    Ordered with small entries first: certificates of the admissible
    graphs use only unit coefficients, so all-ones tails are the likely
    branch and large coefficients are the rare one.
    """
    if r == 0:
        return ((),)
    out = []
    for val in range(min(max_val, isqrt(r)), 0, -1):
        for rest in _square_tails(r - val * val, val):
            out.append((val,) + rest)
    out.sort(key=lambda tail: (tail[0], -len(tail)))
    return tuple(out)


def _value_order(bound: int):
    yield 0
    for v in range(1, bound + 1):
        yield v
        yield -v


class _Searcher:
    """Depth-first Gram realization over Z^n for an arbitrary symmetric Q."""

    def __init__(self, q, limits: SearchLimits | None = None, symmetry: bool = True):
        self.q = q
        self.n = len(q)
        self.norms = [-q[k][k] for k in range(self.n)]
        if any(a < 0 for a in self.norms):
            raise ValueError("diagonal entries of Q must be <= 0")
        self.limits = limits or SearchLimits()
        cap = self.limits.max_abs_coordinate
        self.bounds = [
            isqrt(a) if cap is None else min(isqrt(a), cap) for a in self.norms
        ]
        # exhausting a shrunken space proves nothing
        self.complete = cap is None or all(cap >= isqrt(a) for a in self.norms)
        self.symmetry = symmetry
        self.nodes = 0
        # when Q is nonsingular, any realization is linearly independent, so
        # dependent partial assignments may be cut off
        self.require_independent = _det(q) != 0

    def _candidates(
        self, assigned: list[Vector], used: int, k: int, blocks: tuple = ()
    ) -> list[Vector]:
        """All vectors for vertex k consistent with every assigned vertex.

        Depth-first over the used coordinates with interval pruning: the
        running inner product against each assigned vector must stay within
        reach of its target.  Both the reach window and the running product
        only move at coordinates where the assigned vector is nonzero, so
        the per-coordinate checks are restricted to those.  Coordinates in
        one block (a maximal run on which every assigned vector is
        constant) are interchangeable, so candidate values there are
        forced nonincreasing.
        """
        n, q = self.n, self.q
        a_k = self.norms[k]
        b_k = self.bounds[k]
        targets = [-q[k][j] for j in range(len(assigned))]
        width = used if self.symmetry else n
        m = len(assigned)
        reach = []
        for j in range(m):
            v = assigned[j]
            suffix = [0] * (width + 1)
            for c in range(width - 1, -1, -1):
                suffix[c] = suffix[c + 1] + abs(v[c]) * b_k
            reach.append(suffix)
        nz = [
            [(j, assigned[j][c], reach[j][c + 1]) for j in range(m) if assigned[j][c]]
            for c in range(width)
        ]
        same_block = [
            self.symmetry and c > 0 and c < len(blocks) and blocks[c] == blocks[c - 1]
            for c in range(width)
        ]
        values = tuple(_value_order(b_k))
        out: list[Vector] = []
        w = [0] * n
        dots = [0] * m

        def rec(c: int, partial_norm: int):
            if c == width:
                if any(dots[j] != targets[j] for j in range(m)):
                    return
                r = a_k - partial_norm
                if r < 0:
                    return
                if self.symmetry:
                    for tail in _square_tails(r, b_k):
                        if used + len(tail) <= n:
                            out.append(
                                tuple(w[:used])
                                + tail
                                + (0,) * (n - used - len(tail))
                            )
                elif r == 0:
                    out.append(tuple(w))
                return
            entries = nz[c]
            cap = w[c - 1] if same_block[c] else b_k
            for val in values:
                if val > cap:
                    continue
                pn = partial_norm + val * val
                if pn > a_k:
                    continue
                ok = True
                for j, vjc, window in entries:
                    d = targets[j] - dots[j] - val * vjc
                    if d > window or -d > window:
                        ok = False
                        break
                if not ok:
                    continue
                w[c] = val
                for j, vjc, _ in entries:
                    dots[j] += val * vjc
                rec(c + 1, pn)
                for j, vjc, _ in entries:
                    dots[j] -= val * vjc
                w[c] = 0

        rec(0, 0)
        return out

    EXHAUSTED = "exhausted"

    def run(self, on_solution, first_candidates=None) -> str:
        """DFS over all vertices; on_solution(vectors) -> True stops the search.

        Returns FOUND, EXHAUSTED (the whole space under this cap was
        searched) or BUDGET_EXHAUSTED (node budget ran out).
        """
        n = self.n
        assigned: list[Vector] = []
        found = [False]
        echelon_rows: list = []
        echelon_pivots: list = []

        def refine_blocks(blocks: tuple, w, used: int, new_used: int) -> tuple:
            out = []
            run = 0
            prev = None
            for c in range(new_used):
                cur = (blocks[c] if c < used else -1, w[c])
                if prev is None or cur != prev:
                    run += 1
                prev = cur
                out.append(run)
            return tuple(out)

        def place(k: int, used: int, blocks: tuple):
            if k == n:
                if on_solution(tuple(assigned)):
                    found[0] = True
                return
            if k == 0 and first_candidates is not None:
                cands = first_candidates
            else:
                cands = self._candidates(assigned, used, k, blocks)
            for w in cands:
                self.nodes += 1
                if self.nodes > self.limits.node_budget:
                    raise _BudgetExceeded
                if self.require_independent:
                    reduced = _echelon_reduce(echelon_rows, echelon_pivots, w)
                    if reduced is None:
                        continue  # dependent partial assignments cannot finish
                    echelon_rows.append(reduced[0])
                    echelon_pivots.append(reduced[1])
                new_used = used
                new_blocks = blocks
                if self.symmetry:
                    top = max((i + 1 for i, x in enumerate(w) if x != 0), default=0)
                    new_used = max(used, top)
                    new_blocks = refine_blocks(blocks, w, used, new_used)
                assigned.append(w)
                place(k + 1, new_used, new_blocks)
                assigned.pop()
                if self.require_independent:
                    echelon_rows.pop()
                    echelon_pivots.pop()
                if found[0]:
                    return

        try:
            place(0, 0, ())
        except _BudgetExceeded:
            return BUDGET_EXHAUSTED
        if found[0]:
            return FOUND
        return _Searcher.EXHAUSTED


def gram_of(cert: EmbeddingCertificate) -> list[list[int]]:
    """-M M^t for the certificate's coordinate matrix M (0x0 when empty)."""
    vecs = cert.vectors
    return [[-lattice.dot(v, w) for w in vecs] for v in vecs]


def search_gram(
    q,
    limits: SearchLimits | None = None,
    symmetry: bool = True,
    all_solutions: bool = False,
):
    """Low-level search on an arbitrary symmetric matrix Q.

    Returns (status, solutions, nodes); with all_solutions the search runs
    to exhaustion and collects every (symmetry-reduced) solution.
    """
    searcher = _Searcher(q, limits, symmetry=symmetry)
    solutions: list[tuple[Vector, ...]] = []

    def on_solution(vectors):
        solutions.append(vectors)
        return not all_solutions

    status = searcher.run(on_solution)
    if status == _Searcher.EXHAUSTED:
        status = FOUND if solutions else (
            NOT_EMBEDDABLE if searcher.complete else BUDGET_EXHAUSTED
        )
    elif solutions:
        status = FOUND
    return status, solutions, searcher.nodes


def _search_order(g: PlumbingGraph) -> list[int]:
    """Vertex processing order: center first, then legs longest first.

    Long legs constrain themselves quickly along their chains, so placing
    them early prunes the tree; short legs are cheap at any depth.  The
    returned certificate is reindexed back to canonical vertex order.
    """
    if not g.is_star:
        return list(range(g.n))
    order = [0]
    pos = 1
    blocks = []
    for leg in g.legs:
        blocks.append(list(range(pos, pos + len(leg))))
        pos += len(leg)
    for block in sorted(blocks, key=len, reverse=True):
        order.extend(block)
    return order


def find_embedding(
    g: PlumbingGraph,
    limits: SearchLimits | None = None,
    symmetry: bool = True,
    parallel: bool = False,
) -> EmbedResult:
    """Search for an embedding of (Z^n, Q_g) into (Z^n, -Id).

    The coordinate cap deepens iteratively: certificates of the
    admissible graphs only use unit coefficients, so the cap-1 pass finds
    them quickly, while a NotFound verdict still requires exhausting the
    complete space under the exact bound and is therefore a proof.
    BUDGET_EXHAUSTED is inconclusive.
    """
    if parallel:
        return _find_embedding_parallel(g, limits)
    limits = limits or SearchLimits()
    q = intersection_matrix(g)
    order = _search_order(g)
    permuted = [[q[i][j] for j in order] for i in order]
    full_cap = max((isqrt(-permuted[k][k]) for k in range(g.n)), default=1)
    if limits.max_abs_coordinate is not None:
        full_cap = min(full_cap, limits.max_abs_coordinate)
    total_nodes = 0
    for cap in range(1, max(full_cap, 1) + 1):
        pass_limits = SearchLimits(
            max_abs_coordinate=cap,
            node_budget=max(limits.node_budget - total_nodes, 1),
            deterministic=limits.deterministic,
        )
        searcher = _Searcher(permuted, pass_limits, symmetry=symmetry)
        hits: list[tuple[Vector, ...]] = []

        def on_solution(vectors):
            hits.append(vectors)
            return True

        status = searcher.run(on_solution)
        total_nodes += searcher.nodes
        if status == FOUND:
            vectors: list = [None] * g.n
            for slot, vertex in enumerate(order):
                vectors[vertex] = hits[0][slot]
            cert = EmbeddingCertificate(g, tuple(vectors))
            assert gram_of(cert) == q  # soundness check before returning
            return EmbedResult(FOUND, cert, total_nodes)
        if status == BUDGET_EXHAUSTED:
            return EmbedResult(BUDGET_EXHAUSTED, None, total_nodes)
    complete = (
        limits.max_abs_coordinate is None
        or limits.max_abs_coordinate >= max((isqrt(-q[k][k]) for k in range(g.n)), default=1)
    )
    return EmbedResult(NOT_EMBEDDABLE if complete else BUDGET_EXHAUSTED, None, total_nodes)


def _parallel_worker(args):
    text, cap, budget, first = args
    g = PlumbingGraph.from_text(text)
    q = intersection_matrix(g)
    limits = SearchLimits(max_abs_coordinate=cap, node_budget=budget)
    searcher = _Searcher(q, limits)
    hits: list[tuple[Vector, ...]] = []

    def on_solution(vectors):
        hits.append(vectors)
        return True

    status = searcher.run(on_solution, first_candidates=[first])
    return status, (hits[0] if hits else None), searcher.nodes


def _find_embedding_parallel(g: PlumbingGraph, limits: SearchLimits | None) -> EmbedResult:
    """Split the root candidate list across a process pool.

    The verdict is schedule independent; the certificate returned need not
    match the sequential one, which the result flags via deterministic=False.
    """
    limits = limits or SearchLimits()
    q = intersection_matrix(g)
    probe = _Searcher(q, limits)
    roots = probe._candidates([], 0, 0)
    if not roots:
        return EmbedResult(NOT_EMBEDDABLE if probe.complete else BUDGET_EXHAUSTED, None, 0, True)
    text = g.to_text()
    jobs = [(text, limits.max_abs_coordinate, limits.node_budget, w) for w in roots]
    nodes = 0
    statuses = []
    cert = None
    with concurrent.futures.ProcessPoolExecutor() as pool:
        futures = [pool.submit(_parallel_worker, job) for job in jobs]
        try:
            for fut in concurrent.futures.as_completed(futures):
                status, vectors, worker_nodes = fut.result()
                nodes += worker_nodes
                statuses.append(status)
                if status == FOUND and cert is None:
                    cert = EmbeddingCertificate(g, vectors)
                    break
        finally:
            for fut in futures:
                fut.cancel()
    if cert is not None:
        assert gram_of(cert) == q
        return EmbedResult(FOUND, cert, nodes, deterministic=False)
    if len(statuses) == len(jobs) and all(s == NOT_EMBEDDABLE for s in statuses):
        return EmbedResult(NOT_EMBEDDABLE, None, nodes, deterministic=False)
    return EmbedResult(BUDGET_EXHAUSTED, None, nodes, deterministic=False)


def enumerate_embeddings(g: PlumbingGraph, limits: SearchLimits | None = None):
    """All embeddings up to the symmetry-breaking quotient (diagnostic).

    Distinct O(n;Z)-classes are found at least once each; callers dedupe
    with lattice.canonical_vectors.
    """
    q = intersection_matrix(g)
    status, solutions, nodes = search_gram(q, limits, all_solutions=True)
    if status == BUDGET_EXHAUSTED:
        raise RuntimeError("embedding enumeration ran out of budget")
    return solutions


def verify_certificate(g: PlumbingGraph, cert: EmbeddingCertificate | tuple) -> bool:
    """Check Gram fidelity of a certificate against the graph.

    Accepts either a certificate in graph vertex order or a bare vector
    family in any order realizing the same weighted tree (the roles are
    then rederived and matched up to leg reordering / chain reversal).
    """
    vectors = cert.vectors if isinstance(cert, EmbeddingCertificate) else tuple(cert)
    if len(vectors) != g.n or any(len(v) != g.n for v in vectors):
        raise ValueError("certificate dimensions do not match the graph")
    q = intersection_matrix(g)
    direct = [[-lattice.dot(v, w) for w in vectors] for v in vectors]
    if direct == q:
        return True
    p = lattice.ConfiguredSet.from_vectors(vectors)
    if not lattice.is_standard(p):
        return False
    realized = lattice.to_graph(p)
    if g.is_star != realized.is_star:
        return False
    if g.is_star:
        return realized.center == g.center and sorted(realized.legs) == sorted(g.legs)
    chain = realized.legs[0]
    return chain in (g.legs[0], g.legs[0][::-1])
