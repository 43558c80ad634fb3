"""Weighted plumbing trees: intersection forms, determinants, Seifert data.

A graph is either *linear* (a chain) or *star3* (a central vertex with
exactly three legs).  Weights are stored as the positive integers a with
vertex weight -a; the canonical vertex order everywhere is central vertex
first (star3), then each leg root to leaf.  Blow-down intermediates may
carry a = 1 or a = 0, so construction only rejects negative a; the
good/standard/wp predicates impose their own bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from plumblat import contfrac


@dataclass(frozen=True)
class SeifertInvariants:
    """Unnormalized Seifert invariants (b; (alpha_1, beta_1), ..., (alpha_r, beta_r))."""

    b: int
    pairs: tuple[tuple[int, int], ...]

    def __str__(self):
        inside = ",".join("(%d,%d)" % p for p in self.pairs)
        return "(%d; %s)" % (self.b, inside)


@dataclass(frozen=True)
class PlumbingGraph:
    """A linear or three-legged star-shaped weighted tree.

    ``center`` is None for linear graphs; ``legs`` holds one chain for
    linear graphs and exactly three root-to-leaf strings for star3.
    """

    center: int | None
    legs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        legs = tuple(tuple(leg) for leg in self.legs)
        object.__setattr__(self, "legs", legs)
        if self.center is None:
            if len(legs) != 1:
                raise ValueError("linear graph takes exactly one chain")
        else:
            if len(legs) != 3:
                raise ValueError("star3 graph takes exactly three legs")
            if any(len(leg) == 0 for leg in legs):
                raise ValueError("star3 legs must be nonempty")
            if self.center < 0:
                raise ValueError("weights must be >= 0, got %r" % (self.center,))
        for leg in legs:
            for a in leg:
                if not isinstance(a, int) or a < 0:
                    raise ValueError("weights must be integers >= 0, got %r" % (a,))

    @classmethod
    def linear(cls, chain) -> "PlumbingGraph":
        return cls(None, (tuple(chain),))

    @classmethod
    def star(cls, center: int, leg1, leg2, leg3) -> "PlumbingGraph":
        return cls(center, (tuple(leg1), tuple(leg2), tuple(leg3)))

    @property
    def is_star(self) -> bool:
        return self.center is not None

    @property
    def n(self) -> int:
        return sum(len(leg) for leg in self.legs) + (1 if self.is_star else 0)

    def weights(self) -> tuple[int, ...]:
        """Positive weights a_i in canonical vertex order."""
        if self.is_star:
            return (self.center,) + tuple(a for leg in self.legs for a in leg)
        return self.legs[0]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Tree edges as index pairs in canonical vertex order."""
        out = []
        if self.is_star:
            pos = 1
            for leg in self.legs:
                out.append((0, pos))
                for i in range(len(leg) - 1):
                    out.append((pos + i, pos + i + 1))
                pos += len(leg)
        else:
            chain = self.legs[0]
            out.extend((i, i + 1) for i in range(len(chain) - 1))
        return tuple(out)

    def reordered_legs(self) -> "PlumbingGraph":
        """The same graph with legs in a canonical (sorted) order."""
        if not self.is_star:
            chain = self.legs[0]
            return PlumbingGraph.linear(min(chain, chain[::-1]))
        return PlumbingGraph.star(self.center, *sorted(self.legs))

    def to_text(self) -> str:
        if self.is_star:
            return "%d; %s" % (
                self.center,
                "; ".join(",".join(str(a) for a in leg) for leg in self.legs),
            )
        return ",".join(str(a) for a in self.legs[0])

    @classmethod
    def from_text(cls, text: str) -> "PlumbingGraph":
        """Parse the canonical text format.

        star3: 'a0; a11,a12,...; a21,...; a31,...'    linear: 'a1,a2,...'
        Whitespace around separators is ignored.
        """
        text = text.strip()
        if not text:
            raise ValueError("empty graph string")
        try:
            if ";" in text:
                parts = [p.strip() for p in text.split(";")]
                if len(parts) != 4:
                    raise ValueError
                center = int(parts[0])
                legs = [tuple(int(x) for x in p.split(",")) for p in parts[1:]]
                return cls.star(center, *legs)
            return cls.linear(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise ValueError("cannot parse %r as a plumbing graph" % (text,))

    def __str__(self):
        return self.to_text()


def intersection_matrix(g: PlumbingGraph) -> list[list[int]]:
    """Q with q_ii = -a_i and q_ij = 1 exactly on tree edges."""
    n = g.n
    w = g.weights()
    q = [[0] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = -w[i]
    for i, j in g.edges():
        q[i][j] = q[j][i] = 1
    return q


def quantity_I(g: PlumbingGraph) -> int:
    """Sum of (a_i - 3) over all vertices."""
    return sum(a - 3 for a in g.weights())


def is_in_wp(g: PlumbingGraph) -> bool:
    """Membership in the family of three-legged trees with central weight
    <= -3, other weights <= -2 and I < -1."""
    if not g.is_star:
        return False
    if g.center < 3:
        return False
    if any(a < 2 for leg in g.legs for a in leg):
        return False
    return quantity_I(g) < -1


def det_bareiss(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
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


def det_tree(g: PlumbingGraph) -> int:
    """Determinant of Q via the rooted-tree cofactor recursion.

    For a vertex v with children c: det(subtree v) =
    q_vv * prod det(c) - sum over c of [prod of det(c') for c' != c] *
    det(c minus its root).  Linear time in the vertex count.
    """
    n = g.n
    if n == 0:
        return 1
    w = g.weights()
    adj = [[] for _ in range(n)]
    for i, j in g.edges():
        adj[i].append(j)
        adj[j].append(i)

    def sub(v: int, parent: int) -> tuple[int, int]:
        # returns (det of subtree at v, det of subtree at v minus v)
        f_children = []
        g_children = []
        for c in adj[v]:
            if c == parent:
                continue
            fc, gc = sub(c, v)
            f_children.append(fc)
            g_children.append(gc)
        prod_all = 1
        for fc in f_children:
            prod_all *= fc
        total = -w[v] * prod_all
        for idx, gc in enumerate(g_children):
            rest = 1
            for jdx, fc in enumerate(f_children):
                if jdx != idx:
                    rest *= fc
            total -= gc * rest
        return total, prod_all

    return sub(0, -1)[0]


def determinant(g: PlumbingGraph) -> int:
    """Exact determinant of the intersection matrix."""
    return det_bareiss(intersection_matrix(g))


def is_negative_definite(g: PlumbingGraph) -> bool:
    """Sylvester test: (-1)^k det(leading k x k minor) > 0 for all k, exactly."""
    q = intersection_matrix(g)
    for k in range(1, g.n + 1):
        minor = [row[:k] for row in q[:k]]
        if det_bareiss(minor) * (-1) ** k <= 0:
            return False
    return True


def seifert_invariants(g: PlumbingGraph) -> SeifertInvariants:
    """Read (b; (alpha_i, beta_i)) off a star-shaped graph.

    b is the central weight -a_0; each leg string root to leaf expands
    alpha_i/beta_i as a negative continued fraction.
    """
    if not g.is_star:
        raise ValueError("Seifert invariants require a star-shaped graph")
    pairs = []
    for leg in g.legs:
        frac = contfrac.cf_eval(leg)
        pairs.append((frac.numerator, frac.denominator))
    return SeifertInvariants(-g.center, tuple(pairs))


def h1_order(g: PlumbingGraph) -> int:
    """|alpha_1 alpha_2 alpha_3 (sum beta_i/alpha_i + b)|, evaluated exactly.

    Equals |det Q| for star-shaped graphs.
    """
    inv = seifert_invariants(g)
    total = Fraction(inv.b)
    prod = 1
    for alpha, beta in inv.pairs:
        total += Fraction(beta, alpha)
        prod *= alpha
    value = total * prod
    assert value.denominator == 1
    return abs(value.numerator)
