"""String-level blow-down calculus: the arithmetic shadow of the
complementary-leg collapse and a generic tree blow-down utility.

Attaching a (-1)-framed handle across the roots of two complementary legs
and blowing down repeatedly eats both legs in k + l steps: at each stage
exactly one of the two head entries equals 2; that head is dropped and
the other head decreases by one.  The pair fully collapses exactly when
the inputs were complementary, which gives an independent executable
check of the point rule.  A graph whose legs 2 and 3 are complementary
thereby reduces to the linear string (a_{n1,1}, ..., a_{1,1}, a_0 - 1),
which must land in the linear candidate lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from plumblat import contfrac, families
from plumblat.plumbing import PlumbingGraph, quantity_I


@dataclass(frozen=True)
class CollapseStep:
    side: str  # 'L' or 'R': which string lost its head
    before: tuple[tuple[int, ...], tuple[int, ...]]
    after: tuple[tuple[int, ...], tuple[int, ...]]

    def __str__(self):
        return "%s : (%s),(%s) -> (%s),(%s)" % (
            self.side,
            ",".join(map(str, self.before[0])),
            ",".join(map(str, self.before[1])),
            ",".join(map(str, self.after[0])),
            ",".join(map(str, self.after[1])),
        )


@dataclass(frozen=True)
class CollapseTrace:
    steps: tuple[CollapseStep, ...]
    terminal: tuple[tuple[int, ...], tuple[int, ...]]
    collapsed: bool

    def report_lines(self) -> list[str]:
        lines = [str(s) for s in self.steps]
        if self.collapsed:
            lines.append("collapsed in %d steps" % len(self.steps))
        else:
            lines.append(
                "stuck at (%s),(%s)"
                % (",".join(map(str, self.terminal[0])), ",".join(map(str, self.terminal[1])))
            )
        return lines


def complementary_collapse(s1, s2) -> CollapseTrace:
    """Iterate the two blow-down reduction rules until collapse or a stuck
    state.

    Complementary inputs collapse fully in exactly len(s1) + len(s2)
    steps; anything else gets stuck.  The terminal ((2),(2)) pair reduces
    s1 first (fixed convention; the choice only affects the trace).
    """
    a = list(contfrac.check_string(s1))
    b = list(contfrac.check_string(s2))
    steps = []

    def record(side, after_a, after_b):
        steps.append(
            CollapseStep(side, (tuple(a), tuple(b)), (tuple(after_a), tuple(after_b)))
        )

    while True:
        if not a and not b:
            return CollapseTrace(tuple(steps), ((), ()), True)
        if a and b:
            h1, h2 = a[0], b[0]
            if h1 == 2 and h2 > 2:
                na, nb = a[1:], [h2 - 1] + b[1:]
            elif h2 == 2 and h1 > 2:
                na, nb = [h1 - 1] + a[1:], b[1:]
            elif h1 == 2 and h2 == 2 and len(a) == 1 and len(b) == 1:
                na, nb = [], [1]
            else:
                return CollapseTrace(tuple(steps), (tuple(a), tuple(b)), False)
            record("L" if len(na) < len(a) else "R", na, nb)
            a, b = na, nb
            continue
        # one side exhausted: only the residual framing-1 circle blows down
        if not a and b == [1]:
            record("R", [], [])
            a, b = [], []
            continue
        if not b and a == [1]:
            record("L", [], [])
            a, b = [], []
            continue
        return CollapseTrace(tuple(steps), (tuple(a), tuple(b)), False)


@dataclass(frozen=True)
class RibbonReduction:
    graph: PlumbingGraph
    lens_string: tuple[int, ...]
    lens_I: int
    in_lisca_list: bool
    matches: tuple
    link_components: int
    lens_components: int

    def report_lines(self) -> list[str]:
        lines = [
            "graph = %s" % self.graph.to_text(),
            "lens_string = %s" % ",".join(map(str, self.lens_string)),
            "lens_I = %d" % self.lens_I,
            "in_linear_lists = %s" % ("yes" if self.in_lisca_list else "no"),
        ]
        for row, params in self.matches:
            lines.append("matches = %s %s" % (row, params))
        lines.append("link_components = %d" % self.link_components)
        lines.extend(self._euler_lines())
        return lines

    def _euler_lines(self) -> list[str]:
        """Euler-characteristic bookkeeping of the ribbon move, split by the
        component count of the Montesinos link."""
        two_bridge = "knot" if self.lens_components == 1 else "2-component link"
        lines = [
            "ribbon_move = splits off an unknot and the 2-bridge %s of the lens string"
            % two_bridge
        ]
        if self.link_components == 1:
            lines.append("surface = ribbon disc (chi = 1); the link is a ribbon knot")
        elif self.link_components == 2:
            lines.append("surface = disc + Moebius band (chi = 1)")
        else:
            lines.append(
                "surface = disc + annulus, or disc + two Moebius bands, "
                "or two discs + punctured Klein bottle (chi = 1)"
            )
        return lines


def ribbon_reduction_cl(g: PlumbingGraph) -> RibbonReduction:
    """Collapse the complementary legs 2 and 3 of g to the linear string
    (a_{n1,1}, ..., a_{1,1}, a_0 - 1) and test it against the linear lists."""
    if not g.is_star:
        raise ValueError("ribbon reduction takes a three-legged graph")
    if not contfrac.is_complementary(g.legs[1], g.legs[2]):
        raise ValueError(
            "legs 2 and 3 of %s are not complementary" % g.to_text()
        )
    lens = tuple(reversed(g.legs[0])) + (g.center - 1,)
    lens_I = sum(a - 3 for a in lens)
    matches = tuple(families.is_lisca_string(lens)) if lens_I in (-3, -2, -1) else ()
    lens_p = contfrac.cf_eval(lens)
    return RibbonReduction(
        graph=g,
        lens_string=lens,
        lens_I=lens_I,
        in_lisca_list=bool(matches),
        matches=matches,
        link_components=families.link_component_count(g),
        lens_components=1 if lens_p.numerator % 2 == 1 else 2,
    )


def blow_down(g: PlumbingGraph, vertex: int) -> PlumbingGraph:
    """Blow down a weight -1 vertex of valence <= 2 (canonical vertex order).

    The vertex disappears, each neighbor's weight increases by one (a
    drops by one), and valence-2 neighbors become adjacent.  Valence-3
    blow-downs depend on link data beyond the graph and are rejected.
    """
    n = g.n
    if not 0 <= vertex < n:
        raise ValueError("vertex %d out of range" % vertex)
    w = list(g.weights())
    if w[vertex] != 1:
        raise ValueError("vertex %d has weight -%d, not -1" % (vertex, w[vertex]))
    adj = {i: set() for i in range(n)}
    for i, j in g.edges():
        adj[i].add(j)
        adj[j].add(i)
    neighbors = sorted(adj[vertex])
    if len(neighbors) > 2:
        raise ValueError("valence-3 blow-downs are not defined on the tree alone")
    if len(neighbors) == 2:
        u, v = neighbors
        if v in adj[u]:
            raise ValueError("neighbors of the blown-down vertex must not be adjacent")
    for u in neighbors:
        w[u] -= 1
    edges = {frozenset(e) for e in g.edges() if vertex not in e}
    if len(neighbors) == 2:
        edges.add(frozenset(neighbors))
    keep = [i for i in range(n) if i != vertex]
    relabel = {old: new for new, old in enumerate(keep)}
    return _tree_to_graph(
        [w[i] for i in keep],
        [(relabel[a], relabel[b]) for e in edges for a, b in [tuple(sorted(e))]],
    )


def _tree_to_graph(weights: list[int], edges: list[tuple[int, int]]) -> PlumbingGraph:
    """Rebuild a PlumbingGraph from weighted tree data (path or star3)."""
    n = len(weights)
    if n == 0:
        return PlumbingGraph.linear(())
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    if len(edges) != n - 1:
        raise ValueError("blow-down result is not a tree")
    deg3 = [i for i in range(n) if len(adj[i]) >= 3]
    if any(len(adj[i]) > 3 for i in range(n)) or len(deg3) > 1:
        raise ValueError("result is not a linear or three-legged tree")

    def walk(start, parent):
        path = [start]
        prev, cur = parent, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    if deg3:
        c = deg3[0]
        legs = [tuple(weights[i] for i in walk(s, c)) for s in sorted(adj[c])]
        return PlumbingGraph.star(weights[c], *legs)
    end = min(i for i in range(n) if len(adj[i]) <= 1)
    chain = tuple(weights[i] for i in walk(end, -1))
    return PlumbingGraph.linear(chain)
