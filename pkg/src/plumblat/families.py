"""Generators and classifiers for the candidate families.

Three sources of candidates:

* ``thm_cl``   -- three-legged graphs with two complementary legs; the
  leg-1-plus-center string (read leaf to root, center last) runs through
  fifteen printed rows grouped by I in {-4, -3, -2}.
* ``thm_ncl``  -- three-legged graphs without complementary legs, five
  parameterized families (a)-(e), all with I = -2.  Their shapes are
  transcribed from figure data, so every instance is validated against
  the embedding search; a non-embeddable instance would be a
  transcription bug by definition.
* ``lisca_linear`` -- the linear strings with I in {-3, -2, -1} that the
  complementary-leg reduction must land in.

Strings named b_1..b_k are arbitrary with entries >= 2; c_1..c_l always
denotes the point-rule complement of b.  The notation 2^[t] means t
copies of 2 (empty when t = 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from plumblat import contfrac
from plumblat.contfrac import all_complementary_pairs, point_rule_complement
from plumblat.plumbing import PlumbingGraph, intersection_matrix


def _two(t: int) -> tuple[int, ...]:
    return (2,) * t


def _rev(b) -> tuple[int, ...]:
    return tuple(reversed(b))


# ---------------------------------------------------------------------------
# thm_cl rows: the leg-1-plus-center strings (a_{n1,1}, ..., a_{1,1}, a_0)


def _cl_string(row: str, params: dict) -> tuple[int, ...]:
    s = params.get("s", 0)
    t = params.get("t", 0)
    if row in ("-4.1", "-3.6"):
        b = tuple(params["b"])
        c = list(point_rule_complement(b))
        if row == "-4.1":
            c[-1] += 1
            return _rev(b) + (2,) + tuple(c)
        bb = list(_rev(b))
        bb[-1] += 1  # b_1 + 1
        c[0] += 1
        c[-1] += 1
        return tuple(bb) + (2, 2) + tuple(c)
    if row == "-3.1":
        return _two(t) + (3, 2 + s, 2 + t, 3) + _two(s - 1) + (3,)
    if row == "-3.2":
        return _two(t) + (3, 2, 2 + t, 4)
    if row == "-3.3":
        return _two(t) + (3 + s, 2, 2 + t, 3) + _two(s - 1) + (3,)
    if row == "-3.4":
        return _two(s) + (3, 2 + t, 2, 3 + s) + _two(t - 1) + (3,)
    if row == "-3.5":
        return _two(s) + (3, 2, 2, 4 + s)
    if row == "-2.1":
        return (t + 2, s + 2, 3) + _two(t) + (4,) + _two(s - 1) + (3,)
    if row == "-2.2":
        return (t + 2, 2, 3) + _two(t) + (5,)
    if row == "-2.3":
        return _two(s) + (4,) + _two(t) + (3, s + 2, t + 3)
    if row == "-2.4":
        return (t + 2, 2, 3 + s) + _two(t) + (4,) + _two(s - 1) + (3,)
    if row == "-2.5":
        return _two(s) + (4,) + _two(t) + (3 + s, 2, t + 3)
    if row == "-2.6":
        return (t + 3, 2, 3 + s, 3) + _two(t) + (3,) + _two(s - 1) + (3,)
    if row == "-2.7":
        return (t + 3, 2, 3, 3) + _two(t) + (4,)
    if row == "-2.8":
        return _two(s) + (3,) + _two(t) + (3, 3 + s, 2, t + 4)
    raise ValueError("unknown thm_cl row %r" % (row,))


# (row, I, needs b, (s range start, t range start) or None)
_CL_ROWS: dict[str, tuple[int, tuple[int, int] | None]] = {
    "-4.1": (-4, None),
    "-3.1": (-3, (1, 0)),
    "-3.2": (-3, (0, 0)),  # t only
    "-3.3": (-3, (1, 0)),
    "-3.4": (-3, (0, 1)),
    "-3.5": (-3, (0, 0)),  # s only
    "-3.6": (-3, None),
    "-2.1": (-2, (1, 0)),
    "-2.2": (-2, (0, 0)),  # t only
    "-2.3": (-2, (0, 0)),
    "-2.4": (-2, (1, 0)),
    "-2.5": (-2, (0, 0)),
    "-2.6": (-2, (1, 0)),
    "-2.7": (-2, (0, 0)),  # t only
    "-2.8": (-2, (0, 0)),
}
_CL_SINGLE_PARAM = {"-3.2": "t", "-3.5": "s", "-2.2": "t", "-2.7": "t"}


def _cl_param_grid(row: str, length: int):
    """All parameter dicts whose row string has the given length."""
    if row in ("-4.1", "-3.6"):
        extra = 1 if row == "-4.1" else 2
        total = length - extra  # k + l
        for b, c in all_complementary_pairs(total):
            if len(b) + len(c) == total:
                yield {"b": b}
        return
    smin, tmin = _CL_ROWS[row][1]
    single = _CL_SINGLE_PARAM.get(row)
    if single is not None:
        vmin = smin if single == "s" else tmin
        v = length - len(_cl_string(row, {single: vmin})) + vmin
        if v >= vmin and len(_cl_string(row, {single: v})) == length:
            yield {single: v}
        return
    # every unit of s or t adds one vertex
    base_len = len(_cl_string(row, {"s": smin, "t": tmin}))
    total = length - base_len + smin + tmin  # s + t
    for s in range(smin, total - tmin + 1):
        params = {"s": s, "t": total - s}
        if len(_cl_string(row, params)) == length:
            yield params


def _match_cl_string(string: tuple[int, ...]):
    """All (row, params) pairs whose printed string equals the argument."""
    out = []
    for row in _CL_ROWS:
        for params in _cl_param_grid(row, len(string)):
            if _cl_string(row, params) == string:
                out.append((row, params))
    return out


# ---------------------------------------------------------------------------
# linear standard strings with I in {-3, -2, -1}


def _lisca_string(row: str, params: dict) -> tuple[int, ...]:
    s = params.get("s", 0)
    t = params.get("t", 0)
    if row in ("I.1", "II.3"):
        b = tuple(params["b"])
        c = list(point_rule_complement(b))
        if row == "I.1":
            return _rev(b) + (2,) + tuple(c)
        bb = list(_rev(b))
        bb[-1] += 1
        c[0] += 1
        return tuple(bb) + (2, 2) + tuple(c)
    if row == "II.1":
        return _two(t) + (3, 2 + s, 2 + t, 3) + _two(s)
    if row == "II.2":
        return _two(t) + (3 + s, 2, 2 + t, 3) + _two(s)
    if row == "III.1":
        return (t + 2, s + 2, 3) + _two(t) + (4,) + _two(s)
    if row == "III.2":
        return (t + 2, 2, 3 + s) + _two(t) + (4,) + _two(s)
    if row == "III.3":
        return (t + 3, 2, 3 + s, 3) + _two(t) + (3,) + _two(s)
    raise ValueError("unknown linear row %r" % (row,))


_LISCA_ROWS = {
    "I.1": -3,
    "II.1": -2,
    "II.2": -2,
    "II.3": -2,
    "III.1": -1,
    "III.2": -1,
    "III.3": -1,
}


def _match_lisca_one_way(string: tuple[int, ...]):
    length = len(string)
    out = []
    for row, _ in _LISCA_ROWS.items():
        if row in ("I.1", "II.3"):
            extra = 1 if row == "I.1" else 2
            for b, c in all_complementary_pairs(length - extra):
                if len(b) + len(c) == length - extra and _lisca_string(row, {"b": b}) == string:
                    out.append((row, {"b": b}))
        else:
            base = len(_lisca_string(row, {"s": 0, "t": 0}))
            free = length - base
            if free < 0:
                continue
            for s in range(free + 1):
                params = {"s": s, "t": free - s}
                if _lisca_string(row, params) == string:
                    out.append((row, params))
    return out


def is_lisca_string(string) -> list[tuple[str, dict]]:
    """Rows of the linear I in {-3,-2,-1} lists matching the string or its
    reversal (the I = -2 and I = -1 lists are stated up to reversal)."""
    string = tuple(string)
    matches = _match_lisca_one_way(string)
    seen = {(row, tuple(sorted((k, v) for k, v in p.items()))) for row, p in matches}
    for row, p in _match_lisca_one_way(tuple(reversed(string))):
        key = (row, tuple(sorted((k, v) for k, v in p.items())))
        if key not in seen:
            seen.add(key)
            matches.append((row, p))
    return matches


def lisca_strings(max_len: int):
    """All linear standard strings with I in {-3,-2,-1} of length <= max_len,
    deduplicated up to reversal."""
    seen = set()
    out = []
    for row, _ in _LISCA_ROWS.items():
        if row in ("I.1", "II.3"):
            extra = 1 if row == "I.1" else 2
            for b, c in all_complementary_pairs(max_len - extra):
                s = _lisca_string(row, {"b": b})
                key = min(s, s[::-1])
                if key not in seen:
                    seen.add(key)
                    out.append((row, {"b": b}, s))
        else:
            base = len(_lisca_string(row, {"s": 0, "t": 0}))
            for total in range(0, max_len - base + 1):
                for s in range(total + 1):
                    params = {"s": s, "t": total - s}
                    st = _lisca_string(row, params)
                    key = min(st, st[::-1])
                    if key not in seen:
                        seen.add(key)
                        out.append((row, params, st))
    return out


# ---------------------------------------------------------------------------
# thm_ncl families (a)-(e): filled in by _NCL_FAMILIES below


def _ncl_graph(row: str, params: dict) -> PlumbingGraph:
    """Graphs of the no-complementary-legs families.

    Derived by reversing the contraction analysis down to the base
    instances and validated exhaustively against the embedding search
    (every instance must embed; at small n the list must be complete).
    b is arbitrary with entries >= 2, c its point-rule complement.  The
    source figure's exact edge layout is not text-recoverable, so the
    letter assignment follows the printed parameter ranges.
    """
    s = params.get("s", 0)
    t = params.get("t", 0)
    b = tuple(params.get("b", ()))
    if row in ("a", "b", "c", "d"):
        if not b:
            raise ValueError("family (%s) needs a b-string" % row)
        contfrac.check_string(b)
        c = point_rule_complement(b)
    if row == "a":
        if s < 1 or t < 0:
            raise ValueError("family (a) needs s >= 1 and t >= 0")
        leg2 = (2 + t, 3) + _two(s - 1) + (c[0] + 1,) + c[1:]
        return PlumbingGraph.star(2 + s, (3,) + _two(t), leg2, b)
    if row == "b":
        if s < 1 or t < 1:
            raise ValueError("family (b) needs s >= 1 and t >= 1")
        leg2 = (2, 2 + t, 3) + _two(s - 1) + (c[0] + 1,) + c[1:]
        return PlumbingGraph.star(3 + s, _two(t), leg2, b)
    if row == "c":
        if t < 1:
            raise ValueError("family (c) needs t >= 1")
        leg2 = (2, 2 + t, c[0] + 2) + c[1:]
        return PlumbingGraph.star(3, _two(t), leg2, b)
    if row == "d":
        if s < 1 or t < 0:
            raise ValueError("family (d) needs s >= 1 and t >= 0")
        leg1 = (2, 3 + s) + _two(t) + (c[0] + 1,) + c[1:]
        return PlumbingGraph.star(3 + t, leg1, (3,) + _two(s), b)
    if row == "e":
        r = params.get("r", 0)
        if s < 1 or t < 1 or r < 0:
            raise ValueError("family (e) needs r >= 0 and s, t >= 1")
        leg = (2 + t, 3 + r, 3 + s) + _two(t)
        return PlumbingGraph.star(3, _two(r + 1), _two(s), leg)
    raise ValueError("unknown thm_ncl row %r" % (row,))


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class FamilyDescriptor:
    """A tagged member of one of the candidate lists."""

    source: str  # 'thm_cl' | 'thm_ncl' | 'lisca_linear'
    row: str
    I_value: int
    params: tuple[tuple[str, object], ...]  # sorted (name, value) pairs

    @classmethod
    def make(cls, source: str, row: str, I_value: int, params: dict) -> "FamilyDescriptor":
        norm = []
        for key in sorted(params):
            val = params[key]
            if isinstance(val, (list, tuple)):
                val = tuple(val)
            norm.append((key, val))
        return cls(source, row, I_value, tuple(norm))

    def param_dict(self) -> dict:
        return dict(self.params)

    def serialize(self) -> str:
        parts = []
        for key, val in self.params:
            if isinstance(val, tuple):
                parts.append("%s=%s" % (key, ".".join(str(x) for x in val)))
            else:
                parts.append("%s=%s" % (key, val))
        return "%s:%s:%d:%s" % (self.source, self.row, self.I_value, ",".join(parts))

    @classmethod
    def parse(cls, text: str) -> "FamilyDescriptor":
        pieces = text.split(":")
        if len(pieces) != 4:
            raise ValueError("cannot parse descriptor %r" % (text,))
        source, row, ival, rest = pieces
        params: dict = {}
        if rest:
            for item in rest.split(","):
                key, _, val = item.partition("=")
                if "." in val:
                    params[key] = tuple(int(x) for x in val.split("."))
                else:
                    params[key] = int(val)
        for key in ("b", "legs"):
            if key in params and isinstance(params[key], int):
                params[key] = (params[key],)
        return cls.make(source, row, int(ival), params)

    def __str__(self):
        return self.serialize()


def generate(d: FamilyDescriptor):
    """The plumbing graph (thm_cl / thm_ncl) or linear string (lisca_linear)."""
    params = d.param_dict()
    if d.source == "thm_cl":
        legs = tuple(params.pop("legs"))
        string = _cl_string(d.row, params)
        if _CL_ROWS[d.row][0] != d.I_value:
            raise ValueError("descriptor I does not match its row")
        _validate_cl_params(d.row, params)
        return PlumbingGraph.star(
            string[-1],
            tuple(reversed(string[:-1])),
            legs,
            point_rule_complement(legs),
        )
    if d.source == "thm_ncl":
        if d.I_value != -2:
            raise ValueError("thm_ncl descriptors always have I = -2")
        return _ncl_graph(d.row, params)
    if d.source == "lisca_linear":
        if _LISCA_ROWS[d.row] != d.I_value:
            raise ValueError("descriptor I does not match its row")
        return _lisca_string(d.row, params)
    raise ValueError("unknown source %r" % (d.source,))


def _validate_cl_params(row: str, params: dict) -> None:
    ranges = _CL_ROWS[row][1]
    if ranges is None:
        b = params.get("b")
        if not b:
            raise ValueError("row %s needs a b-string" % row)
        contfrac.check_string(b)
        return
    smin, tmin = ranges
    single = _CL_SINGLE_PARAM.get(row)
    if single:
        if params.get(single, -1) < (smin if single == "s" else tmin):
            raise ValueError("row %s: %s out of range" % (row, single))
        return
    if params.get("s", -1) < smin or params.get("t", -1) < tmin:
        raise ValueError("row %s: parameters out of range" % row)


def classify(g: PlumbingGraph) -> list[FamilyDescriptor]:
    """Every descriptor whose generated graph is isomorphic to g
    (up to leg reordering and the leaf/root reading of leg 1)."""
    if not g.is_star:
        raise ValueError("classify takes a three-legged graph")
    found: list[FamilyDescriptor] = []
    seen: set[str] = set()

    def emit(d: FamilyDescriptor):
        key = d.serialize()
        if key not in seen:
            seen.add(key)
            found.append(d)

    legs = list(g.legs)
    target = sorted(legs)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = [m for m in range(3) if m not in (i, j)][0]
            if not contfrac.is_complementary(legs[i], legs[j]):
                continue
            leg1 = legs[k]
            for reading in (tuple(reversed(leg1)), tuple(leg1)):
                string = reading + (g.center,)
                for row, params in _match_cl_string(string):
                    params = dict(params)
                    params["legs"] = min(tuple(legs[i]), tuple(legs[j]))
                    d = FamilyDescriptor.make("thm_cl", row, _CL_ROWS[row][0], params)
                    gen = generate(d)
                    if gen.center == g.center and sorted(gen.legs) == target:
                        emit(d)
    for row, params in _match_ncl(g):
        emit(FamilyDescriptor.make("thm_ncl", row, -2, params))
    return found


def _match_ncl(g: PlumbingGraph):
    """(row, params) pairs of the thm_ncl families matching g up to leg order."""
    if not g.is_star:
        return []
    out = []
    target = sorted(g.legs)
    n = g.n
    for row in _NCL_ROWS:
        for params in _ncl_param_grid(row, n):
            try:
                cand = _ncl_graph(row, params)
            except (ValueError, NotImplementedError):
                continue
            if cand.center == g.center and sorted(cand.legs) == target:
                out.append((row, params))
    return out


_NCL_ROWS = ("a", "b", "c", "d", "e")


def _ncl_param_grid(row: str, n: int):
    """Parameter dicts for thm_ncl rows with exactly n vertices.

    Vertex counts: (a), (b): s + t + k + l + 3; (c): t + k + l + 3;
    (d): s + t + k + l + 4; (e): r + s + t + 5.
    """
    if row == "e":
        total = n - 5  # r + s + t
        for r in range(0, total - 1):
            for s in range(1, total - r):
                t = total - r - s
                if t >= 1:
                    yield {"r": r, "s": s, "t": t}
        return
    base = 4 if row == "d" else 3
    for b, c in all_complementary_pairs(n - base):
        free = n - base - len(b) - len(c)
        if free < 0:
            continue
        if row == "a":
            for s in range(1, free + 1):
                yield {"s": s, "t": free - s, "b": b}
        elif row == "b":
            for s in range(1, free):
                yield {"s": s, "t": free - s, "b": b}
        elif row == "c":
            if free >= 1:
                yield {"t": free, "b": b}
        elif row == "d":
            for s in range(1, free + 1):
                yield {"s": s, "t": free - s, "b": b}


def link_component_count(g: PlumbingGraph) -> int:
    """Components of the Montesinos link of g: 1 + corank of Q over GF(2)."""
    q = [[x & 1 for x in row] for row in intersection_matrix(g)]
    n = len(q)
    rank = 0
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if q[r][col]), None)
        if pivot is None:
            continue
        q[row], q[pivot] = q[pivot], q[row]
        for r in range(n):
            if r != row and q[r][col]:
                q[r] = [(a + b) & 1 for a, b in zip(q[r], q[row])]
        rank += 1
        row += 1
    return 1 + (n - rank)


def enumerate_descriptors(max_n: int):
    """Every descriptor whose generated object has at most max_n vertices."""
    out = []
    # thm_cl: n = len(string) + len(legs pair)
    leg_pairs = []
    seen_pairs = set()
    for u, v in all_complementary_pairs(max_n):
        key = frozenset((u, v)) if u != v else frozenset((u,))
        if key not in seen_pairs:
            seen_pairs.add(key)
            leg_pairs.append((min(u, v), len(u) + len(v)))
    for row, (ival, _) in _CL_ROWS.items():
        for length in range(3, max_n):
            for params in _cl_param_grid(row, length):
                for legs, pair_len in leg_pairs:
                    if length + pair_len <= max_n:
                        full = dict(params)
                        full["legs"] = legs
                        out.append(FamilyDescriptor.make("thm_cl", row, ival, full))
    for row in _NCL_ROWS:
        for n in range(5, max_n + 1):
            for params in _ncl_param_grid(row, n):
                try:
                    _ncl_graph(row, params)
                except (ValueError, NotImplementedError):
                    continue
                out.append(FamilyDescriptor.make("thm_ncl", row, -2, params))
    for row, params, string in lisca_strings(max_n):
        out.append(FamilyDescriptor.make("lisca_linear", row, _LISCA_ROWS[row], params))
    return out
