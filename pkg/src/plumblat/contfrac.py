"""Negative (Hirzebruch-Jung) continued fractions and Riemenschneider's point rule.

A string (a_1, ..., a_k) of integers with every a_i >= 2 encodes the
rational number

    a_1 - 1/(a_2 - 1/( ... - 1/a_k)),

and every fraction p/q with p > q > 0 coprime has exactly one expansion of
this kind.  Two strings are *complementary* when they expand p/q and
p/(p-q) for the same p; the point rule recovers one from the other by a
purely combinatorial dot diagram, without ever computing p or q.

Strings are plain tuples of ints, fractions are ``fractions.Fraction``.
Everything here is exact integer arithmetic on immutable values.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

CFString = tuple[int, ...]


def check_fraction(p: int, q: int) -> None:
    """Reject (p, q) unless p > q > 0 and gcd(p, q) = 1."""
    if not (isinstance(p, int) and isinstance(q, int)):
        raise ValueError("fraction parts must be integers, got %r/%r" % (p, q))
    if q <= 0 or p <= q:
        raise ValueError("need p > q > 0, got %d/%d" % (p, q))
    if gcd(p, q) != 1:
        raise ValueError("need gcd(p, q) = 1, got %d/%d" % (p, q))


def check_string(s) -> CFString:
    """Validate a continued-fraction string: nonempty, all entries >= 2."""
    t = tuple(s)
    if not t:
        raise ValueError("continued fraction string must be nonempty")
    for a in t:
        if not isinstance(a, int) or a < 2:
            raise ValueError("string entries must be integers >= 2, got %r" % (a,))
    return t


def cf_expand(p, q: int | None = None) -> CFString:
    """Expand p/q into its negative continued fraction string.

    Accepts either two integers or a single ``Fraction``.  The expansion
    uses ceiling division: a = ceil(p/q), then recurse on q/(a*q - p).
    """
    if q is None:
        if not isinstance(p, Fraction):
            raise ValueError("single-argument form requires a Fraction")
        p, q = p.numerator, p.denominator
    check_fraction(p, q)
    out = []
    while q > 0:
        a = -((-p) // q)  # ceil(p / q)
        out.append(a)
        p, q = q, a * q - p
    return tuple(out)


def cf_eval(s) -> Fraction:
    """Evaluate a string back to the fraction p/q it expands.

    Exact rational arithmetic; inverse of :func:`cf_expand`.
    """
    t = check_string(s)
    val = Fraction(t[-1])
    for a in reversed(t[:-1]):
        val = a - 1 / val
    return val


def point_rule_complement(s) -> CFString:
    """Complementary string of s, built from the Riemenschneider dot diagram.

    Row i of the diagram carries a_i - 1 dots, with the first dot of each
    row vertically below the last dot of the previous row.  The column
    counts, each plus one, form the complementary string.  This is the
    combinatorial construction; the arithmetic identity (it computes the
    expansion of p/(p-q)) is a theorem, not an input.
    """
    t = check_string(s)
    counts: list[int] = []
    col = 0
    for a in t:
        for j in range(col, col + a - 1):
            if j == len(counts):
                counts.append(0)
            counts[j] += 1
        col += a - 2
    return tuple(c + 1 for c in counts)


def is_complementary(s1, s2) -> bool:
    """True iff s2 is the point-rule complement of s1 (a symmetric relation)."""
    return point_rule_complement(s1) == check_string(s2)


def grow_complementary_pair(s1, s2, op: int) -> tuple[CFString, CFString]:
    """Grow a complementary pair by one of the two elementary operations.

    op 1: (a_1..a_n), (b_1..b_m)  ->  (a_1..a_n + 1), (b_1..b_m, 2)
    op 2: (a_1..a_n), (b_1..b_m)  ->  (a_1..a_n, 2), (b_1..b_m + 1)

    Both preserve complementarity, and every complementary pair arises
    from ((2), (2)) by a finite sequence of these.
    """
    t1, t2 = check_string(s1), check_string(s2)
    if not is_complementary(t1, t2):
        raise ValueError("(%s, %s) is not a complementary pair" % (t1, t2))
    if op == 1:
        return t1[:-1] + (t1[-1] + 1,), t2 + (2,)
    if op == 2:
        return t1 + (2,), t2[:-1] + (t2[-1] + 1,)
    raise ValueError("op must be 1 or 2, got %r" % (op,))


def all_complementary_pairs(max_total_len: int):
    """Yield every complementary pair with len(s1) + len(s2) <= max_total_len.

    Generated by closing ((2), (2)) under the two growth operations; each
    pair is produced exactly once.
    """
    frontier = [((2,), (2,))]
    while frontier:
        nxt = []
        for pair in frontier:
            yield pair
            if len(pair[0]) + len(pair[1]) < max_total_len:
                for op in (1, 2):
                    nxt.append(grow_complementary_pair(*pair, op))
        frontier = nxt


def parse_cfstring(text: str) -> CFString:
    """Parse '3,2,4' into (3, 2, 4)."""
    try:
        entries = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise ValueError("cannot parse %r as a comma-separated integer string" % (text,))
    return check_string(entries)


def format_cfstring(s) -> str:
    return ",".join(str(a) for a in s)


def parse_fraction(text: str) -> Fraction:
    """Parse '17/7' into Fraction(17, 7), enforcing p > q > 0 coprime."""
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError("cannot parse %r as p/q" % (text,))
    try:
        p, q = int(parts[0].strip()), int(parts[1].strip())
    except ValueError:
        raise ValueError("cannot parse %r as p/q" % (text,))
    check_fraction(p, q)
    return Fraction(p, q)


def format_fraction(f: Fraction) -> str:
    return "%d/%d" % (f.numerator, f.denominator)
