"""Canonical interval representations of position sets.

An interval set is a tuple of (a, b) pairs with 1 <= a <= b, sorted, pairwise
disjoint and non-adjacent (b + 1 < a' for consecutive pairs).  Non-adjacency
makes the representation unique and minimal for the set it covers, which the
difference-extraction step relies on.
"""

from __future__ import annotations

IntervalSet = tuple  # of (a, b) int pairs

EMPTY: IntervalSet = ()


def is_canonical(rep: IntervalSet, n: int | None = None) -> bool:
    prev_end = -1
    for a, b in rep:
        if a < 1 or b < a:
            return False
        if a <= prev_end + 1:
            return False
        if n is not None and b > n:
            return False
        prev_end = b
    return True


def canonicalize(positions) -> IntervalSet:
    """Minimal disjoint non-adjacent interval cover of a position set."""
    pos = sorted(set(positions))
    if not pos:
        return EMPTY
    out = []
    start = prev = pos[0]
    for p in pos[1:]:
        if p == prev + 1:
            prev = p
        else:
            out.append((start, prev))
            start = prev = p
    out.append((start, prev))
    return tuple(out)


def positions(rep: IntervalSet):
    """Iterate the covered positions in increasing order."""
    for a, b in rep:
        yield from range(a, b + 1)


def size(rep: IntervalSet) -> int:
    return sum(b - a + 1 for a, b in rep)


def union_sweep(reps) -> IntervalSet:
    """Canonical union of several interval sets by an endpoint sweep.

    Runs in O(total interval count * log) and is output-canonical: closed
    integer intervals [a, b], [b+1, c] merge because their boundary events
    cancel at b+1.
    """
    events = []
    for rep in reps:
        for a, b in rep:
            events.append((a, 1))
            events.append((b + 1, -1))
    events.sort()
    out = []
    depth = 0
    start = 0
    i = 0
    m = len(events)
    while i < m:
        pos = events[i][0]
        delta = 0
        while i < m and events[i][0] == pos:
            delta += events[i][1]
            i += 1
        if depth == 0 and depth + delta > 0:
            start = pos
        elif depth > 0 and depth + delta == 0:
            out.append((start, pos - 1))
        depth += delta
    return tuple(out)


def difference_positions(rep_a: IntervalSet, rep_b: IntervalSet) -> list[int]:
    """Positions covered by ``rep_a`` but not by ``rep_b`` (merge walk)."""
    out = []
    jb = 0
    nb = len(rep_b)
    for a, b in rep_a:
        p = a
        while p <= b:
            while jb < nb and rep_b[jb][1] < p:
                jb += 1
            if jb == nb or rep_b[jb][0] > b:
                out.extend(range(p, b + 1))
                break
            ba, bb = rep_b[jb]
            if ba > p:
                out.extend(range(p, min(ba - 1, b) + 1))
            p = bb + 1
    return out


def contains(rep: IntervalSet, p: int) -> bool:
    import bisect

    i = bisect.bisect_right(rep, (p, float("inf"))) - 1
    return i >= 0 and rep[i][0] <= p <= rep[i][1]
