"""Persistent lazily-propagated marking tree for one height-1 stripe.

Points of the stripe are leaves in x order.  Marks arrive as half-plane
boundaries clipped to an x range: a *bottom* update raises the stripe's
bottom boundary (covering everything below a line whose normal points up),
a *top* update lowers the top boundary.  A point is marked when it lies
below the bottom boundary or above the top boundary.  Every node keeps, per
boundary, either the exact line (when the boundary is a single segment over
the node) or its directional extremes, plus XOR fingerprints of the covered
points; nodes are copied on write so every root is an immutable snapshot.

The rules the tree maintains:
  1. a node's stored fields never change after creation (persistence);
  2..4. a field may be stale only while some ancestor carries the matching
     lazy flag ("outdated");
  5. operations push lazy flags before entering children, so entered nodes
     are never outdated;
  6. a lazy node's boundary is a single line and the two covered regions are
     uniformly nested or uniformly crossed over the node's points (split).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .hashing import draw_fingerprints

BOT = 0
TOP = 1


class StripeError(ValueError):
    pass


class _Boundary(NamedTuple):
    """One boundary's state over a node: the exact line (direction index,
    offset) when it is a single segment, else None; plus min/max of the
    boundary samples along every direction."""

    line: tuple | None
    lo: tuple
    hi: tuple


class _Node:
    __slots__ = ("pos", "left", "right", "bot", "top",
                 "bot_lazy", "top_lazy", "bot_hash", "top_hash", "hash",
                 "pushed")

    def __init__(self, pos, left, right, bot, top,
                 bot_lazy, top_lazy, bot_hash, top_hash, hash_):
        self.pos = pos
        self.left = left
        self.right = right
        self.bot = bot
        self.top = top
        self.bot_lazy = bot_lazy
        self.top_lazy = top_lazy
        self.bot_hash = bot_hash
        self.top_hash = top_hash
        self.hash = hash_
        self.pushed = None  # memoized non-lazy equivalent

    @property
    def is_leaf(self):
        return self.left is None


class StripeStatic:
    """Immutable per-stripe data shared by all versions: the point layout,
    per-direction sort orders with prefix fingerprints, and the tree shape."""

    def __init__(self, point_ids, coords, fingerprints, band_y0, dirs,
                 up_index, down_index, band_height=1.0):
        order = sorted(range(len(point_ids)),
                       key=lambda i: (coords[i][0], point_ids[i]))
        self.ids = [point_ids[i] for i in order]
        self.pts = [tuple(coords[i]) for i in order]
        self.h = [fingerprints[point_ids[i]] for i in order]
        self.y0 = band_y0
        self.y1 = band_y0 + band_height
        for pid, (x, y) in zip(self.ids, self.pts):
            if not (self.y0 <= y < self.y1):
                raise StripeError(f"point {pid} at y={y} outside band "
                                  f"[{self.y0}, {self.y1})")
        self.xs = [p[0] for p in self.pts]
        self.dirs = tuple(tuple(d) for d in dirs)
        self.UP = up_index
        self.DOWN = down_index
        n = len(self.ids)
        self.a = []
        self.b = []
        self.xlo = []
        self.xhi = []
        self.left_pos = []
        self.right_pos = []
        self.level = []
        self.keys = []   # per pos, per dir: sorted u.p values
        self.prefs = []  # per pos, per dir: XOR prefix fingerprints
        self._build(0, n - 1, 0)
        self.root_pos = len(self.a) - 1
        self.marks = 0
        self.mark_nodes = 0
        self.list_nodes = 0
        # Lines repeat across versions (lazy pushes re-derive the same
        # boundary at the same node), so both derivations are memoized.
        self._line_cache = {}
        self._prefix_cache = {}

    def _build(self, a, b, level):
        if a < b:
            m = (a + b) // 2
            lp = self._build(a, m, level + 1)
            rp = self._build(m + 1, b, level + 1)
        else:
            lp = rp = -1
        pos = len(self.a)
        self.a.append(a)
        self.b.append(b)
        self.xlo.append(self.xs[a])
        self.xhi.append(self.xs[b])
        self.left_pos.append(lp)
        self.right_pos.append(rp)
        self.level.append(level)
        keys_here = []
        prefs_here = []
        for ux, uy in self.dirs:
            idx = sorted(range(a, b + 1),
                         key=lambda i: (ux * self.pts[i][0] + uy * self.pts[i][1],
                                        self.ids[i]))
            keys_here.append([ux * self.pts[i][0] + uy * self.pts[i][1]
                              for i in idx])
            pref = [0]
            for i in idx:
                pref.append(pref[-1] ^ self.h[i])
            prefs_here.append(pref)
        self.keys.append(keys_here)
        self.prefs.append(prefs_here)
        return pos

    @property
    def size(self):
        return len(self.ids)

    def full_hash(self, pos) -> int:
        return self.prefs[pos][0][-1]

    def prefix_hash(self, pos, j, c) -> int:
        """Fingerprint of the node's points p with dirs[j] . p <= c."""
        key = (pos, j, c)
        cached = self._prefix_cache.get(key)
        if cached is None:
            count = bisect.bisect_right(self.keys[pos][j], c)
            cached = self.prefs[pos][j][count]
            self._prefix_cache[key] = cached
        return cached

    def boundary_from_line(self, pos, j, c) -> _Boundary:
        key = (pos, j, c)
        cached = self._line_cache.get(key)
        if cached is None:
            ux, uy = self.dirs[j]
            if uy == 0:
                raise StripeError("boundary lines cannot be vertical")
            x0, x1 = self.xlo[pos], self.xhi[pos]
            y0 = (c - ux * x0) / uy
            y1 = (c - ux * x1) / uy
            lo = []
            hi = []
            for vx, vy in self.dirs:
                d0 = vx * x0 + vy * y0
                d1 = vx * x1 + vy * y1
                if d0 <= d1:
                    lo.append(d0)
                    hi.append(d1)
                else:
                    lo.append(d1)
                    hi.append(d0)
            cached = _Boundary((j, c), tuple(lo), tuple(hi))
            self._line_cache[key] = cached
        return cached


def _merge_boundary(b1: _Boundary, b2: _Boundary) -> _Boundary:
    line = b1.line if (b1.line is not None and b1.line == b2.line) else None
    return _Boundary(line, tuple(map(min, b1.lo, b2.lo)),
                     tuple(map(max, b1.hi, b2.hi)))


def _combined_hash(static, pos, bot, top, bot_hash, top_hash) -> int:
    """Node fingerprint from its two boundary regions.  Needs at least one
    side to be a line; the regions are then uniformly disjoint (xor) or
    uniformly overlapping (everything covered)."""
    if bot.line is not None:
        j, c = bot.line
        if top.lo[j] > c:
            return bot_hash ^ top_hash
        if top.hi[j] <= c:
            return static.full_hash(pos)
    if top.line is not None:
        j, c = top.line
        if bot.lo[j] > c:
            return bot_hash ^ top_hash
        if bot.hi[j] <= c:
            return static.full_hash(pos)
    raise StripeError("boundary relation is not uniform over the node")


@dataclass(frozen=True)
class StripeVersion:
    """Immutable snapshot: a root node of the persistent tree."""

    static: StripeStatic
    root: _Node


def stripe_init(points, band_y0, rng_or_fingerprints, *, dirs=None,
                up_index=None, down_index=None, band_height=1.0) -> StripeVersion:
    """Empty-marking version over the given (id, x, y) points.

    ``rng_or_fingerprints`` is either a numpy Generator (fingerprints are
    drawn from it) or a prebuilt {id: fingerprint} mapping shared with a
    larger structure.  The default directions are vertical only, i.e. unit
    square mode.
    """
    ids = [p[0] for p in points]
    coords = [(p[1], p[2]) for p in points]
    if not ids:
        raise StripeError("a stripe must hold at least one point")
    if isinstance(rng_or_fingerprints, np.random.Generator):
        fps = dict(zip(ids, draw_fingerprints(rng_or_fingerprints, len(ids))))
    else:
        fps = rng_or_fingerprints
    if dirs is None:
        dirs = ((0.0, 1.0), (0.0, -1.0))
        up_index, down_index = 0, 1
    static = StripeStatic(ids, coords, fps, band_y0, dirs,
                          up_index, down_index, band_height)
    root = _init_node(static, static.root_pos)
    return StripeVersion(static, root)


def _init_node(static, pos) -> _Node:
    # Bottom starts below the band (a point lying exactly on the band floor
    # is inside the stripe and must start unmarked); top starts at the band
    # ceiling, which no point reaches.
    bot = static.boundary_from_line(pos, static.UP, static.y0 - 1.0)
    top = static.boundary_from_line(pos, static.DOWN, -static.y1)
    lp, rp = static.left_pos[pos], static.right_pos[pos]
    left = _init_node(static, lp) if lp >= 0 else None
    right = _init_node(static, rp) if rp >= 0 else None
    return _Node(pos, left, right, bot, top, False, False, 0, 0, 0)


def _apply_lazy(static, child, bot_line, top_line) -> _Node:
    """Copy of a child with the parent's lazy line boundaries installed.
    Both sides are applied before the fingerprint is recombined, so a
    both-lazy parent never mixes a fresh line with a stale opposite side."""
    internal = child.left is not None
    bot, bot_hash, bot_lazy = child.bot, child.bot_hash, child.bot_lazy
    top, top_hash, top_lazy = child.top, child.top_hash, child.top_lazy
    if bot_line is not None:
        bot = static.boundary_from_line(child.pos, *bot_line)
        bot_hash = static.prefix_hash(child.pos, *bot_line)
        bot_lazy = internal
    if top_line is not None:
        top = static.boundary_from_line(child.pos, *top_line)
        top_hash = static.prefix_hash(child.pos, *top_line)
        top_lazy = internal
    combined = _combined_hash(static, child.pos, bot, top, bot_hash, top_hash)
    return _Node(child.pos, child.left, child.right, bot, top,
                 bot_lazy, top_lazy, bot_hash, top_hash, combined)


def stripe_push(version_or_node, static=None) -> _Node:
    """Equivalent non-lazy copy of a lazy node, with updated children.

    Children are copied and receive the parent's line boundaries; their own
    deeper descendants stay stale until entered.  Non-lazy nodes are
    returned unchanged; the pushed copy is memoized on the node so repeated
    reads of one version do the work once.
    """
    node = version_or_node.root if isinstance(version_or_node, StripeVersion) \
        else version_or_node
    if static is None:
        static = version_or_node.static
    if not (node.bot_lazy or node.top_lazy):
        return node
    if node.pushed is not None:
        return node.pushed
    bot_line = node.bot.line if node.bot_lazy else None
    top_line = node.top.line if node.top_lazy else None
    left = _apply_lazy(static, node.left, bot_line, top_line)
    right = _apply_lazy(static, node.right, bot_line, top_line)
    out = _Node(node.pos, left, right, node.bot, node.top, False, False,
                node.bot_hash, node.top_hash, node.hash)
    node.pushed = out
    return out


def _update(static, node, l, r, side, j, c) -> _Node:
    static.mark_nodes += 1
    pos = node.pos
    if r < static.a[pos] or static.b[pos] < l:
        return node
    primary = node.bot if side == BOT else node.top
    if primary.lo[j] >= c:
        # The boundary already dominates the new line here: no point gains.
        return node
    if l <= static.a[pos] and static.b[pos] <= r and primary.hi[j] <= c:
        other = node.top if side == BOT else node.bot
        disjoint = other.lo[j] > c
        if disjoint or other.hi[j] <= c:
            covered = static.prefix_hash(pos, j, c)
            boundary = static.boundary_from_line(pos, j, c)
            lazy = node.left is not None
            if side == BOT:
                combined = covered ^ node.top_hash if disjoint \
                    else static.full_hash(pos)
                return _Node(pos, node.left, node.right, boundary, node.top,
                             lazy, node.top_lazy, covered, node.top_hash,
                             combined)
            combined = node.bot_hash ^ covered if disjoint \
                else static.full_hash(pos)
            return _Node(pos, node.left, node.right, node.bot, boundary,
                         node.bot_lazy, lazy, node.bot_hash, covered,
                         combined)
        # The other boundary straddles the line: resolve below.
    pushed = stripe_push(node, static)
    left = _update(static, pushed.left, l, r, side, j, c)
    right = _update(static, pushed.right, l, r, side, j, c)
    if left is pushed.left and right is pushed.right:
        return node
    # Only the updated side's boundary can have moved; the other side is
    # carried over from the (correct, entered) parent.
    if side == BOT:
        return _Node(pos, left, right,
                     _merge_boundary(left.bot, right.bot), pushed.top,
                     False, False,
                     left.bot_hash ^ right.bot_hash, pushed.top_hash,
                     left.hash ^ right.hash)
    return _Node(pos, left, right,
                 pushed.bot, _merge_boundary(left.top, right.top),
                 False, False,
                 pushed.bot_hash, left.top_hash ^ right.top_hash,
                 left.hash ^ right.hash)


def stripe_mark_line(version: StripeVersion, xlo, xhi, side, j, c) -> StripeVersion:
    """New version whose marked set gains the points with x in [xlo, xhi]
    on the covered side of the line ``dirs[j] . p <= c``."""
    static = version.static
    l = bisect.bisect_left(static.xs, xlo)
    r = bisect.bisect_right(static.xs, xhi) - 1
    if l > r:
        return version
    static.marks += 1
    root = _update(static, version.root, l, r, side, j, c)
    if root is version.root:
        return version
    return StripeVersion(static, root)


def stripe_mark(version: StripeVersion, center) -> StripeVersion:
    """Unit-square mark: covers the stripe's points inside the axis-aligned
    unit square at ``center``.  A square reaching the band floor (ties
    included) raises the bottom boundary; otherwise it lowers the top one.
    """
    static = version.static
    cx, cy = center
    if cy + 0.5 < static.y0 or cy - 0.5 >= static.y1:
        return version
    if cy <= static.y0 + 0.5:
        return stripe_mark_line(version, cx - 0.5, cx + 0.5,
                                BOT, static.UP, cy + 0.5)
    return stripe_mark_line(version, cx - 0.5, cx + 0.5,
                            TOP, static.DOWN, -(cy - 0.5))


def stripe_list_differences(v1: StripeVersion, v2: StripeVersion) -> list:
    """Point ids marked in exactly one of the two versions.  Descends both
    trees together, pruning subtrees with equal fingerprints."""
    if v1.static is not v2.static:
        raise StripeError("versions come from different stripes")
    static = v1.static
    out = []
    _list_diff(static, v1.root, v2.root, out)
    return out


def _list_diff(static, n1, n2, out):
    static.list_nodes += 1
    if n1 is n2 or n1.hash == n2.hash:
        return
    if n1.is_leaf:
        out.append(static.ids[static.a[n1.pos]])
        return
    n1 = stripe_push(n1, static)
    n2 = stripe_push(n2, static)
    _list_diff(static, n1.left, n2.left, out)
    _list_diff(static, n1.right, n2.right, out)


def decode_marked(version: StripeVersion) -> set:
    """The full marked point-id set of a version, without fingerprint
    pruning (test oracle support)."""
    static = version.static
    out = set()

    def visit(node):
        if node.is_leaf:
            if node.hash != 0:
                out.add(static.ids[static.a[node.pos]])
            return
        node = stripe_push(node, static)
        visit(node.left)
        visit(node.right)

    visit(version.root)
    return out
