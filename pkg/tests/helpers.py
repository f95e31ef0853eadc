"""Shared independent oracles for the test suite.

Everything here is deliberately written from scratch (brute force where
possible) so it cannot share a bug with the library paths it checks.
"""

from __future__ import annotations


# -- graphs -----------------------------------------------------------------


def bfs_dict(adj, source):
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def all_pairs_dist(adj):
    return [bfs_dict(adj, s) for s in range(len(adj))]


def ball(adj, v, r):
    return {u for u, d in bfs_dict(adj, v).items() if d <= r}


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


# -- geometry ---------------------------------------------------------------


def convex_hull(points):
    """Monotone chain; returns CCW hull vertices without collinear points."""
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 1e-12:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def point_in_polygon(p, verts):
    """Crossing-number point-in-polygon (boundary behavior unspecified)."""
    x, y = p
    inside = False
    s = len(verts)
    for i in range(s):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % s]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
            if x < xi:
                inside = not inside
    return inside


def gauge_by_bisection(verts, p, hi=1e6, iters=100):
    """min r with p in r*polygon, via bisection over crossing-number
    containment; independent of the normal-form gauge."""
    px, py = p
    if abs(px) < 1e-300 and abs(py) < 1e-300:
        return 0.0
    lo, hi_ = 0.0, hi
    for _ in range(iters):
        mid = (lo + hi_) / 2
        if mid == 0 or not point_in_polygon((px / mid, py / mid), verts):
            lo = mid
        else:
            hi_ = mid
    return hi_


def polygons_intersect(verts_a, verts_b, tol=1e-9):
    """Separating-axis test for two convex polygons (closed: touching
    counts as intersecting)."""
    for verts in (verts_a, verts_b):
        s = len(verts)
        for i in range(s):
            ex = verts[(i + 1) % s][0] - verts[i][0]
            ey = verts[(i + 1) % s][1] - verts[i][1]
            nx, ny = ey, -ex
            pa = [nx * x + ny * y for x, y in verts_a]
            pb = [nx * x + ny * y for x, y in verts_b]
            if min(pb) > max(pa) + tol or min(pa) > max(pb) + tol:
                return False
    return True


def geometric_graph_sat(points, verts):
    """Adjacency by direct pairwise shape-intersection (SAT), as sets."""
    n = len(points)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            va = [(x + points[i][0], y + points[i][1]) for x, y in verts]
            vb = [(x + points[j][0], y + points[j][1]) for x, y in verts]
            if polygons_intersect(va, vb):
                edges.add((i, j))
    return edges


def shoelace(verts):
    s = len(verts)
    acc = 0.0
    for i in range(s):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % s]
        acc += x1 * y2 - x2 * y1
    return acc / 2.0


# -- stripe ground truth ----------------------------------------------------


class StripeModel:
    """Replays stripe updates naively: per point, the bottom boundary value
    is the max of all bottom lines covering its x (plus the below-band
    sentinel), the top value the min of top lines (plus the band ceiling)."""

    def __init__(self, static):
        self.static = static
        self.bot_updates = []
        self.top_updates = []

    def apply(self, xlo, xhi, side, j, c):
        from kdiam.stripes import BOT

        if side == BOT:
            self.bot_updates.append((xlo, xhi, j, c))
        else:
            self.top_updates.append((xlo, xhi, j, c))

    def line_value(self, j, c, x):
        ux, uy = self.static.dirs[j]
        return (c - ux * x) / uy

    def boundaries_at(self, i):
        """(B, T) boundary values at stored point i (x-sorted index)."""
        x = self.static.xs[i]
        b = self.static.y0 - 1.0
        for xlo, xhi, j, c in self.bot_updates:
            if xlo <= x <= xhi:
                b = max(b, self.line_value(j, c, x))
        t = self.static.y1
        for xlo, xhi, j, c in self.top_updates:
            if xlo <= x <= xhi:
                t = min(t, self.line_value(j, c, x))
        return b, t

    def covered(self, i):
        b, t = self.boundaries_at(i)
        y = self.static.pts[i][1]
        return y <= b or y >= t

    def marked_ids(self):
        return {self.static.ids[i] for i in range(self.static.size)
                if self.covered(i)}


def audit_stripe_version(version, model, tol=1e-9):
    """Walk a version checking the node rules against the replayed model:
    non-outdated fields exact, lazy nodes simple and uniformly split."""
    static = version.static
    bvals = [model.boundaries_at(i) for i in range(static.size)]

    def expect_boundary(pos, which):
        pts = range(static.a[pos], static.b[pos] + 1)
        samples = [(static.xs[i], bvals[i][0 if which == "bot" else 1])
                   for i in pts]
        lo, hi = [], []
        for ux, uy in static.dirs:
            dots = [ux * x + uy * y for x, y in samples]
            lo.append(min(dots))
            hi.append(max(dots))
        return lo, hi

    def expect_hash(pos, which):
        acc = 0
        for i in range(static.a[pos], static.b[pos] + 1):
            y = static.pts[i][1]
            b, t = bvals[i]
            cov = (y <= b) if which == "bot" else (y >= t) if which == "top" \
                else (y <= b or y >= t)
            if cov:
                acc ^= static.h[i]
        return acc

    problems = []

    def walk(node, bot_out, top_out):
        if not bot_out:
            lo, hi = expect_boundary(node.pos, "bot")
            for i in range(len(static.dirs)):
                if abs(node.bot.lo[i] - lo[i]) > tol or \
                        abs(node.bot.hi[i] - hi[i]) > tol:
                    problems.append(("bot extremes", node.pos, i))
                    break
            if node.bot_hash != expect_hash(node.pos, "bot"):
                problems.append(("bot hash", node.pos))
        if not top_out:
            lo, hi = expect_boundary(node.pos, "top")
            for i in range(len(static.dirs)):
                if abs(node.top.lo[i] - lo[i]) > tol or \
                        abs(node.top.hi[i] - hi[i]) > tol:
                    problems.append(("top extremes", node.pos, i))
                    break
            if node.top_hash != expect_hash(node.pos, "top"):
                problems.append(("top hash", node.pos))
        if not (bot_out or top_out):
            if node.hash != expect_hash(node.pos, "both"):
                problems.append(("hash", node.pos))
        for side, lazy in (("bot", node.bot_lazy), ("top", node.top_lazy)):
            if not lazy:
                continue
            boundary = node.bot if side == "bot" else node.top
            other = node.top if side == "bot" else node.bot
            if boundary.line is None:
                problems.append((f"{side} lazy but not simple", node.pos))
                continue
            j, c = boundary.line
            above = below = 0
            for i in range(static.a[node.pos], static.b[node.pos] + 1):
                x = static.xs[i]
                oy = bvals[i][1 if side == "bot" else 0]
                dot = static.dirs[j][0] * x + static.dirs[j][1] * oy
                if dot > c:
                    above += 1
                else:
                    below += 1
            if above and below:
                problems.append((f"{side} lazy but not split", node.pos))
        if node.left is not None:
            walk(node.left, bot_out or node.bot_lazy,
                 top_out or node.top_lazy)
            walk(node.right, bot_out or node.bot_lazy,
                 top_out or node.top_lazy)

    walk(version.root, False, False)
    return problems
