"""k-diameter for implicitly given graphs, driven entirely through a
neighbour-set structure.

Balls are delta-encoded along a vertex order: D_1 is the first ball and D_i
the symmetric difference of consecutive balls, so the prefix-xor of the
deltas reconstructs any ball.  One radius step expands all balls with a
divide-and-conquer that shares common work, reorders, and re-extracts deltas
output-sensitively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .nsds import NeighbourSetStructure, SetHandle
from .order import order_from_membership


@dataclass
class ExpandCost:
    """Operation counter for the expansion recursion: every call contributes
    its delta count plus the total size of its delta sets."""

    operations: int = 0
    calls: int = 0

    @staticmethod
    def bound(a: int, b: int, t: int) -> int:
        """Closed-form budget the recursion must stay within, where a is the
        first delta's size and b the total size of the rest."""
        ceil_log = (t - 1).bit_length() if t > 1 else 0
        return a + 3 * b * (ceil_log + 1) + 2 * t


def expand_balls(deltas, nsds: NeighbourSetStructure, *,
                 cost: ExpandCost | None = None) -> list[SetHandle]:
    """Handles for N[D_1 xor ... xor D_i], one per prefix of the deltas.

    Elements unique to D_1 belong to every prefix, so their neighborhoods are
    added once to a shared base set; the midpoint replacement folds the first
    half into the second half's leading delta before recursing.
    """
    deltas = [set(d) for d in deltas]
    if not deltas:
        raise ValueError("need at least one delta set")
    return _expand_rec(nsds.empty, deltas, nsds, cost)


def _expand_rec(base: SetHandle, deltas, nsds, cost) -> list[SetHandle]:
    t = len(deltas)
    if cost is not None:
        cost.calls += 1
        cost.operations += t + sum(len(d) for d in deltas)
    common = set().union(*deltas[1:]) if t > 1 else set()
    shared = base
    for v in sorted(deltas[0] - common):
        shared = nsds.add_neighbours(shared, v)
    if t == 1:
        return [shared]
    m = t // 2 + 1
    d1 = deltas[0] & common
    dm = reduce(set.symmetric_difference, deltas[1:m], d1)
    first = _expand_rec(shared, [d1] + deltas[1:m - 1], nsds, cost)
    second = _expand_rec(shared, [dm] + deltas[m:], nsds, cost)
    return first + second


def simulate_bfs(nsds: NeighbourSetStructure, v: int,
                 r: int | None = None) -> dict:
    """Hop distances from ``v`` using only the two structure operations.

    Each vertex is listed exactly once: the explored set lives in the
    structure, and listing the difference made by one AddNeighbours yields
    precisely the newly reached vertices.  Returns {vertex: distance} for
    distances <= r (all of them when r is None).
    """
    if not 0 <= v < nsds.n:
        raise ValueError(f"vertex {v} out of range")
    limit = nsds.n if r is None else r
    dist = {v: 0}
    explored = nsds.empty
    queue = [v]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        if dist[x] >= limit:
            continue
        grown = nsds.add_neighbours(explored, x)
        for w in nsds.list_differences(explored, grown):
            if w == v:
                continue
            dist[w] = dist[x] + 1
            queue.append(w)
        explored = grown
    return dist


def k_diameter_implicit(nsds_factory, n: int, k: int, d: int,
                        rng: np.random.Generator, *, inspect=None) -> bool:
    """True iff the graph behind the structures has diameter at most ``k``.

    ``nsds_factory`` must create fresh structures over the same graph; one is
    consumed per radius step (old versions are dropped between steps).  The
    answer does not depend on the rng draw, barring a fingerprint collision
    inside the structure.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    order = list(range(n))
    deltas = [{order[0]}] + [{order[i - 1], order[i]} for i in range(1, n)]
    for r in range(1, k + 1):
        nsds = nsds_factory()
        # Ball handles under the previous order.
        handles = expand_balls(deltas, nsds)
        # Fresh low-difference order for the current radius; the distance
        # oracle is BFS simulated through the structure.
        new_order = list(order_from_membership(
            lambda x: simulate_bfs(nsds, x, r).keys(), n, d, rng))
        old_pos = {v: i for i, v in enumerate(order)}
        mapped = [handles[old_pos[v]] for v in new_order]
        deltas = [set(nsds.list_differences(nsds.empty, mapped[0]))]
        deltas.extend(
            set(nsds.list_differences(mapped[i - 1], mapped[i]))
            for i in range(1, n))
        order = new_order
        if inspect is not None:
            inspect(r, nsds, order, deltas)
    return deltas[0] == set(range(n)) and all(not d_i for d_i in deltas[1:])
