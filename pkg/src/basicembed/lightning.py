"""Lightning walks, iterated pruning and the strip-collapse map.

A *lightning* is a sequence of points in the plane in which consecutive
points are distinct and alternately share an x-coordinate and a
y-coordinate (the classical "lightning bolt" of superposition theory).
Everything here runs on the bipartite view of a planar point set: one node
per distinct column value, one per distinct row value, one edge per point.
Lightnings are then walks without immediate edge repetition, so

* the set carries arbitrarily long lightnings iff the bipartite graph has
  a cycle, and
* in the acyclic case every lightning is a simple path, so the maximum
  lightning length is the longest-path edge count of the forest.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .core import DimensionUnsupportedError, Point, PointSet

INFINITE = math.inf

#: Axis shared by the first transition under the conventional orientation:
#: points 1 and 2 of a lightning share their y-coordinate.
Y_FIRST = 1
X_FIRST = 0


@dataclass(frozen=True)
class Lightning:
    """A lightning walk, as point indices into a canonical PointSet.

    ``first_transition`` is the axis whose coordinate is shared by the first
    two points (1 = y-equal first, the conventional orientation; 0 = x-equal
    first).  Points may repeat, consecutive points never do.
    """

    indices: tuple[int, ...]
    first_transition: int = Y_FIRST


@dataclass(frozen=True)
class ClosedLightning:
    """A lightning of 2l+1 points (l >= 2) whose first and last coincide."""

    indices: tuple[int, ...]
    first_transition: int = Y_FIRST


def check_lightning(ps: PointSet, indices: tuple[int, ...], first_transition: int,
                    closed: bool = False) -> bool:
    """Validate the alternation structure of a candidate lightning."""
    if ps.dim != 2 or not indices:
        return False
    if any(not 0 <= i < len(ps) for i in indices):
        return False
    if closed:
        if len(indices) < 5 or len(indices) % 2 == 0 or indices[0] != indices[-1]:
            return False
    pts = [ps.points[i] for i in indices]
    shared = first_transition
    for a, b in zip(pts, pts[1:]):
        if a == b or a[shared] != b[shared]:
            return False
        shared = 1 - shared
    return True


def alternating_sum(ps: PointSet, values, cycle: ClosedLightning) -> Fraction:
    """f(a_1) - f(a_2) + ... - f(a_{2l}) over a closed lightning."""
    total = Fraction(0)
    for pos, idx in enumerate(cycle.indices[:-1]):
        total += values[idx] if pos % 2 == 0 else -values[idx]
    return total


# -- bipartite view -----------------------------------------------------------

def _bipartite_adjacency(ps: PointSet):
    """Adjacency node -> list of (other node, point index); nodes are (axis, value)."""
    adj: dict[tuple[int, Fraction], list[tuple[tuple[int, Fraction], int]]] = {}
    for i, p in enumerate(ps):
        u, v = (0, p[0]), (1, p[1])
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))
    return adj


def is_acyclic(ps: PointSet) -> bool:
    """Union-find test: the column/row incidence graph is a forest."""
    if ps.dim != 2:
        raise DimensionUnsupportedError(f"acyclicity test needs dim 2, got {ps.dim}")
    parent: dict[tuple[int, Fraction], tuple[int, Fraction]] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in ps:
        u, v = (0, p[0]), (1, p[1])
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# -- pruning ------------------------------------------------------------------

def prune_once(ps: PointSet) -> PointSet:
    """Drop every point some axis-aligned line/plane meets only once.

    Keeps exactly the points all of whose axis hyperplanes meet the set in
    at least two points.  Defined for dimensions 2 and 3.
    """
    if not ps.points:
        return ps
    if ps.dim not in (2, 3):
        raise DimensionUnsupportedError(f"pruning needs dim 2 or 3, got {ps.dim}")
    counts: list[dict[Fraction, int]] = [{} for _ in range(ps.dim)]
    for p in ps:
        for axis in range(ps.dim):
            counts[axis][p[axis]] = counts[axis].get(p[axis], 0) + 1
    kept = [p.coords for p in ps if all(counts[a][p[a]] >= 2 for a in range(ps.dim))]
    return PointSet(ps.dim, tuple(Point(c) for c in kept))


@dataclass(frozen=True)
class PruneReport:
    """Trace of iterated pruning.

    ``sizes`` lists the set sizes round by round, strictly decreasing until
    the set empties or stabilizes; ``index`` is the first round with an
    empty set (present iff ``core`` is empty); ``core`` is the stable
    residual set.
    """

    sizes: tuple[int, ...]
    index: int | None
    core: PointSet


def prune_until_stable(ps: PointSet) -> PruneReport:
    """Iterate :func:`prune_once` until the set empties or stops shrinking."""
    sizes = [len(ps)]
    current = ps
    step = 0
    while len(current):
        nxt = prune_once(current)
        if len(nxt) == len(current):
            return PruneReport(tuple(sizes), None, current)
        step += 1
        sizes.append(len(nxt))
        current = nxt
    return PruneReport(tuple(sizes), step, current)


# -- maximum lightning length -------------------------------------------------

def max_lightning_length(ps: PointSet) -> int | float:
    """Maximum number of points over all lightnings in the set.

    Returns ``INFINITE`` iff the set contains a closed lightning (bipartite
    cycle).  Otherwise the answer is the longest-path edge count over the
    components of the bipartite forest, each lightning being a simple path
    there; either starting parity is allowed.
    """
    if ps.dim != 2:
        raise DimensionUnsupportedError(f"lightnings need dim 2, got {ps.dim}")
    if not len(ps):
        return 0
    if not is_acyclic(ps):
        return INFINITE
    adj = _bipartite_adjacency(ps)

    def farthest(start):
        dist = {start: 0}
        queue = deque([start])
        far, far_d = start, 0
        while queue:
            node = queue.popleft()
            for other, _ in adj[node]:
                if other not in dist:
                    dist[other] = dist[node] + 1
                    if dist[other] > far_d:
                        far, far_d = other, dist[other]
                    queue.append(other)
        return far, far_d, dist

    best = 0
    seen: set = set()
    for node in sorted(adj):
        if node in seen:
            continue
        a, _, dist = farthest(node)
        seen.update(dist)
        _, diameter, _ = farthest(a)
        best = max(best, diameter)
    return best


def longest_lightning(ps: PointSet) -> Lightning | None:
    """A witness lightning of maximum length, or None if empty/unbounded."""
    if ps.dim != 2 or not len(ps) or not is_acyclic(ps):
        return None
    adj = _bipartite_adjacency(ps)

    def bfs(start):
        prev: dict = {start: None}
        order = [start]
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for other, idx in sorted(adj[node], key=lambda t: t[1]):
                if other not in prev:
                    prev[other] = (node, idx)
                    order.append(other)
                    queue.append(other)
        return prev, order

    best: list[int] | None = None
    best_first = Y_FIRST
    seen: set = set()
    for node in sorted(adj):
        if node in seen:
            continue
        prev, order = bfs(node)
        seen.update(order)
        a = order[-1]
        prev2, order2 = bfs(a)
        b = order2[-1]
        path_edges: list[int] = []
        cur = b
        while prev2[cur] is not None:
            node_, idx = prev2[cur]
            path_edges.append(idx)
            cur = node_
        path_edges.reverse()
        if best is None or len(path_edges) > len(best):
            best = path_edges
            # the walk starts at `a`; the first pivot is a's opposite side
            best_first = 1 - a[0] if path_edges else Y_FIRST
    if not best:
        # single points form one-element lightnings
        return Lightning((0,), Y_FIRST)
    return Lightning(tuple(best), best_first)


def find_closed_lightning(ps: PointSet) -> ClosedLightning | None:
    """A shortest closed lightning, oriented y-equal-first, or None.

    Scans every point: the shortest bipartite cycle through the point's edge
    is that edge plus a shortest path between its endpoints avoiding it.
    """
    if ps.dim != 2:
        raise DimensionUnsupportedError(f"lightnings need dim 2, got {ps.dim}")
    adj = _bipartite_adjacency(ps)
    best: list[int] | None = None
    for i, p in enumerate(ps):
        u, v = (0, p[0]), (1, p[1])
        # shortest u -> v path avoiding edge i
        prev: dict = {u: None}
        queue = deque([u])
        while queue and v not in prev:
            node = queue.popleft()
            for other, idx in sorted(adj[node], key=lambda t: t[1]):
                if idx == i or other in prev:
                    continue
                prev[other] = (node, idx)
                queue.append(other)
        if v not in prev:
            continue
        path_edges = []
        cur = v
        while prev[cur] is not None:
            node, idx = prev[cur]
            path_edges.append(idx)
            cur = node
        path_edges.reverse()
        cycle = [i] + path_edges[::-1]  # edge i from u(col) to v(row), then back along path
        if best is None or len(cycle) < len(best):
            best = cycle
    if best is None:
        return None
    # rotate so the cycle starts at its smallest point index
    start = best.index(min(best))
    best = best[start:] + best[:start]
    # orient so the pivot after the first edge is a row node (y-equal first)
    first, second = ps.points[best[0]], ps.points[best[1]]
    if first[1] != second[1]:
        best = [best[0]] + best[:0:-1]
    return ClosedLightning(tuple(best + [best[0]]), Y_FIRST)


# -- strip collapse -----------------------------------------------------------

def collapse(ps: PointSet, a: Fraction, b: Fraction, c: Fraction) -> PointSet:
    """Collapse the vertical strip a <= x <= b onto the line x = a.

    Points left of the strip stay put, points inside move to (a, y), points
    right of it shift left by b - a; merged images become a single point.
    ``c`` marks the row along which the strip is rail-backed in the lemma
    this models; the map itself does not depend on it.
    """
    if ps.dim != 2:
        raise DimensionUnsupportedError(f"collapse needs dim 2, got {ps.dim}")
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a > b:
        raise ValueError("strip requires a <= b")
    images = []
    for p in ps:
        x, y = p[0], p[1]
        if x < a:
            images.append((x, y))
        elif x <= b:
            images.append((a, y))
        else:
            images.append((x - (b - a), y))
    return PointSet.of(images, dedup=True)


def strip_rails(ps: PointSet, a: Fraction, b: Fraction, c: Fraction) -> PointSet:
    """The set extended by (x', c) for every strip column x' of the set.

    This is the finite shadow of the segment [a;b] x {c} that the collapse
    lemma's proof leans on; the lemma's conclusions are tested on sets that
    contain their rails.
    """
    coords = [p.coords for p in ps]
    for x in ps.axis_values(0):
        if a <= x <= b:
            coords.append((x, Fraction(c)))
    return PointSet.of(coords, dedup=True)


# -- sample families ----------------------------------------------------------

def staircase_level(i: int) -> list[Point]:
    """Level-i self-similar staircase, in walk order.

    The 2^i points (m_{i,2l}, m_{i,2l-2}), (m_{i,2l}, m_{i,2l}) for
    l = 1..2^(i-1), with m_{i,j} = 2 - 3*2^-i + j*2^-2i, form a single
    lightning of exactly 2^i points and nothing longer.
    """
    if i < 1:
        raise ValueError("level must be >= 1")
    m = lambda j: 2 - 3 * Fraction(1, 2 ** i) + j * Fraction(1, 2 ** (2 * i))
    pts = []
    for l in range(1, 2 ** (i - 1) + 1):
        pts.append(Point((m(2 * l), m(2 * l - 2))))
        pts.append(Point((m(2 * l), m(2 * l))))
    return pts


def zigzag_path(n: int) -> list[Point]:
    """n distinct points forming one lightning whose first step is horizontal.

    Walk order: (0,0), (1,0), (1,1), (2,1), (2,2), ...; consecutive points
    share y, then x, alternately (y-equal-first orientation).
    """
    pts = []
    for i in range(1, n + 1):
        k = i // 2
        pts.append(Point((Fraction(k), Fraction((i - 1) // 2))))
    return pts
