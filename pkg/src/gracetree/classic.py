"""Explicit labelings for paths, caterpillars, stars, cycles, complete and
complete bipartite graphs, the diameter-4 0-centered condition, and the
even-degree obstruction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError
from .labelings import Labeling
from .trees import Tree, eccentricities, is_caterpillar, parents_and_depths


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v or not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidInputError(f"bad edge ({u},{v})")
            if (u, v) != (min(u, v), max(u, v)):
                raise InvalidInputError("edges must be sorted pairs")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
    return SimpleGraph(n, frozenset((min(u, v), max(u, v)) for u, v in edges))


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise InvalidInputError("cycles need at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> SimpleGraph:
    return make_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(m: int, n: int) -> SimpleGraph:
    return make_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def graph_edge_labels(g: SimpleGraph, labels: Sequence[int]) -> list[int]:
    return sorted(abs(labels[u] - labels[v]) for u, v in g.edges)


def is_graceful_graph_labeling(g: SimpleGraph, labels: Sequence[int]) -> bool:
    n = len(g.edges)
    if len(set(labels)) != len(labels) or any(not 0 <= x <= n for x in labels):
        return False
    return sorted(graph_edge_labels(g, labels)) == list(range(1, n + 1))


# ---------------------------------------------------------------------------
# trees


def label_path(n: int) -> Labeling:
    """0, n, 1, n-1, ... along the path; alpha with index n//2."""
    if n < 0:
        raise InvalidInputError("negative path length")
    if n == 0:
        return (0,)
    out = []
    lo, hi = 0, n
    for i in range(n + 1):
        if i % 2 == 0:
            out.append(lo)
            lo += 1
        else:
            out.append(hi)
            hi -= 1
    return tuple(out)


def label_star(m: int) -> Labeling:
    """Center 0, leaves 1..m."""
    if m < 0:
        raise InvalidInputError("negative leaf count")
    return tuple(range(m + 1))


def label_caterpillar(tree: Tree, start: int) -> Labeling:
    """The small/large zig-zag along a dominating path from `start`, labeling
    each spine vertex's off-spine leaves on the way; f(start) = 0."""
    if not is_caterpillar(tree):
        raise InvalidInputError("not a caterpillar")
    n = tree.vertex_count
    if n == 1:
        return (0,)
    ecc = eccentricities(tree)
    mx = max(ecc)
    adj = tree.adjacency()
    if ecc[start] != mx and not any(ecc[y] == mx for y in adj[start]):
        raise InvalidInputError(
            "start must have maximum eccentricity or neighbor a vertex that does"
        )
    # spine: a longest path from start
    parent, depth = parents_and_depths(tree, start)
    far = max(range(n), key=lambda v: depth[v])
    spine = [far]
    while spine[-1] != start:
        spine.append(parent[spine[-1]])
    spine.reverse()
    spine_set = set(spine)
    labels = [-1] * n
    lo, hi = 0, n - 1
    for j, vj in enumerate(spine):
        off = [y for y in adj[vj] if y not in spine_set and labels[y] < 0]
        if j % 2 == 0:
            labels[vj] = lo
            lo += 1
            for y in off:
                labels[y] = hi
                hi -= 1
        else:
            labels[vj] = hi
            hi -= 1
            for y in off:
                labels[y] = lo
                lo += 1
    if any(x < 0 for x in labels):
        raise InvalidInputError("dominating path from start does not cover the tree")
    return tuple(labels)


# ---------------------------------------------------------------------------
# cycles and complete graphs


def label_cycle(n: int) -> Optional[Labeling]:
    """Labels around C_n, or None when n = 1, 2 (mod 4)."""
    if n < 3:
        raise InvalidInputError("cycles need n >= 3")
    if n % 4 in (1, 2):
        return None
    m = (n + 3) // 4  # n = 4m or 4m - 1
    skip = 3 * m if n % 4 == 0 else m
    skip_stream = "high" if n % 4 == 0 else "low"
    out = [2 * m]
    lo, hi = 0, n
    take_low = True
    while len(out) < n:
        if take_low:
            if skip_stream == "low" and lo == skip:
                lo += 1
            out.append(lo)
            lo += 1
        else:
            if skip_stream == "high" and hi == skip:
                hi -= 1
            out.append(hi)
            hi -= 1
        take_low = not take_low
    return tuple(out)


def label_complete(n: int) -> Optional[Labeling]:
    """The classic labelings of K_n for n <= 4; None beyond (Golomb)."""
    if n < 1:
        raise InvalidInputError("n >= 1 required")
    table = {1: (0,), 2: (0, 1), 3: (0, 1, 3), 4: (0, 1, 4, 6)}
    return table.get(n)


def label_complete_bipartite(m: int, n: int) -> Labeling:
    """Part of order m gets 0..m-1; the other part gets m, 2m, ..., nm."""
    if m < 1 or n < 1:
        raise InvalidInputError("parts must be nonempty")
    return tuple(range(m)) + tuple(m * j for j in range(1, n + 1))


def even_degree_obstruction(g: SimpleGraph) -> bool:
    """True iff gracefulness is ruled out: all degrees even and the edge
    count is 1 or 2 mod 4."""
    if any(g.degree(v) % 2 != 0 for v in range(g.vertex_count)):
        return False
    return len(g.edges) % 4 in (1, 2)


# ---------------------------------------------------------------------------
# diameter-4 0-centered predicate


@dataclass(frozen=True)
class Diameter4Instance:
    """A two-branch diameter-4 tree: branch i has a spine vertex and m_i leaves."""

    m1: int
    m2: int
    n: int

    def __post_init__(self):
        if not (self.m1 >= self.m2 >= 0):
            raise InvalidInputError("need m1 >= m2 >= 0")
        if self.n != self.m1 + self.m2 + 2:
            raise InvalidInputError("n must equal m1 + m2 + 2")


def diameter4_zero_centered(inst: Diameter4Instance) -> Optional[tuple[int, int]]:
    """A witness (x, r) for van Bussel's condition, or None.

    m1 = (m2 + 2 - x)(r - 1) - x with x, r not both odd, 2 <= r <= n/2,
    0 <= x <= min(r - 1, m2).
    """
    n = inst.n
    for r in range(2, n // 2 + 1):
        for x in range(0, min(r - 1, inst.m2) + 1):
            if x % 2 == 1 and r % 2 == 1:
                continue
            if inst.m1 == (inst.m2 + 2 - x) * (r - 1) - x:
                return (x, r)
    return None


def diameter4_instance_tree(inst: Diameter4Instance) -> Tree:
    """The tree: center 0, spine vertices 1 and 2, then m1 leaves under 1 and
    m2 leaves under 2."""
    edges = [(0, 1), (0, 2)]
    nid = 3
    for _ in range(inst.m1):
        edges.append((1, nid))
        nid += 1
    for _ in range(inst.m2):
        edges.append((2, nid))
        nid += 1
    from .trees import make_tree

    return make_tree(nid, edges, root=0)
