"""Exhaustive backtracking search for graceful and alpha labelings.

Edge labels are assigned in decreasing order; each label must be realized by
some tree edge, which keeps branching narrow (the edge labeled n forces the
pair {0, n}, and so on). The search is complete: a returned None certifies
non-existence within the cap.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidInputError, SearchRefusedError
from .labelings import Labeling
from .trees import Tree, make_tree, parents_and_depths

DEFAULT_MAX_VERTICES = 16


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    solutions_found: int = 0
    wall_time: float = 0.0


def _cap() -> int:
    env = os.environ.get("GLAB_MAX_VERTICES")
    return int(env) if env else DEFAULT_MAX_VERTICES


def _check_cap(tree: Tree, max_vertices: Optional[int]) -> None:
    cap = max_vertices if max_vertices is not None else _cap()
    if tree.vertex_count > cap:
        raise SearchRefusedError(
            f"{tree.vertex_count} vertices exceeds the search cap {cap}"
        )


def _search(
    tree: Tree,
    fixed: Optional[tuple[int, int]],
    allowed: Optional[list[set[int]]],
    stats: SearchStats,
) -> Iterator[Labeling]:
    """Yield labelings realizing edge labels n, n-1, ..., 1, largest first.

    `allowed` optionally restricts each vertex to a value set (alpha blocks).
    """
    n = tree.edge_count
    vlab: list[Optional[int]] = [None] * tree.vertex_count
    used_values: set[int] = set()
    edges = sorted(tree.edges)
    explained: list[Optional[int]] = [None] * len(edges)  # edge -> its label
    adj_edges: list[list[tuple[int, int]]] = [[] for _ in range(tree.vertex_count)]
    for i, (u, v) in enumerate(edges):
        adj_edges[u].append((i, v))
        adj_edges[v].append((i, u))

    if fixed is not None:
        fv, fl = fixed
        if not (0 <= fv < tree.vertex_count) or not (0 <= fl <= n):
            raise InvalidInputError(f"bad pin {fixed}")
        if allowed is not None and fl not in allowed[fv]:
            return
        vlab[fv] = fl
        used_values.add(fl)

    def place(v: int, x: int, label: int, via_edge: int) -> bool:
        """Assign f(v)=x if consistent: x unused, in v's block, and every edge
        this determines needs a still-unprocessed label (< label)."""
        if x < 0 or x > n or x in used_values:
            return False
        if allowed is not None and x not in allowed[v]:
            return False
        for ei, w in adj_edges[v]:
            if ei == via_edge or vlab[w] is None:
                continue
            d = abs(x - vlab[w])
            if d == 0 or d >= label:
                return False
        vlab[v] = x
        used_values.add(x)
        return True

    def unplace(v: int, x: int) -> None:
        vlab[v] = None
        used_values.discard(x)

    def extend(label: int) -> Iterator[Labeling]:
        stats.nodes_expanded += 1
        if label == 0:
            if all(e is not None for e in explained):
                yield tuple(vlab)  # type: ignore[arg-type]
            return
        for ei, (u, v) in enumerate(edges):
            if explained[ei] is not None:
                continue
            lu, lv = vlab[u], vlab[v]
            if lu is not None and lv is not None:
                if abs(lu - lv) == label:
                    explained[ei] = label
                    yield from extend(label - 1)
                    explained[ei] = None
            elif lu is not None or lv is not None:
                known, other = (u, v) if lu is not None else (v, u)
                base = vlab[known]
                assert base is not None
                for x in (base - label, base + label):
                    if place(other, x, label, ei):
                        explained[ei] = label
                        yield from extend(label - 1)
                        explained[ei] = None
                        unplace(other, x)
            else:
                for x in range(0, n - label + 1):
                    for a, b in ((x, x + label), (x + label, x)):
                        if place(u, a, label, ei):
                            if place(v, b, label, ei):
                                explained[ei] = label
                                yield from extend(label - 1)
                                explained[ei] = None
                                unplace(v, b)
                            unplace(u, a)

    if n == 0:
        if fixed is None or fixed[1] == 0:
            yield (0,)
        return
    yield from extend(n)


def _alpha_allowed(tree: Tree) -> list[list[set[int]]]:
    """The two block assignments an alpha-labeling of a tree must use."""
    _, depth = parents_and_depths(tree, tree.root if tree.root is not None else 0)
    n = tree.edge_count
    part0 = [v for v in range(tree.vertex_count) if depth[v] % 2 == 0]
    size0 = len(part0)
    out = []
    for low_part0 in (True, False):
        k = size0 - 1 if low_part0 else tree.vertex_count - size0 - 1
        lows = set(range(k + 1))
        highs = set(range(k + 1, n + 1))
        alloc: list[set[int]] = []
        for v in range(tree.vertex_count):
            in0 = depth[v] % 2 == 0
            alloc.append(lows if in0 == low_part0 else highs)
        out.append(alloc)
    return out


def brute_force_graceful(
    tree: Tree,
    fixed: Optional[tuple[int, int]] = None,
    max_vertices: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[Labeling]:
    """First graceful labeling found, honoring an optional (vertex, label) pin."""
    _check_cap(tree, max_vertices)
    st = stats if stats is not None else SearchStats()
    t0 = time.monotonic()
    result = None
    for sol in _search(tree, fixed, None, st):
        st.solutions_found += 1
        result = sol
        break
    st.wall_time += time.monotonic() - t0
    return result


def count_graceful(
    tree: Tree,
    fixed: Optional[tuple[int, int]] = None,
    max_vertices: Optional[int] = None,
) -> int:
    """Number of labeled graceful labelings (complement pairs both counted)."""
    _check_cap(tree, max_vertices)
    st = SearchStats()
    total = 0
    for _ in _search(tree, fixed, None, st):
        total += 1
    return total


def brute_force_alpha(
    tree: Tree,
    fixed: Optional[tuple[int, int]] = None,
    max_vertices: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[Labeling]:
    """First alpha-labeling found; complete over both block assignments."""
    _check_cap(tree, max_vertices)
    st = stats if stats is not None else SearchStats()
    t0 = time.monotonic()
    result = None
    for alloc in _alpha_allowed(tree):
        for sol in _search(tree, fixed, alloc, st):
            st.solutions_found += 1
            result = sol
            break
        if result is not None:
            break
    st.wall_time += time.monotonic() - t0
    return result


def alpha_labels_for_vertex(tree: Tree, v: int, max_vertices: Optional[int] = None) -> set[int]:
    """All labels vertex v takes over alpha-labelings whose low block covers v's part.

    This is the normalization under which Cattell's depth sets are stated.
    """
    _check_cap(tree, max_vertices)
    out: set[int] = set()
    st = SearchStats()
    for alloc in _alpha_allowed(tree):
        k = min(max(a) for a in alloc)  # the alpha index under this assignment
        if max(alloc[v]) != k:
            continue  # v's part is not the low block under this assignment
        for label in sorted(alloc[v]):
            if label in out:
                continue
            for _ in _search(tree, (v, label), alloc, st):
                out.add(label)
                break
    return out


def is_zero_rotatable(tree: Tree, max_vertices: Optional[int] = None) -> bool:
    """Every vertex can receive label 0 in some graceful labeling."""
    _check_cap(tree, max_vertices)
    return all(
        brute_force_graceful(tree, fixed=(v, 0), max_vertices=max_vertices) is not None
        for v in range(tree.vertex_count)
    )


def enumerate_free_trees(n: int) -> Iterator[Tree]:
    """One representative per isomorphism class of trees on n vertices."""
    if n < 1 or n > 16:
        raise InvalidInputError("free-tree enumeration supports 1 <= n <= 16")
    if n == 1:
        yield make_tree(1, [])
        return
    if n == 2:
        yield make_tree(2, [(0, 1)])
        return
    import networkx as nx

    for g in nx.nonisomorphic_trees(n):
        yield make_tree(n, list(g.edges()))
