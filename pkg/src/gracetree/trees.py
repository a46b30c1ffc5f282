"""Immutable trees on dense vertex ids, text formats, and structural recognizers."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InvalidInputError


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A simple tree on vertex ids 0..vertex_count-1, optionally rooted."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    root: Optional[int] = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise InvalidInputError("tree needs at least one vertex")
        if len(self.edges) != n - 1:
            raise InvalidInputError(
                f"tree on {n} vertices needs {n - 1} edges, got {len(self.edges)}"
            )
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u},{v}) outside 0..{n - 1}")
            if (u, v) != _norm_edge(u, v):
                raise InvalidInputError("edges must be stored as sorted pairs")
            if (u, v) in seen:
                raise InvalidInputError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if self.root is not None and not (0 <= self.root < n):
            raise InvalidInputError(f"root {self.root} outside 0..{n - 1}")
        # connectivity; acyclicity follows from the edge count
        if n > 1 and len(_component(self.adjacency(), 0)) != n:
            raise InvalidInputError("tree is not connected")

    @property
    def edge_count(self) -> int:
        return self.vertex_count - 1

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def with_root(self, root: Optional[int]) -> "Tree":
        return Tree(self.vertex_count, self.edges, root)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges


def make_tree(vertex_count: int, edges: Iterable[tuple[int, int]], root: Optional[int] = None) -> Tree:
    return Tree(vertex_count, frozenset(_norm_edge(u, v) for u, v in edges), root)


def _component(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def path_tree(n_edges: int) -> Tree:
    """P_n: the path with n edges, vertices 0..n in path order."""
    if n_edges < 0:
        raise InvalidInputError("negative path length")
    return make_tree(n_edges + 1, [(i, i + 1) for i in range(n_edges)])


def star_tree(leaves: int) -> Tree:
    """K_{1,m}: center 0, leaves 1..m."""
    return make_tree(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bfs_order(tree: Tree, root: int) -> list[int]:
    adj = tree.adjacency()
    order = [root]
    seen = {root}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
                q.append(y)
    return order


def parents_and_depths(tree: Tree, root: int) -> tuple[list[Optional[int]], list[int]]:
    adj = tree.adjacency()
    parent: list[Optional[int]] = [None] * tree.vertex_count
    depth = [0] * tree.vertex_count
    seen = {root}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                depth[y] = depth[x] + 1
                q.append(y)
    return parent, depth


def children_map(tree: Tree, root: int) -> list[list[int]]:
    parent, _ = parents_and_depths(tree, root)
    kids: list[list[int]] = [[] for _ in range(tree.vertex_count)]
    for v, p in enumerate(parent):
        if p is not None:
            kids[p].append(v)
    return kids


def eccentricities(tree: Tree) -> list[int]:
    n = tree.vertex_count
    adj = tree.adjacency()
    ecc = [0] * n
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        far = 0
        while q:
            x = q.popleft()
            far = max(far, dist[x])
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        ecc[s] = far
    return ecc


def tree_center(tree: Tree) -> list[int]:
    ecc = eccentricities(tree)
    lo = min(ecc)
    return [v for v in range(tree.vertex_count) if ecc[v] == lo]


def leaves_of(tree: Tree) -> list[int]:
    if tree.vertex_count == 1:
        return [0]
    deg = [0] * tree.vertex_count
    for u, v in tree.edges:
        deg[u] += 1
        deg[v] += 1
    return [v for v in range(tree.vertex_count) if deg[v] == 1]


# ---------------------------------------------------------------------------
# rooted canonical forms and isomorphism


def rooted_canonical(tree: Tree, root: int) -> tuple:
    """AHU-style canonical form of (tree, root) as nested sorted tuples."""
    kids = children_map(tree, root)

    def enc(v: int) -> tuple:
        return tuple(sorted(enc(c) for c in kids[v]))

    return enc(root)


def rooted_isomorphism(t1: Tree, r1: int, t2: Tree, r2: int) -> Optional[dict[int, int]]:
    """A vertex map t1 -> t2 respecting the rooted structure, or None."""
    k1 = children_map(t1, r1)
    k2 = children_map(t2, r2)
    forms2: dict[int, tuple] = {}

    def enc(kids, v, cache):
        if v not in cache:
            cache[v] = tuple(sorted(enc(kids, c, cache) for c in kids[v]))
        return cache[v]

    c1: dict[int, tuple] = {}
    enc(k1, r1, c1)
    enc(k2, r2, forms2)
    if c1[r1] != forms2[r2]:
        return None
    mapping = {r1: r2}

    def match(a: int, b: int):
        pool = list(k2[b])
        for child in sorted(k1[a], key=lambda c: c1[c]):
            for i, cand in enumerate(pool):
                if forms2[cand] == c1[child]:
                    mapping[child] = cand
                    pool.pop(i)
                    match(child, cand)
                    break
            else:  # pragma: no cover - guarded by canonical equality
                raise AssertionError("canonical forms matched but children did not")

    match(r1, r2)
    return mapping


def free_canonical(tree: Tree) -> tuple:
    centers = tree_center(tree)
    return min(rooted_canonical(tree, c) for c in centers)


# ---------------------------------------------------------------------------
# text formats


def tree_to_text(tree: Tree) -> str:
    lines = [f"n={tree.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(tree.edges))
    if tree.root is not None:
        lines.append(f"root={tree.root}")
    return "\n".join(lines)


def tree_from_text(text: str) -> Tree:
    n = None
    root = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            n = int(line[2:])
        elif line.startswith("root="):
            root = int(line[5:])
        else:
            parts = line.split()
            if len(parts) != 2:
                raise InvalidInputError(f"line {lineno}: expected 'u v', got {raw!r}")
            u, v = int(parts[0]), int(parts[1])
            e = _norm_edge(u, v)
            if e in edges:
                raise InvalidInputError(f"line {lineno}: duplicate edge {u} {v}")
            edges.append(e)
    if n is None:
        raise InvalidInputError("missing 'n=<vertex_count>' line")
    return make_tree(n, edges, root)


def tree_from_parens(text: str) -> Tree:
    """Nested-paren rooted format: each '(...)' is a vertex whose children are
    the comma-separated subexpressions. Ids are assigned in preorder, root=0."""
    s = text.strip()
    pos = 0
    edges: list[tuple[int, int]] = []
    counter = [0]

    def parse() -> int:
        nonlocal pos
        if pos >= len(s) or s[pos] != "(":
            raise InvalidInputError(f"expected '(' at column {pos + 1}")
        pos += 1
        vid = counter[0]
        counter[0] += 1
        while True:
            if pos >= len(s):
                raise InvalidInputError("unbalanced parentheses")
            ch = s[pos]
            if ch == ")":
                pos += 1
                return vid
            if ch == ",":
                pos += 1
                continue
            child = parse()
            edges.append((vid, child))

    root = parse()
    if pos != len(s):
        raise InvalidInputError(f"trailing characters at column {pos + 1}")
    return make_tree(counter[0], edges, root)


def tree_to_parens(tree: Tree) -> str:
    root = tree.root if tree.root is not None else 0
    kids = children_map(tree, root)

    def emit(v: int) -> str:
        return "(" + ",".join(emit(c) for c in kids[v]) + ")"

    return emit(root)


def labeling_to_json(labels: Sequence[int]) -> str:
    return json.dumps(list(labels))


def labeling_from_json(text: str) -> tuple[int, ...]:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise InvalidInputError("labeling must be a JSON array of integers")
    return tuple(data)


# ---------------------------------------------------------------------------
# structural recognizers / TreeProfile


def is_caterpillar(tree: Tree) -> bool:
    if tree.vertex_count <= 3:
        return True
    deg = [tree.degree(v) for v in range(tree.vertex_count)]
    core = [v for v in range(tree.vertex_count) if deg[v] > 1]
    if not core:
        return True
    core_set = set(core)
    # internal vertices must form a path: every core vertex has <= 2 core neighbors
    adj = tree.adjacency()
    ends = 0
    for v in core:
        k = sum(1 for y in adj[v] if y in core_set)
        if k > 2:
            return False
        if k <= 1:
            ends += 1
    return ends <= 2


def is_m_distant(tree: Tree, m: int) -> bool:
    """True iff some path dominates the tree within distance m."""
    t = tree
    for _ in range(m):
        if t.vertex_count <= 2:
            return True
        lv = set(leaves_of(t))
        keep = [v for v in range(t.vertex_count) if v not in lv]
        if not keep:
            return True
        remap = {v: i for i, v in enumerate(keep)}
        edges = [(remap[u], remap[v]) for u, v in t.edges if u in remap and v in remap]
        t = make_tree(len(keep), edges)
    return max((t.degree(v) for v in range(t.vertex_count)), default=0) <= 2


def is_spider(tree: Tree) -> bool:
    return sum(1 for v in range(tree.vertex_count) if tree.degree(v) > 2) <= 1


def spider_leg_lengths(tree: Tree) -> Optional[list[int]]:
    """Leg lengths from the center, descending; None when not a spider."""
    if not is_spider(tree):
        return None
    big = [v for v in range(tree.vertex_count) if tree.degree(v) > 2]
    if tree.vertex_count == 1:
        return []
    center = big[0] if big else leaves_of(tree)[0]
    _, depth = parents_and_depths(tree, center)
    legs = sorted((depth[v] for v in leaves_of(tree) if v != center), reverse=True)
    return legs


def is_symmetrical(tree: Tree, root: int) -> bool:
    """Any two vertices at the same level have the same number of children."""
    kids = children_map(tree, root)
    _, depth = parents_and_depths(tree, root)
    per_level: dict[int, set[int]] = {}
    for v in range(tree.vertex_count):
        per_level.setdefault(depth[v], set()).add(len(kids[v]))
    return all(len(counts) == 1 for counts in per_level.values())


def is_radial(tree: Tree, root: int) -> bool:
    _, depth = parents_and_depths(tree, root)
    lv = leaves_of(tree)
    lv = [v for v in lv if v != root]
    if not lv:
        return True
    return len({depth[v] for v in lv}) == 1


def is_odd_radial(tree: Tree, root: int) -> bool:
    if not is_radial(tree, root):
        return False
    kids = children_map(tree, root)
    return all(len(kids[v]) % 2 == 1 for v in range(tree.vertex_count) if kids[v])


def generalized_banana_params(tree: Tree, apex: int) -> Optional[int]:
    """Path length h when the tree rooted at apex is a generalized banana tree:
    m pendant paths of length h from the apex whose far ends carry leaf bundles."""
    if tree.vertex_count == 1:
        return 0
    kids = children_map(tree, apex)
    _, depth = parents_and_depths(tree, apex)
    maxd = max(depth)
    for h in (maxd, maxd - 1):
        if h < 1:
            continue
        ok = True
        for v in range(tree.vertex_count):
            if v == apex:
                continue
            d, k = depth[v], kids[v]
            if d < h and len(k) != 1:
                ok = False
                break
            if d == h and any(kids[c] for c in k):
                ok = False
                break
            if d > h and k:
                ok = False
                break
        if ok:
            return h
    return None


def even_caterpillar_banana_params(tree: Tree, apex: int) -> Optional[tuple[int, int]]:
    """(h, k) when the tree rooted at apex is an even-caterpillar banana tree.

    Underlying shape: apex + m spine paths of length h with leaf bundles at the
    spine ends (depth h+1 tips); additionally every vertex at levels k..h-1
    (level 0 = apex when k = 0) carries a positive even number of extra leaves.
    """
    kids = children_map(tree, apex)
    _, depth = parents_and_depths(tree, apex)
    maxd = max(depth) if tree.vertex_count > 1 else 0
    if maxd == 0:
        return None
    for h in range(maxd, 0, -1):
        # spine = below the apex, each spine vertex at depth < h has exactly
        # one spine child; depth-h spine ends carry only leaf children (tips).
        bundle: dict[int, int] = {}
        ok = True
        level_of: dict[int, int] = {apex: 0}
        frontier = [apex]
        for level in range(h):
            nxt = []
            for v in frontier:
                sk = [c for c in kids[v] if kids[c]]
                lf = [c for c in kids[v] if not kids[c]]
                if level == h - 1:
                    # spine ends may be childless; a childless child stands in
                    # when no child continues downward
                    if v == apex:
                        sk, lf = kids[v][:], []
                    elif len(sk) > 1:
                        ok = False
                        break
                    elif not sk:
                        if not lf:
                            ok = False
                            break
                        sk, lf = lf[:1], lf[1:]
                if v != apex and len(sk) != 1:
                    ok = False
                    break
                bundle[v] = len(lf)
                for c in sk:
                    level_of[c] = level + 1
                nxt.extend(sk)
            if not ok:
                break
            frontier = nxt
        if not ok or not frontier:
            continue
        for v in frontier:  # depth-h spine ends: only leaves below
            if any(kids[c] for c in kids[v]):
                ok = False
                break
        if not ok:
            continue
        bundled = [v for v, b in bundle.items() if b > 0]
        if not bundled:
            return (h, h)  # plain generalized banana: k = d-1 = h
        k = min(level_of[v] for v in bundled)
        if k > h - 1:
            continue
        full = all(
            bundle.get(v, 0) > 0 and bundle[v] % 2 == 0
            for v, lvl in level_of.items()
            if k <= lvl <= h - 1
        )
        none_above = all(bundle.get(v, 0) == 0 for v, lvl in level_of.items() if lvl < k)
        if full and none_above:
            return (h, k)
    return None


@dataclass(frozen=True)
class TreeProfile:
    diameter: int
    center: tuple[int, ...]
    eccentricities: tuple[int, ...]
    caterpillar: bool
    lobster: bool
    spider: bool
    banana: bool
    generalized_banana_h: Optional[int]
    even_caterpillar_banana: Optional[tuple[int, int]]
    radial: bool
    odd_radial: bool
    symmetrical: bool
    profile_root: int = field(default=0)


def profile_tree(tree: Tree) -> TreeProfile:
    ecc = eccentricities(tree)
    centers = tree_center(tree)
    root = tree.root if tree.root is not None else centers[0]
    gen_h = None
    ecb = None
    for apex in ([root] + [v for v in range(tree.vertex_count) if v != root]):
        h = generalized_banana_params(tree, apex)
        if h is not None and gen_h is None:
            gen_h = h
        p = even_caterpillar_banana_params(tree, apex)
        if p is not None and ecb is None:
            ecb = p
        if gen_h is not None and ecb is not None:
            break
    banana = any(
        generalized_banana_params(tree, apex) == 1 for apex in range(tree.vertex_count)
    )
    return TreeProfile(
        diameter=max(ecc),
        center=tuple(centers),
        eccentricities=tuple(ecc),
        caterpillar=is_caterpillar(tree),
        lobster=is_m_distant(tree, 2),
        spider=is_spider(tree),
        banana=banana,
        generalized_banana_h=gen_h,
        even_caterpillar_banana=ecb,
        radial=is_radial(tree, root),
        odd_radial=is_odd_radial(tree, root),
        symmetrical=is_symmetrical(tree, root),
        profile_root=root,
    )
