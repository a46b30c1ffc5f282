"""Graceful-tree composition: the delta constructions and their generalized
forms, edge subdivision, contrees of (almost) perfect matchings, joining at
0-labeled vertices, symmetrical trees, and cyclic decomposition of K_{2n+1}.

Vertex counts (not edge counts) parameterize the delta constructions, matching
their usual statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ContractViolationError, InvalidInputError
from .labelings import Labeling, classify_labeling, complement_labeling, inverse_alpha
from .trees import (
    Tree,
    children_map,
    eccentricities,
    make_tree,
    parents_and_depths,
    star_tree,
)


# ---------------------------------------------------------------------------
# matchings


def validate_matching(tree: Tree, edges: Iterable[tuple[int, int]]) -> str:
    """'perfect', 'almost_perfect', or raise; edges must be disjoint tree edges."""
    m = [tuple(sorted(e)) for e in edges]
    covered: set[int] = set()
    for e in m:
        if e not in tree.edges:
            raise InvalidInputError(f"{e} is not a tree edge")
        if e[0] in covered or e[1] in covered:
            raise InvalidInputError(f"matching edges share vertex in {e}")
        covered.update(e)
    missing = tree.vertex_count - len(covered)
    if missing == 0:
        return "perfect"
    if missing == 1:
        return "almost_perfect"
    raise InvalidInputError(f"{missing} vertices uncovered; not (almost) perfect")


def orient_matching(tree: Tree, matching: Iterable[tuple[int, int]]) -> dict[tuple[int, int], tuple[int, int]]:
    """Direct each matching edge as (tail, head) so that the two ends of every
    non-matching edge are both heads or both tails. Incremental construction:
    attach a vertex adjacent to the built subtree, then its matched partner."""
    m = [tuple(sorted(e)) for e in matching]
    if validate_matching(tree, m) != "perfect":
        raise InvalidInputError("orientation needs a perfect matching")
    partner: dict[int, int] = {}
    for u, v in m:
        partner[u] = v
        partner[v] = u
    adj = tree.adjacency()
    first = m[0]
    orientation: dict[tuple[int, int], tuple[int, int]] = {first: (first[0], first[1])}
    role: dict[int, str] = {first[0]: "tail", first[1]: "head"}
    placed = {first[0], first[1]}
    while len(placed) < tree.vertex_count:
        for x in list(placed):
            nxt = next((y for y in adj[x] if y not in placed), None)
            if nxt is not None:
                y, z = nxt, partner[nxt]
                # the connecting edge (x, y) is not in M; copy x's role onto y
                role[y] = role[x]
                role[z] = "head" if role[y] == "tail" else "tail"
                e = tuple(sorted((y, z)))
                orientation[e] = (y, z) if role[y] == "tail" else (z, y)
                placed.update((y, z))
                break
        else:  # pragma: no cover - tree connectivity guarantees progress
            raise AssertionError("matching orientation stalled")
    for u, v in tree.edges:
        if (u, v) in orientation:
            continue
        if role[u] != role[v]:
            raise InvalidInputError("orientation invariant failed")  # pragma: no cover
    return orientation


def contree(tree: Tree, matching: Iterable[tuple[int, int]]) -> tuple[Tree, list[tuple[int, ...]]]:
    """Contract the matching; returns the contree and, per contree vertex, the
    matched pair (or the uncovered singleton) it came from."""
    m = [tuple(sorted(e)) for e in matching]
    validate_matching(tree, m)
    group: dict[int, int] = {}
    classes: list[tuple[int, ...]] = []
    for u, v in m:
        group[u] = group[v] = len(classes)
        classes.append((u, v))
    for x in range(tree.vertex_count):
        if x not in group:
            group[x] = len(classes)
            classes.append((x,))
    edges = set()
    for u, v in tree.edges:
        gu, gv = group[u], group[v]
        if gu != gv:
            edges.add((min(gu, gv), max(gu, gv)))
    return make_tree(len(classes), edges), classes


# ---------------------------------------------------------------------------
# delta constructions


@dataclass(frozen=True)
class DeltaResult:
    tree: Tree
    labels: Labeling
    copy_vertex: dict[tuple[int, int], int]  # (S-vertex, T-vertex) -> new id
    spare_vertex: Optional[int] = None  # the bare vertex u of the +1 form


def _bipartition_flags(tree: Tree, anchor: int) -> list[bool]:
    """True for vertices in the part containing `anchor`."""
    _, depth = parents_and_depths(tree, anchor)
    return [d % 2 == 0 for d in depth]


def delta_construction(
    s_tree: Tree,
    f: Sequence[int],
    t_tree: Tree,
    g: Sequence[int],
    v: int,
    attach: Optional[dict[tuple[int, int], int]] = None,
    part_a_anchor: Optional[int] = None,
) -> DeltaResult:
    """S delta T: one copy of T per vertex of S, inter-copy edges joining
    corresponding vertices (the fixed vertex v classically; `attach` may remap
    individual S-edges in the generalized form)."""
    if not classify_labeling(s_tree, f).is_graceful:
        raise ContractViolationError("S must carry a graceful labeling")
    if not classify_labeling(t_tree, g).is_graceful:
        raise ContractViolationError("T must carry a graceful labeling")
    n_s, n_t = s_tree.vertex_count, t_tree.vertex_count
    attach = attach or {}
    for e, t in attach.items():
        if tuple(sorted(e)) not in s_tree.edges or not (0 <= t < n_t):
            raise InvalidInputError(f"bad attachment {e} -> {t}")
    in_a = _bipartition_flags(t_tree, part_a_anchor if part_a_anchor is not None else v)

    def aux(i: int, x: int) -> int:
        return i * n_t + g[x] if in_a[x] else (n_s - i - 1) * n_t + g[x]

    copy_vertex = {(x, t): x * n_t + t for x in range(n_s) for t in range(n_t)}
    edges = []
    for x in range(n_s):
        for a, b in t_tree.edges:
            edges.append((copy_vertex[(x, a)], copy_vertex[(x, b)]))
    for e in sorted(s_tree.edges):
        t = attach.get(e, v)
        edges.append((copy_vertex[(e[0], t)], copy_vertex[(e[1], t)]))
    labels = [0] * (n_s * n_t)
    for (x, t), nid in copy_vertex.items():
        labels[nid] = aux(f[x], t)
    return DeltaResult(make_tree(n_s * n_t, edges), tuple(labels), copy_vertex)


def delta_plus_one(
    s_tree: Tree,
    f: Sequence[int],
    u: int,
    t_tree: Tree,
    g: Sequence[int],
    v: int,
    attach: Optional[dict[tuple[int, int], int]] = None,
) -> DeltaResult:
    """S delta+1 T: copies of T at every vertex of S except u; edges at u keep
    the fixed vertex v. Needs f(u) = n_S - 1 and g(v) = 0."""
    n_s, n_t = s_tree.vertex_count, t_tree.vertex_count
    if not classify_labeling(s_tree, f).is_graceful:
        raise ContractViolationError("S must carry a graceful labeling")
    if not classify_labeling(t_tree, g).is_graceful:
        raise ContractViolationError("T must carry a graceful labeling")
    if f[u] != n_s - 1:
        raise ContractViolationError(f"f(u) must be {n_s - 1}, got {f[u]}")
    if g[v] != 0:
        raise ContractViolationError(f"g(v) must be 0, got {g[v]}")
    attach = attach or {}
    in_a = _bipartition_flags(t_tree, v)

    def aux(i: int, x: int) -> int:
        return i * n_t + g[x] if in_a[x] else (n_s - i - 2) * n_t + g[x]

    copies = [x for x in range(n_s) if x != u]
    copy_vertex = {}
    nid = 0
    for x in copies:
        for t in range(n_t):
            copy_vertex[(x, t)] = nid
            nid += 1
    spare = nid
    total = nid + 1
    edges = []
    for x in copies:
        for a, b in t_tree.edges:
            edges.append((copy_vertex[(x, a)], copy_vertex[(x, b)]))
    for e in sorted(s_tree.edges):
        if u in e:
            other = e[0] if e[1] == u else e[1]
            if e in attach and attach[e] != v:
                raise InvalidInputError("edges at u must attach at the fixed vertex")
            edges.append((copy_vertex[(other, v)], spare))
        else:
            t = attach.get(e, v)
            edges.append((copy_vertex[(e[0], t)], copy_vertex[(e[1], t)]))
    labels = [0] * total
    for (x, t), i in copy_vertex.items():
        labels[i] = aux(f[x], t)
    labels[spare] = (n_s - 1) * n_t
    return DeltaResult(make_tree(total, edges), tuple(labels), copy_vertex, spare)


# ---------------------------------------------------------------------------
# applications


def subdivide_graceful(tree: Tree, f: Sequence[int], k: int = 1) -> tuple[Tree, Labeling]:
    """Replace each edge with a path of length k+1 (k new vertices per edge).

    Generalized delta+1 with P_k copies: copies are oriented alternately by
    depth from the spare vertex u (the vertex labeled n), which is exactly the
    orientation the matching lemma would produce.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    cls = classify_labeling(tree, f)
    if not cls.is_graceful:
        raise ContractViolationError("subdivision needs a graceful labeling")
    n_s = tree.vertex_count
    if n_s == 1:
        return tree, tuple(f)
    u = max(range(n_s), key=lambda x: f[x])  # f(u) = n_S - 1 in vertex count
    # T = the path with k edges; fixed vertex v = position 0, alpha labeling
    # 0, k, 1, k-1, ... along positions
    t_path = make_tree(k + 1, [(i, i + 1) for i in range(k)])
    g = [0] * (k + 1)
    lo, hi = 0, k
    for pos in range(k + 1):
        if pos % 2 == 0:
            g[pos] = lo
            lo += 1
        else:
            g[pos] = hi
            hi -= 1
    parent, depth = parents_and_depths(tree, u)
    # copy at x covers the subdivided edge parent(x)-x: positions map so that
    # x sits at position k (odd depth) or position 0 (even depth)
    attach: dict[tuple[int, int], int] = {}
    for x in range(n_s):
        p = parent[x]
        if p is None:
            continue
        e = (min(p, x), max(p, x))
        if p == u:
            attach[e] = 0
        else:
            # end of the edge inside p's copy: p at position k if depth odd
            attach[e] = k if depth[p] % 2 == 1 else 0
    res = delta_plus_one(tree, list(f), u, t_path, g, 0, attach)
    # rebuild as the subdivided tree: identify original vertices for clarity
    new_tree, labels = res.tree, res.labels
    # positions of original vertices in the new tree
    pos_of = {u: res.spare_vertex}
    for x in range(n_s):
        if x == u:
            continue
        pos_of[x] = res.copy_vertex[(x, k if depth[x] % 2 == 1 else 0)]
    out_cls = classify_labeling(new_tree, labels)
    if not out_cls.is_graceful:  # pragma: no cover - construction guarantee
        raise InvalidInputError("subdivision produced a non-graceful labeling")
    return new_tree, labels


def label_via_contree(
    tree: Tree,
    matching: Iterable[tuple[int, int]],
    contree_labels: Sequence[int],
) -> Labeling:
    """Lift a graceful labeling of the contree to the tree (generalized delta
    with P_1 copies for a perfect matching; generalized delta+1 when almost
    perfect, with the singleton's contree vertex labeled 0)."""
    m = [tuple(sorted(e)) for e in matching]
    mode = validate_matching(tree, m)
    s_tree, classes = contree(tree, m)
    n_s = s_tree.vertex_count
    cls = classify_labeling(s_tree, contree_labels)
    if not cls.is_graceful:
        raise ContractViolationError("contree labeling must be graceful")
    if mode == "perfect":
        orientation = orient_matching(tree, m)
        head_of = {e: hv for e, (tv, hv) in orientation.items()}
        labels = [0] * tree.vertex_count
        for cid, pair in enumerate(classes):
            e = tuple(sorted(pair))
            head = head_of[e]
            tail = e[0] if e[1] == head else e[1]
            labels[head] = 2 * contree_labels[cid]
            labels[tail] = 2 * (n_s - contree_labels[cid] - 1) + 1
        return tuple(labels)
    # almost perfect: singleton must be labeled 0, complemented to n_S - 1
    singleton = next(p for p in classes if len(p) == 1)
    sid = classes.index(singleton)
    if contree_labels[sid] != 0:
        raise ContractViolationError("singleton's contree vertex must be labeled 0")
    comp = complement_labeling(s_tree, contree_labels)
    x0 = singleton[0]
    # orient via a perfect matching of the tree plus a pendant at x0
    aug = make_tree(
        tree.vertex_count + 1, list(tree.edges) + [(x0, tree.vertex_count)]
    )
    aug_matching = m + [(x0, tree.vertex_count)]
    orientation = orient_matching(aug, aug_matching)
    head_of = {e: hv for e, (tv, hv) in orientation.items()}
    x0_is_head = head_of[(min(x0, tree.vertex_count), max(x0, tree.vertex_count))] == x0
    labels = [0] * tree.vertex_count
    labels[x0] = (n_s - 1) * 2
    for cid, pair in enumerate(classes):
        if len(pair) == 1:
            continue
        e = tuple(sorted(pair))
        head = head_of[e]
        tail = e[0] if e[1] == head else e[1]
        v_end, w_end = (head, tail) if x0_is_head else (tail, head)
        labels[v_end] = 2 * comp[cid]
        labels[w_end] = 2 * (n_s - comp[cid] - 2) + 1
    out = tuple(labels)
    if not classify_labeling(tree, out).is_graceful:  # pragma: no cover
        raise InvalidInputError("contree lift produced a non-graceful labeling")
    return out


def join_at_zero(
    t1: Tree,
    f1: Sequence[int],
    v1: int,
    t2: Tree,
    f2: Sequence[int],
    v2: int,
    mode: str = "graceful",
) -> tuple[Tree, Labeling, int]:
    """Identify v1 (alpha labeling, label 0) with v2 (alpha or graceful, label
    0); returns (tree, labeling, merged vertex id). Alpha in both -> alpha out
    with index k1+k2; otherwise graceful."""
    c1 = classify_labeling(t1, f1)
    if c1.alpha_index is None or f1[v1] != 0:
        raise ContractViolationError("first tree needs an alpha labeling with 0 at v1")
    c2 = classify_labeling(t2, f2)
    if f2[v2] != 0:
        raise ContractViolationError("second tree needs label 0 at v2")
    if mode == "alpha" and c2.alpha_index is None:
        raise ContractViolationError("alpha mode needs an alpha labeling of T2")
    if mode not in ("alpha", "graceful") or not c2.is_graceful:
        if not c2.is_graceful:
            raise ContractViolationError("second labeling must be graceful")
        raise InvalidInputError(f"unknown mode {mode!r}")
    k1 = c1.alpha_index
    n2 = t2.edge_count
    inv = inverse_alpha(t1, f1)  # inv[v1] = k1
    n1v = t1.vertex_count
    # ids: T1 keeps its ids; T2 vertices map to n1v + (index among non-v2)
    t2_map = {}
    nid = n1v
    for x in range(t2.vertex_count):
        if x == v2:
            t2_map[x] = v1
        else:
            t2_map[x] = nid
            nid += 1
    edges = list(t1.edges) + [
        (t2_map[a], t2_map[b]) for a, b in t2.edges
    ]
    total = n1v + t2.vertex_count - 1
    labels = [0] * total
    for x in range(n1v):
        labels[x] = inv[x] if inv[x] <= k1 else inv[x] + n2
    for x in range(t2.vertex_count):
        if x != v2:
            labels[t2_map[x]] = k1 + f2[x]
    return make_tree(total, edges), tuple(labels), v1


def attach_caterpillar(
    tree: Tree, f: Sequence[int], u: int, caterpillar: Tree, v: int
) -> tuple[Tree, Labeling, int]:
    """Attach a caterpillar at a 0-labeled vertex of a graceful tree by
    identifying u with a max-eccentricity vertex v of the caterpillar."""
    from .classic import label_caterpillar

    h_labels = label_caterpillar(caterpillar, v)
    return join_at_zero(caterpillar, h_labels, v, tree, list(f), u, mode="graceful")


def label_symmetrical(tree: Tree) -> Labeling:
    """Graceful labeling of a symmetrical rooted tree with the root labeled 0,
    by repeated delta+1 with stars."""
    from .trees import is_symmetrical

    root = tree.root if tree.root is not None else 0
    if not is_symmetrical(tree, root):
        raise InvalidInputError("tree is not symmetrical at its root")
    kids = children_map(tree, root)
    _, depth = parents_and_depths(tree, root)
    levels = max(depth) if tree.vertex_count > 1 else 0
    counts = []
    for lvl in range(levels):
        counts.append(len(kids[next(v for v in range(tree.vertex_count) if depth[v] == lvl)]))
    # build bottom-up: T_d = single vertex; T_l = star(c_l) delta+1 T_{l+1}
    cur = make_tree(1, [])
    cur_labels: Labeling = (0,)
    for c in reversed(counts):
        star = star_tree(c)
        f = tuple(complement_labeling(star, tuple(range(c + 1))))  # center = c
        res = delta_plus_one(star, f, 0, cur, cur_labels, _zero_vertex(cur_labels))
        cur = res.tree.with_root(res.spare_vertex)
        cur_labels = complement_labeling(res.tree, res.labels)  # root -> 0
    # map back onto the input tree by rooted isomorphism
    from .trees import rooted_isomorphism

    assert cur.root is not None
    mapping = rooted_isomorphism(tree, root, cur, cur.root)
    if mapping is None:  # pragma: no cover - same level profile by construction
        raise InvalidInputError("symmetrical construction mismatch")
    return tuple(cur_labels[mapping[x]] for x in range(tree.vertex_count))


def _zero_vertex(labels: Sequence[int]) -> int:
    return next(i for i, x in enumerate(labels) if x == 0)


def cyclic_decomposition(tree: Tree, f: Sequence[int]) -> list[list[tuple[int, int]]]:
    """The 2n+1 turned copies of the tree inside K_{2n+1}, given a graceful
    labeling; vertices of K_{2n+1} are residues mod 2n+1."""
    if not classify_labeling(tree, f).is_graceful:
        raise ContractViolationError("cyclic decomposition needs a graceful labeling")
    n = tree.edge_count
    mod = 2 * n + 1
    base = [(f[u], f[v]) for u, v in sorted(tree.edges)]
    out = []
    for i in range(mod):
        out.append([((a + i) % mod, (b + i) % mod) for a, b in base])
    return out
