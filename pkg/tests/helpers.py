"""Shared builders for tests: star transfer contexts and random tree families."""

import random

from gracetree.labelings import classify_labeling
from gracetree.transfers import make_alternating, make_transferable
from gracetree.trees import make_tree, star_tree


def star_context(total, seq_len):
    """Star K_{1,n} (center 0); the sequence is the first seq_len closure
    positions and the transferable set is the remaining leaves. seq_len must
    be odd so that c + d = a + b."""
    assert seq_len % 2 == 1 and seq_len >= 3
    n = total + seq_len - 1
    t = star_tree(n)
    labels = tuple(range(n + 1))
    order = [0]
    lo, hi = 1, n
    while lo <= hi:
        order.append(hi)
        hi -= 1
        if lo <= hi:
            order.append(lo)
            lo += 1
    seq = make_alternating(labels, order[:seq_len])
    leaves = make_transferable(t, labels, seq, order[seq_len:])
    return t, labels, seq, leaves


def aux_tree_context(total):
    """The (3;1,1,1) odd radial auxiliary labeling: a 3-term descending-gap
    sequence with `total` transferable leaves. Star-independent context."""
    from gracetree.labelers import label_odd_radial_aux

    base = make_tree(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)], root=0)
    t, labels, seq, ts = label_odd_radial_aux(base, total)
    return t, labels, seq, ts


def complement_star_context(total, seq_len):
    """A star labeled with the complement (center n): the closure runs
    n, 0, n-1, 1, ... giving the ascending-gap form."""
    assert seq_len % 2 == 1 and seq_len >= 3
    n = total + seq_len - 1
    t = star_tree(n)
    labels = tuple([n] + [n - x for x in range(1, n + 1)])
    by_label = {x: v for v, x in enumerate(labels)}
    order = [by_label[n]]
    lo, hi = 0, n - 1
    while lo <= hi:
        order.append(by_label[lo])
        lo += 1
        if lo <= hi:
            order.append(by_label[hi])
            hi -= 1
    seq = make_alternating(labels, order[:seq_len])
    leaves = make_transferable(t, labels, seq, order[seq_len:])
    return t, labels, seq, leaves


def assert_graceful(tree, labels):
    assert classify_labeling(tree, labels).is_graceful


def random_tree(rng: random.Random, n: int):
    return make_tree(n, [(rng.randint(0, i - 1), i) for i in range(1, n)])


def random_caterpillar(rng: random.Random, max_vertices=40):
    spine_len = rng.randint(0, 10)
    edges = [(i, i + 1) for i in range(spine_len)]
    nid = spine_len + 1
    for s in range(spine_len + 1):
        for _ in range(rng.randint(0, 3)):
            if nid >= max_vertices:
                break
            edges.append((s, nid))
            nid += 1
    return make_tree(nid, edges)


def random_symmetrical(rng: random.Random, max_vertices=60):
    while True:
        depth = rng.randint(1, 3)
        counts = [rng.randint(1, 3) for _ in range(depth)]
        size, width = 1, 1
        for c in counts:
            width *= c
            size += width
        if size <= max_vertices:
            break
    edges = []
    prev = [0]
    nid = 1
    for c in counts:
        nxt = []
        for p in prev:
            for _ in range(c):
                edges.append((p, nid))
                nxt.append(nid)
                nid += 1
        prev = nxt
    return make_tree(nid, edges, root=0)


def tree_from_counts(spec):
    """A rooted tree from a nested count structure: ints are leaf bundles."""
    edges = []
    nid = [1]

    def rec(parent, node):
        if isinstance(node, int):
            for _ in range(node):
                edges.append((parent, nid[0]))
                nid[0] += 1
            return
        for child in node:
            w = nid[0]
            edges.append((parent, w))
            nid[0] += 1
            rec(w, child)

    rec(0, spec)
    return make_tree(nid[0], edges, root=0)


def random_generalized_banana(rng: random.Random, max_edges=60):
    while True:
        h = rng.randint(1, 4)
        m = rng.randint(1, 6)
        edges = []
        nid = 1
        for _ in range(m):
            prev = 0
            for _ in range(h):
                edges.append((prev, nid))
                prev = nid
                nid += 1
            for _ in range(rng.randint(0, 4)):
                edges.append((prev, nid))
                nid += 1
        if 1 <= nid - 1 <= max_edges:
            return make_tree(nid, edges, root=0)


def random_even_caterpillar_banana(rng: random.Random, max_edges=60):
    while True:
        h = rng.randint(1, 4)
        k = rng.randint(0, h)
        m = rng.randint(1, 5)
        edges = []
        nid = 1
        if k == 0:
            for _ in range(rng.choice([2, 4])):
                edges.append((0, nid))
                nid += 1
        for _ in range(m):
            prev = 0
            for lvl in range(1, h + 1):
                edges.append((prev, nid))
                prev = nid
                nid += 1
                if max(k, 1) <= lvl <= h - 1:
                    for _ in range(rng.choice([2, 4])):
                        edges.append((prev, nid))
                        nid += 1
            for _ in range(rng.randint(0, 4)):  # tip leaves
                edges.append((prev, nid))
                nid += 1
        if nid - 1 <= max_edges:
            return make_tree(nid, edges, root=0)
