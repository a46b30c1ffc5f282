import random

import pytest

from gracetree.classic import (
    Diameter4Instance,
    cycle_graph,
    complete_bipartite_graph,
    complete_graph,
    diameter4_instance_tree,
    diameter4_zero_centered,
    even_degree_obstruction,
    is_graceful_graph_labeling,
    label_caterpillar,
    label_complete,
    label_complete_bipartite,
    label_cycle,
    label_path,
    label_star,
)
from gracetree.errors import InvalidInputError
from gracetree.labelings import classify_labeling
from gracetree.oracle import brute_force_graceful
from gracetree.trees import eccentricities, path_tree, star_tree

from helpers import random_caterpillar


@pytest.mark.parametrize("n", [1, 4, 5, 17, 30])
def test_label_path(n):
    lab = label_path(n)
    cls = classify_labeling(path_tree(n), lab)
    assert cls.is_graceful and cls.alpha_index == n // 2


def test_label_path_goldens():
    assert label_path(4) == (0, 4, 1, 3, 2)
    assert label_path(1) == (0, 1)
    assert label_path(5) == (0, 5, 1, 4, 2, 3)
    assert label_path(0) == (0,)


@pytest.mark.parametrize("m", [1, 3, 9])
def test_label_star(m):
    lab = label_star(m)
    assert lab == tuple(range(m + 1))
    cls = classify_labeling(star_tree(m), lab)
    assert cls.is_graceful and cls.alpha_index == 0


def test_label_caterpillar_start_zero():
    rng = random.Random(77)
    for _ in range(60):
        t = random_caterpillar(rng)
        if t.vertex_count < 2:
            continue
        ecc = eccentricities(t)
        mx = max(ecc)
        adj = t.adjacency()
        cands = [
            v
            for v in range(t.vertex_count)
            if ecc[v] == mx or any(ecc[y] == mx for y in adj[v])
        ]
        start = rng.choice(cands)
        lab = label_caterpillar(t, start)
        cls = classify_labeling(t, lab)
        assert cls.is_graceful and cls.alpha_index is not None
        assert lab[start] == 0


def test_label_caterpillar_rejections():
    spider = star_tree(3)
    path3 = path_tree(3)
    with pytest.raises(InvalidInputError):
        label_caterpillar(path3, 1)  # interior vertex, eccentricity not maximal
    from gracetree.trees import make_tree

    not_cat = make_tree(
        7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    )  # spider (2,2,2)
    with pytest.raises(InvalidInputError):
        label_caterpillar(not_cat, 2)
    lab = label_caterpillar(spider, 1)
    assert lab[1] == 0


def test_label_cycle_goldens():
    assert label_cycle(4) == (2, 0, 4, 1)
    assert label_cycle(3) == (2, 0, 3)
    assert label_cycle(5) is None
    with pytest.raises(InvalidInputError):
        label_cycle(2)


@pytest.mark.parametrize("n", range(3, 17))
def test_label_cycle_soundness(n):
    lab = label_cycle(n)
    if n % 4 in (1, 2):
        assert lab is None
        return
    g = cycle_graph(n)
    assert is_graceful_graph_labeling(g, lab)
    if n % 4 == 0:
        k = n // 2 - 1
        assert all(min(lab[u], lab[v]) <= k < max(lab[u], lab[v]) for u, v in g.edges)


def test_label_complete():
    assert label_complete(4) == (0, 1, 4, 6)
    assert label_complete(3) == (0, 1, 3)
    assert label_complete(5) is None
    for n in (1, 2, 3, 4):
        assert is_graceful_graph_labeling(complete_graph(n), label_complete(n))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 7) for n in range(1, 7)])
def test_label_complete_bipartite(m, n):
    lab = label_complete_bipartite(m, n)
    g = complete_bipartite_graph(m, n)
    assert is_graceful_graph_labeling(g, lab)
    k = m - 1
    assert all(min(lab[u], lab[v]) <= k < max(lab[u], lab[v]) for u, v in g.edges)


def test_kbip_goldens():
    assert label_complete_bipartite(2, 3) == (0, 1, 2, 4, 6)
    assert label_complete_bipartite(1, 4) == (0, 1, 2, 3, 4)


def test_even_degree_obstruction():
    assert even_degree_obstruction(cycle_graph(5))
    assert even_degree_obstruction(cycle_graph(6))
    assert not even_degree_obstruction(cycle_graph(4))
    from gracetree.classic import make_graph

    tree = make_graph(3, [(0, 1), (1, 2)])
    assert not even_degree_obstruction(tree)


def test_diameter4_bounds_empty():
    inst = Diameter4Instance(1, 0, 3)
    assert diameter4_zero_centered(inst) is None


def test_diameter4_matches_brute_force():
    for m1 in range(1, 9):
        for m2 in range(1, m1 + 1):
            n = m1 + m2 + 2
            if n > 12:
                continue
            inst = Diameter4Instance(m1, m2, n)
            witness = diameter4_zero_centered(inst)
            if witness is not None:
                x, r = witness
                assert m1 == (m2 + 2 - x) * (r - 1) - x
                assert not (x % 2 == 1 and r % 2 == 1)
            tree = diameter4_instance_tree(inst)
            oracle = brute_force_graceful(tree, fixed=(0, 0)) is not None
            assert (witness is not None) == oracle, (m1, m2, witness, oracle)
