import pytest

from gracetree.errors import InvalidInputError
from gracetree.trees import (
    Tree,
    even_caterpillar_banana_params,
    generalized_banana_params,
    is_caterpillar,
    is_m_distant,
    is_odd_radial,
    is_spider,
    is_symmetrical,
    leaves_of,
    make_tree,
    path_tree,
    profile_tree,
    rooted_isomorphism,
    spider_leg_lengths,
    star_tree,
    tree_from_parens,
    tree_from_text,
    tree_to_parens,
    tree_to_text,
)


def test_tree_invariants():
    with pytest.raises(InvalidInputError):
        make_tree(3, [(0, 1)])  # not enough edges
    with pytest.raises(InvalidInputError):
        make_tree(3, [(0, 1), (0, 1)])  # duplicate
    with pytest.raises(InvalidInputError):
        make_tree(3, [(0, 0), (1, 2)])  # self-loop
    with pytest.raises(InvalidInputError):
        make_tree(4, [(0, 1), (2, 3), (0, 2), (1, 3)][:3])  # cycle/disconnected mix


def test_text_round_trip():
    t = make_tree(5, [(0, 1), (1, 2), (1, 3), (3, 4)], root=1)
    assert tree_from_text(tree_to_text(t)) == t


def test_text_errors():
    with pytest.raises(InvalidInputError):
        tree_from_text("n=3\n0 1\n0 1")
    with pytest.raises(InvalidInputError):
        tree_from_text("0 1\n1 2")  # missing n=


def test_parens_round_trip():
    t = tree_from_parens("((),(()),())")
    assert t.vertex_count == 5 and t.root == 0
    assert tree_from_parens(tree_to_parens(t)) == t
    star = tree_from_parens("((),(),())")
    assert sorted(star.edges) == [(0, 1), (0, 2), (0, 3)]


def test_recognizers():
    p6 = path_tree(6)
    assert is_caterpillar(p6) and is_spider(p6)
    assert spider_leg_lengths(star_tree(5)) == [1] * 5
    lob = make_tree(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)])
    assert is_m_distant(lob, 2)
    spider = make_tree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert spider_leg_lengths(spider) == [2, 2, 2]
    assert not is_caterpillar(spider)
    assert is_symmetrical(spider, 0)
    assert is_odd_radial(spider, 0)


def test_profile_banana_flags():
    # 3 stars K_{1,2} joined to an apex: diameter 4 banana tree
    t = make_tree(
        10,
        [(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6), (0, 7), (7, 8), (7, 9)],
    )
    prof = profile_tree(t)
    assert prof.diameter == 4
    assert prof.banana
    assert prof.generalized_banana_h == 1
    # star: degenerate banana
    prof = profile_tree(star_tree(5))
    assert prof.banana and prof.caterpillar and prof.spider


def test_even_caterpillar_params():
    # apex + 3 spines of length 2 with even bundles at level 1 + tips
    edges = []
    nid = 1
    for bundle, tip in ((2, 1), (4, 1), (2, 3)):
        w1 = nid
        edges.append((0, w1))
        nid += 1
        for _ in range(bundle):
            edges.append((w1, nid))
            nid += 1
        w2 = nid
        edges.append((w1, w2))
        nid += 1
        for _ in range(tip):
            edges.append((w2, nid))
            nid += 1
    t = make_tree(nid, edges, root=0)
    assert even_caterpillar_banana_params(t, 0) == (2, 1)
    assert generalized_banana_params(t, 0) is None


def test_rooted_isomorphism():
    t1 = make_tree(4, [(0, 1), (0, 2), (2, 3)])
    t2 = make_tree(4, [(3, 1), (3, 0), (0, 2)])
    mapping = rooted_isomorphism(t1, 0, t2, 3)
    assert mapping is not None and mapping[0] == 3
    for u, v in t1.edges:
        assert t2.has_edge(mapping[u], mapping[v])
    assert rooted_isomorphism(t1, 0, t2, 0) is None


def test_leaves():
    assert leaves_of(path_tree(1)) == [0, 1]
    assert leaves_of(make_tree(1, [])) == [0]
