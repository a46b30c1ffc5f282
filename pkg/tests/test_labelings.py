import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gracetree.errors import ContractViolationError, InvalidInputError
from gracetree.labelings import (
    bipartition_and_depth_sets,
    classify_labeling,
    complement_labeling,
    inverse_alpha,
    path_depth_set,
)
from gracetree.oracle import alpha_labels_for_vertex, brute_force_graceful
from gracetree.trees import make_tree, path_tree, star_tree

from helpers import random_tree
import random


def test_classify_p4():
    cls = classify_labeling(path_tree(4), (0, 4, 1, 3, 2))
    assert cls.is_graceful and cls.alpha_index == 2


def test_classify_single_edge():
    cls = classify_labeling(path_tree(1), (0, 1))
    assert cls.is_graceful and cls.alpha_index == 0


def test_classify_rho_boundaries():
    # (0,3,1) on P2 has edge labels {3,2}: no valid rho indexing (x_1 must be
    # 1 or 4), so not even rho despite labels <= 2n
    cls = classify_labeling(path_tree(2), (0, 3, 1))
    assert not cls.is_graceful and not cls.is_sigma and not cls.is_rho
    # (0,1,4): edge labels {1,3} with x_1 = 1, x_2 = 3 = (2n+1)-2: rho only
    cls = classify_labeling(path_tree(2), (0, 1, 4))
    assert cls.is_rho and not cls.is_sigma


def test_hierarchy_property():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(2, 7)
        t = random_tree(rng, n)
        labels = rng.sample(range(2 * (n - 1) + 1), n)
        try:
            cls = classify_labeling(t, labels)
        except InvalidInputError:
            continue
        if cls.is_graceful:
            assert cls.is_sigma
        if cls.is_sigma:
            assert cls.is_rho
        if cls.alpha_index is not None:
            assert cls.is_graceful


def test_complement():
    p4 = path_tree(4)
    assert complement_labeling(p4, (0, 4, 1, 3, 2)) == (4, 0, 3, 1, 2)
    star = star_tree(5)
    assert complement_labeling(star, (0, 1, 2, 3, 4, 5)) == (5, 4, 3, 2, 1, 0)
    with pytest.raises(ContractViolationError):
        complement_labeling(p4, (0, 1, 2, 3, 4))


@given(st.integers(2, 9), st.randoms())
@settings(max_examples=40, deadline=None)
def test_complement_involution(n, rnd):
    t = random_tree(random.Random(rnd.randint(0, 10**9)), n)
    f = brute_force_graceful(t)
    assert complement_labeling(t, complement_labeling(t, f)) == f


def test_complement_alpha_index():
    p4 = path_tree(4)
    f = (0, 4, 1, 3, 2)
    comp = complement_labeling(p4, f)
    assert classify_labeling(p4, comp).alpha_index == 4 - 2 - 1


def test_inverse_alpha():
    p4 = path_tree(4)
    f = (0, 4, 1, 3, 2)
    inv = inverse_alpha(p4, f)
    cls = classify_labeling(p4, inv)
    assert cls.alpha_index == 2
    # edge label e maps to (n+1)-e
    before = sorted(abs(f[u] - f[v]) for u, v in p4.edges)
    after = sorted(5 - abs(f[u] - f[v]) for u, v in p4.edges)
    got = sorted(abs(inv[u] - inv[v]) for u, v in p4.edges)
    assert got == sorted(after)
    assert inverse_alpha(path_tree(1), (0, 1)) == (0, 1)
    k13 = star_tree(3)
    inv = inverse_alpha(k13, (0, 1, 2, 3))
    assert inv[0] == 0 and sorted(inv[1:]) == [1, 2, 3]
    with pytest.raises(ContractViolationError):
        inverse_alpha(make_tree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]), (0, 6, 2, 5, 4, 3, 1))


def test_bipartition_and_depth_sets():
    (a, b), dp = bipartition_and_depth_sets(path_tree(1))
    assert dp[0] == frozenset({0}) and dp[1] == frozenset({0})
    t = path_tree(4)
    (a, b), dp = bipartition_and_depth_sets(t)
    for u, v in t.edges:
        assert (u in a) != (v in a)
    assert dp[0] == frozenset({0, 1, 2})
    (a, b), dp = bipartition_and_depth_sets(star_tree(4))
    center_part = a if 0 in a else b
    assert len(center_part) == 1 and dp[0] == frozenset({0})


def test_path_depth_set_exceptions():
    assert path_depth_set(4, 2) == frozenset({1, 2}) - {0} | {1, 2}
    assert 0 not in path_depth_set(4, 2)
    assert 2 not in path_depth_set(8, 0)  # leaf of P_{4k}, k = 2
    assert 1 not in path_depth_set(6, 1)  # adjacent to a leaf of P_6
    assert path_depth_set(5, 0) == frozenset({0, 1, 2})


@pytest.mark.parametrize("n", range(1, 9))
def test_path_depth_set_matches_oracle(n):
    t = path_tree(n)
    for v in range(n + 1):
        assert path_depth_set(n, v) == frozenset(alpha_labels_for_vertex(t, v))
