"""Vertex labelings, the rho/sigma/graceful/alpha hierarchy, and label transforms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ContractViolationError, InvalidInputError
from .trees import Tree, parents_and_depths

Labeling = tuple[int, ...]


def as_labeling(labels: Sequence[int]) -> Labeling:
    return tuple(int(x) for x in labels)


def edge_labels(tree: Tree, labels: Sequence[int]) -> list[int]:
    return sorted(abs(labels[u] - labels[v]) for u, v in tree.edges)


@dataclass(frozen=True)
class LabelingClassification:
    is_rho: bool
    is_sigma: bool
    is_graceful: bool
    alpha_index: Optional[int]


def _check_defined(tree: Tree, labels: Sequence[int]) -> None:
    if len(labels) != tree.vertex_count:
        raise InvalidInputError(
            f"labeling covers {len(labels)} vertices, tree has {tree.vertex_count}"
        )
    if any(x < 0 for x in labels):
        raise InvalidInputError("labels must be non-negative")
    if len(set(labels)) != len(labels):
        raise InvalidInputError("labeling is not injective")


def classify_labeling(tree: Tree, labels: Sequence[int]) -> LabelingClassification:
    """Evaluate the rho/sigma/graceful definitions and find the least alpha index."""
    _check_defined(tree, labels)
    n = tree.edge_count
    elabs = [abs(labels[u] - labels[v]) for u, v in tree.edges]
    distinct_edges = len(set(elabs)) == len(elabs) and 0 not in elabs
    in_2n = all(x <= 2 * n for x in labels)

    if n == 0:
        is_rho = True
    else:
        # E must admit an indexing x_1..x_n with x_i = i or (2n+1)-i
        is_rho = distinct_edges and in_2n and _rho_indexable(set(elabs), n)

    is_sigma = n == 0 or (distinct_edges and in_2n and set(elabs) == set(range(1, n + 1)))
    is_graceful = is_sigma and all(x <= n for x in labels)

    alpha_index = None
    if is_graceful and n > 0:
        for k in range(n):
            if all(
                min(labels[u], labels[v]) <= k < max(labels[u], labels[v])
                for u, v in tree.edges
            ):
                alpha_index = k
                break
    return LabelingClassification(is_rho, is_sigma, is_graceful, alpha_index)


def _rho_indexable(used: set[int], n: int) -> bool:
    if len(used) != n:
        return False
    for i in range(1, n + 1):
        lo, hi = i, 2 * n + 1 - i
        if lo not in used and hi not in used:
            return False
        # each i must be matched by exactly one of {i, 2n+1-i}; since |used| = n
        # and the pairs partition 1..2n, membership of exactly one per pair works
        if lo in used and hi in used:
            return False
    return True


def complement_labeling(tree: Tree, labels: Sequence[int]) -> Labeling:
    """f'(v) = n - f(v); graceful in, graceful out with alpha index n-k-1."""
    cls = classify_labeling(tree, labels)
    if not cls.is_graceful:
        raise ContractViolationError("complement requires a graceful labeling")
    n = tree.edge_count
    return tuple(n - x for x in labels)


def inverse_alpha(tree: Tree, labels: Sequence[int], k: Optional[int] = None) -> Labeling:
    """Koh-Rogers-Tan inverse of an alpha-labeling; stays alpha with index k."""
    cls = classify_labeling(tree, labels)
    if cls.alpha_index is None:
        raise ContractViolationError("inverse requires an alpha-labeling")
    if k is None:
        k = cls.alpha_index
    elif not _is_alpha_with_index(tree, labels, k):
        raise ContractViolationError(f"labeling is not alpha with index {k}")
    n = tree.edge_count
    return tuple(k - x if x <= k else n + k + 1 - x for x in labels)


def _is_alpha_with_index(tree: Tree, labels: Sequence[int], k: int) -> bool:
    return all(
        min(labels[u], labels[v]) <= k < max(labels[u], labels[v]) for u, v in tree.edges
    )


def bipartition_and_depth_sets(tree: Tree):
    """2-color the tree; D_p(v) = {0..|part(v)|-1} for every vertex."""
    root = tree.root if tree.root is not None else 0
    _, depth = parents_and_depths(tree, root)
    part_a = frozenset(v for v in range(tree.vertex_count) if depth[v] % 2 == 0)
    part_b = frozenset(v for v in range(tree.vertex_count) if depth[v] % 2 == 1)
    dp = {}
    for v in range(tree.vertex_count):
        size = len(part_a) if v in part_a else len(part_b)
        dp[v] = frozenset(range(size))
    return (part_a, part_b), dp


def path_depth_set(n: int, v: int) -> frozenset[int]:
    """Cattell's depth set D(v) for vertex position v of the path P_n (n edges)."""
    if not (0 <= v <= n):
        raise InvalidInputError(f"vertex {v} outside P_{n}")
    part_size = (n + 2) // 2 if v % 2 == 0 else (n + 1) // 2
    dp = set(range(part_size))
    if n >= 4 and n % 4 == 0 and v in (0, n):
        dp.discard(n // 4)
    if n == 4 and v == 2:
        dp.discard(0)
    if n == 6 and v in (1, 5):
        dp.discard(1)
    return frozenset(dp)
