"""The main labelers: odd radial auxiliary labelings, the diameter-6 and
diameter-2r theorems, the back-and-forth labeler, banana-tree labelers, the
power-of-two spider class, labeling functions, consistent range-relaxed
labelings, and attach-leaves.

Every transfer-based labeler works the same way: assemble one well-behaved
plan over the closed closure sequence of a star (first the chain that builds
the stripped radial tree, then the decided or hand-built stage that parks the
leaves), replay it with per-step validation, and pull the labels back onto the
input tree through a rooted isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from . import bps as bpsmod
from .bps import (
    Bps,
    DecidedSequence,
    canonical,
    decide_depth1,
    decide_large_depth,
    decide_odd_depth2,
)
from .classic import label_caterpillar
from .constructions import join_at_zero
from .errors import DefectError, InvalidInputError
from .labelings import Labeling, classify_labeling
from .transfers import (
    AlternatingSequence,
    TransferPlan,
    TransferStep,
    TransferableSet,
    make_alternating,
    make_transferable,
    replay_plan,
)
from .trees import (
    Tree,
    children_map,
    eccentricities,
    is_odd_radial,
    make_tree,
    parents_and_depths,
    rooted_isomorphism,
    star_tree,
    tree_center,
)


# ---------------------------------------------------------------------------
# the star pipeline


def _star_context(n: int):
    """K_{1,n} with center labeled 0 and its full closed closure sequence."""
    t = star_tree(n)
    labels = tuple(range(n + 1))  # vertex id == label
    order = [0]
    lo, hi = 1, n
    while lo <= hi:
        order.append(hi)
        hi -= 1
        if lo <= hi:
            order.append(lo)
            lo += 1
    seq = make_alternating(labels, order)
    leaves = make_transferable(t, labels, seq, order[1:])
    return t, labels, seq, leaves


def _trim_trailing_noops(steps: list[TransferStep], total: int) -> list[TransferStep]:
    """Drop final steps that would move an empty pile (a chain that ends just
    as the pile runs out)."""
    while steps:
        pile = total
        bad_at = None
        for i, s in enumerate(steps):
            moved = pile - s.leftover
            if moved <= 0:
                bad_at = i
                break
            pile -= s.leftover
        if bad_at is None:
            return steps
        if bad_at != len(steps) - 1 or pile != steps[bad_at].leftover:
            raise DefectError("plan moves an empty pile mid-way")
        steps = steps[:-1]
    return steps


def _run_star_plan(n: int, steps: Sequence[TransferStep]):
    """Replay a composed plan over the full star closure."""
    t, labels, seq, leaves = _star_context(n)
    trimmed = _trim_trailing_noops(list(steps), n)
    plan = TransferPlan(tuple(trimmed))
    final, _counts = replay_plan(t, labels, seq, leaves, plan)
    return final, labels


def _pull_back(tree: Tree, root: int, constructed: Tree, labels: Labeling) -> Labeling:
    mapping = rooted_isomorphism(tree, root, constructed, 0)
    if mapping is None:
        raise DefectError("constructed tree is not isomorphic to the input")
    out = tuple(labels[mapping[x]] for x in range(tree.vertex_count))
    if not classify_labeling(tree, out).is_graceful:  # pragma: no cover
        raise DefectError("construction produced a non-graceful labeling")
    return out


def _offset_steps(steps: Sequence[TransferStep], offset: int) -> list[TransferStep]:
    return [TransferStep(s.from_index + offset, s.to_index + offset, s.leftover) for s in steps]


# ---------------------------------------------------------------------------
# ordered containments (the lexicographic order realizing a decided sequence)


def _ordered_layout(b: Bps, seq: Sequence[int]):
    """An ordered arrangement of the BPS whose flattened values equal `seq`."""
    b = canonical(b)

    def match(node, segment):
        if isinstance(node, int):
            return node if segment == (node,) else None

        def rec(remaining, pos):
            if not remaining:
                return [] if pos == len(segment) else None
            tried = set()
            for k, child in enumerate(remaining):
                if child in tried:
                    continue
                tried.add(child)
                ln = len(bpsmod.values_of(child))
                sub = match(child, segment[pos : pos + ln])
                if sub is None:
                    continue
                rest = rec(remaining[:k] + remaining[k + 1 :], pos + ln)
                if rest is not None:
                    return [sub] + rest
            return None

        got = rec(tuple(node), 0)
        return got if got is None else tuple(got)

    layout = match(b, tuple(seq))
    if layout is None:  # pragma: no cover - decided sequences are contained
        raise DefectError("decided sequence is not contained in the BPS")
    return layout


def _layout_chain(layout) -> tuple[list[int], list[int]]:
    """BFS the ordered layout; (internal child counts, leaf values)."""
    internals: list[int] = []
    leaf_vals: list[int] = []
    frontier = [layout]
    while frontier:
        nxt = []
        for node in frontier:
            if isinstance(node, int):
                leaf_vals.append(node)
            else:
                internals.append(len(node))
                nxt.extend(node)
        frontier = nxt
    return internals, leaf_vals


def _label_stripped(tree: Tree, root: int, decided: DecidedSequence, b: Bps) -> Labeling:
    """The strip-then-replay pipeline shared by t41/t42/t43/t44."""
    layout = _ordered_layout(b, decided.sequence)
    internals, leaf_vals = _layout_chain(layout)
    k = len(internals) + 1  # the first stripped-tree leaf goes internal too
    n = len(internals) + len(leaf_vals) - 1 + sum(leaf_vals)
    if n != tree.edge_count:  # pragma: no cover
        raise DefectError("edge count mismatch in the stripped pipeline")
    steps = [TransferStep(j, j + 1, internals[j - 1]) for j in range(1, k)]
    steps += _offset_steps(decided.plan.steps, k - 1)
    constructed, labels = _run_star_plan(n, steps)
    return _pull_back(tree, root, constructed, labels)


# ---------------------------------------------------------------------------
# the odd radial auxiliary labeling, exposed directly


def label_odd_radial_aux(
    tree: Tree, extra_leaves: int, root: Optional[int] = None
) -> tuple[Tree, Labeling, AlternatingSequence, TransferableSet]:
    """Attach `extra_leaves` to the lexicographically first leaf of an odd
    radial rooted tree; returns the grown tree, a graceful labeling with the
    root at 0, the tree's leaves as an alternating sequence, and the attached
    leaves as a transferable set."""
    r = root if root is not None else tree.root
    if r is None:
        raise InvalidInputError("odd radial labeling needs a root")
    if not is_odd_radial(tree, r):
        raise InvalidInputError("tree is not odd radial at its root")
    if extra_leaves < 0:
        raise InvalidInputError("extra leaf count must be non-negative")
    if tree.vertex_count == 1:
        raise InvalidInputError("tree has no internal vertices")
    kids = children_map(tree, r)
    lex = [r]
    frontier = [r]
    while frontier:
        nxt = []
        for v in frontier:
            nxt.extend(sorted(kids[v]))
        lex.extend(nxt)
        frontier = nxt
    internal_lex = [v for v in lex if kids[v]]
    leaf_lex = [v for v in lex if not kids[v]]
    n = tree.edge_count + extra_leaves
    parks = [len(kids[v]) for v in internal_lex]
    steps = [TransferStep(j, j + 1, parks[j - 1]) for j in range(1, len(parks) + 1)]
    v1 = leaf_lex[0]
    nv = tree.vertex_count
    t_prime = make_tree(
        nv + extra_leaves,
        list(tree.edges) + [(v1, nv + i) for i in range(extra_leaves)],
        root=r,
    )
    constructed, labels = _run_star_plan(n, steps)
    mapping = rooted_isomorphism(t_prime, r, constructed, 0)
    if mapping is None:  # pragma: no cover
        raise DefectError("aux construction mismatch")
    out = tuple(labels[mapping[x]] for x in range(t_prime.vertex_count))
    if not classify_labeling(t_prime, out).is_graceful or out[r] != 0:  # pragma: no cover
        raise DefectError("aux labeling failed its contract")
    if len(leaf_lex) >= 2:
        alt = make_alternating(out, leaf_lex)
    else:
        # the parameters of a one-term sequence are (label of v1, label of the
        # internal vertex the pile last came from)
        alt = AlternatingSequence((v1,), "descending-gap", out[v1], out[internal_lex[-1]])
    if extra_leaves:
        ts = make_transferable(t_prime, out, alt, list(range(nv, nv + extra_leaves)))
    else:
        ts = TransferableSet((), 0, -1)
    return t_prime, out, alt, ts


# ---------------------------------------------------------------------------
# theorem recognition


@dataclass(frozen=True)
class TheoremMatch:
    theorem: str
    witness: dict


def _strip_bps(kids, depth, root: int, r: int) -> Bps:
    def build(v: int) -> Bps:
        if depth[v] == r - 1:
            return len(kids[v])
        return tuple(build(c) for c in kids[v])

    return canonical(build(root))


def _deep_leaf_conditions(kids, depth, r: int, n: int) -> bool:
    """No two depth-(r-1) leaves share a parent; each has a sibling with an
    even positive child count."""
    for parent in range(n):
        if depth[parent] != r - 2 or not kids[parent]:
            continue
        shallow = [c for c in kids[parent] if not kids[c]]
        if len(shallow) > 1:
            return False
        if shallow and not any(kids[c] and len(kids[c]) % 2 == 0 for c in kids[parent]):
            return False
    return True


def match_theorem(tree: Tree) -> list[TheoremMatch]:
    """Every labeling theorem whose hypotheses the tree satisfies."""
    from .trees import (
        even_caterpillar_banana_params,
        generalized_banana_params,
        spider_leg_lengths,
    )

    out: list[TheoremMatch] = []
    n = tree.vertex_count
    ecc = eccentricities(tree)
    diam = max(ecc)
    centers = tree_center(tree)
    if diam >= 4 and diam % 2 == 0 and len(centers) == 1:
        v = centers[0]
        r = diam // 2
        kids = children_map(tree, v)
        _, depth = parents_and_depths(tree, v)
        leaves = [x for x in range(n) if not kids[x] and x != v]
        leaf_depths = {depth[x] for x in leaves}

        def odd_children_to(d: int) -> bool:
            return all(
                len(kids[x]) % 2 == 1
                for x in range(n)
                if depth[x] <= d and (kids[x] or x == v)
            )

        # zero children is an even number of children (a depth-(r-1) leaf
        # contributes a 0 to the BPS, and 0 counts as an even integer there)
        penult_evens = sum(
            1 for x in range(n) if depth[x] == r - 1 and len(kids[x]) % 2 == 0
        )
        deep_ok = _deep_leaf_conditions(kids, depth, r, n)
        if diam == 6:
            if odd_children_to(1) and leaf_depths == {3}:
                out.append(TheoremMatch("t41", {"root": v, "bps": _strip_bps(kids, depth, v, 3)}))
            if odd_children_to(1) and leaf_depths <= {2, 3} and deep_ok:
                out.append(TheoremMatch("t42", {"root": v, "bps": _strip_bps(kids, depth, v, 3)}))
            if all(len(kids[x]) % 2 == 1 for x in range(n) if kids[x]) and leaf_depths <= {2, 3}:
                out.append(TheoremMatch("t45", {"root": v}))
        if odd_children_to(r - 2) and leaf_depths == {r} and penult_evens % 4 != 3:
            out.append(TheoremMatch("t43", {"root": v, "r": r, "bps": _strip_bps(kids, depth, v, r)}))
        if (
            odd_children_to(r - 2)
            and leaf_depths <= {r - 1, r}
            and penult_evens % 4 != 3
            and deep_ok
        ):
            out.append(TheoremMatch("t44", {"root": v, "r": r, "bps": _strip_bps(kids, depth, v, r)}))
    for apex in range(n):
        h = generalized_banana_params(tree, apex)
        if h is not None:
            out.append(TheoremMatch("gen-banana", {"apex": apex, "h": h}))
            break
    for apex in range(n):
        p = even_caterpillar_banana_params(tree, apex)
        if p is not None:
            out.append(TheoremMatch("even-cat-banana", {"apex": apex, "h": p[0], "k": p[1]}))
            break
    legs = spider_leg_lengths(tree)
    if legs is not None and legs:
        ne = tree.edge_count
        if all(m <= 1 or (2 ** (m - 1)) * (2 * i + 1) <= ne for i, m in enumerate(legs)):
            out.append(TheoremMatch("log-spider", {"legs": tuple(legs)}))
    return out


# ---------------------------------------------------------------------------
# diameter-6 / diameter-2r labelers


def label_diameter6(tree: Tree, strategy: str = "auto") -> Labeling:
    """Graceful labeling with the central vertex labeled 0 (theorems t41, t42,
    t45 on diameter-6 trees)."""
    matches = {m.theorem: m for m in match_theorem(tree)}
    if strategy == "auto":
        strategy = next((s for s in ("t41", "t42", "t45") if s in matches), "none")
    if strategy not in matches:
        raise InvalidInputError(f"tree does not satisfy the {strategy} hypotheses")
    m = matches[strategy]
    if strategy == "t41":
        decided = decide_odd_depth2(m.witness["bps"])
    elif strategy == "t42":
        decided = decide_odd_depth2(m.witness["bps"], allow_zeros=True)
    elif strategy == "t45":
        return _label_back_and_forth(tree, m.witness["root"])
    else:
        raise InvalidInputError(f"unknown strategy {strategy!r}")
    if decided is None:  # pragma: no cover - the corollary guarantees success
        raise DefectError("depth-2 decider failed on a qualifying tree")
    return _label_stripped(tree, m.witness["root"], decided, m.witness["bps"])


def label_diameter2r(tree: Tree, strategy: str = "auto") -> Labeling:
    """Graceful labeling with the central vertex labeled 0 (theorems t43/t44
    on diameter-2r trees)."""
    matches = {m.theorem: m for m in match_theorem(tree)}
    if strategy == "auto":
        strategy = next((s for s in ("t43", "t44") if s in matches), "none")
    if strategy not in matches:
        raise InvalidInputError(f"tree does not satisfy the {strategy} hypotheses")
    m = matches[strategy]
    decided = decide_large_depth(m.witness["bps"], allow_zeros=(strategy == "t44"))
    if decided is None:  # pragma: no cover - the hypothesis excludes 3 mod 4
        raise DefectError("large-depth decider failed on a qualifying tree")
    return _label_stripped(tree, m.witness["root"], decided, m.witness["bps"])


def _label_back_and_forth(tree: Tree, root: int) -> Labeling:
    """Theorem t45: all internal vertices odd, leaves at distance 2 or 3.

    One initial transfer leaves the branch vertices at the center; a forward /
    backward / forward sweep parks each branch's depth-2 content (internal
    vertices strictly before leaves in the global park order); a final chain
    serves the depth-2 internal vertices their leaf bundles.
    """
    kids = children_map(tree, root)
    branches = []
    for u in sorted(kids[root]):
        ints = sorted(c for c in kids[u] if kids[c])
        i_b = len(ints)
        l_b = len(kids[u]) - i_b
        if i_b % 2 == 1 and l_b == 0:
            group = 1
        elif i_b % 2 == 1:
            group = 2
        elif i_b > 0:
            group = 3
        else:
            group = 4
        branches.append({"group": group, "i": i_b, "l": l_b, "ints": ints})
    branches.sort(key=lambda br: br["group"])
    branches = [None] + branches  # 1-based
    m = len(branches) - 1
    groups = [None] + [br["group"] for br in branches[1:]]
    mixed = [j for j in range(1, m + 1) if groups[j] in (2, 3)]

    def pos(j: int) -> int:
        return j + 1  # the center occupies sequence position 1

    steps: list[TransferStep] = [TransferStep(1, 2, m)]
    park_events: list[tuple[int, int, int]] = []  # (branch, ints, leaves)
    rem_i = [None] + [br["i"] for br in branches[1:]]
    rem_l = [None] + [br["l"] for br in branches[1:]]

    def hop(frm: int, to_pos: int, ints_amt: int, lvs_amt: int):
        if ints_amt or lvs_amt:
            park_events.append((frm, ints_amt, lvs_amt))
        rem_i[frm] -= ints_amt
        rem_l[frm] -= lvs_amt
        steps.append(TransferStep(pos(frm), to_pos, ints_amt + lvs_amt))

    if len(mixed) <= 1:
        for j in range(1, m):
            hop(j, pos(j + 1), rem_i[j], rem_l[j])
    else:
        i1, c = mixed[0], mixed[-1]
        for j in range(1, c):  # forward
            amt = rem_i[j] - 1 if groups[j] == 3 else rem_i[j]
            hop(j, pos(j + 1), amt, 0)
        if groups[c] == 3:  # turnaround at c: an even park
            hop(c, pos(c - 1), rem_i[c], 0)
        else:
            hop(c, pos(c - 1), rem_i[c], rem_l[c] - 1)
        for j in range(c - 1, i1, -1):  # backward
            if groups[j] == 3:
                hop(j, pos(j - 1), rem_i[j], 0)
            else:
                hop(j, pos(j - 1), 0, rem_l[j] - 1)
        # turnaround at i1: remaining ints (if any) then all its leaves
        hop(i1, pos(i1 + 1), rem_i[i1], rem_l[i1])
        for j in range(i1 + 1, m):  # forward again
            hop(j, pos(j + 1), rem_i[j], rem_l[j])
    tail_start = m + 2
    hop(m, tail_start, rem_i[m], rem_l[m])
    if any(rem_i[1:]) or any(rem_l[1:]):  # pragma: no cover
        raise DefectError("back-and-forth walk left branch content unparked")
    seen_leaf = False
    internal_counts: list[int] = []
    for j, ints_amt, lvs_amt in park_events:
        if ints_amt:
            if seen_leaf:  # pragma: no cover
                raise DefectError("internal park after a leaf park")
            take = branches[j]["ints"][:ints_amt]
            branches[j]["ints"] = branches[j]["ints"][ints_amt:]
            internal_counts.extend(len(kids[x]) for x in take)
        if lvs_amt:
            seen_leaf = True
    if not internal_counts:
        raise InvalidInputError("no depth-2 internal vertices (diameter below 6)")
    for t in range(len(internal_counts) - 1):
        steps.append(TransferStep(tail_start + t, tail_start + t + 1, internal_counts[t]))
    constructed, labels = _run_star_plan(tree.edge_count, steps)
    return _pull_back(tree, root, constructed, labels)


# ---------------------------------------------------------------------------
# banana trees


def _ecb_chains(tree: Tree, apex: int, h: int, k: int):
    """Spine chains with per-level bundle counts and tip counts, plus the
    apex's own bundle (nonempty only when k = 0)."""
    kids = children_map(tree, apex)
    if h >= 2:
        heads = [c for c in sorted(kids[apex]) if kids[c]]
        apex_bundle = len(kids[apex]) - len(heads)
    else:
        heads = sorted(kids[apex])
        apex_bundle = 0
    if apex_bundle and k != 0:
        raise InvalidInputError("apex carries leaves but k > 0")
    chains = []
    for head in heads:
        spine = [head]
        for _ in range(h - 1):
            v = spine[-1]
            nxt = [c for c in kids[v] if kids[c]] or list(kids[v])[:1]
            if not nxt:
                raise InvalidInputError("spine shorter than h")
            spine.append(nxt[0])
        # every non-spine child of a spine vertex is a bundle leaf
        bundles = [len(kids[v]) - 1 for v in spine[:-1]]
        tip = len(kids[spine[-1]])
        chains.append({"bundles": bundles, "tip": tip})
    return chains, apex_bundle


def _label_ecb_at(tree: Tree, apex: int, h: int, k: int) -> Labeling:
    if h < 1:
        if tree.vertex_count == 1:
            return (0,)
        raise InvalidInputError("banana structure needs h >= 1")
    chains, apex_bundle = _ecb_chains(tree, apex, h, k)
    m = len(chains)
    if m == 0:
        raise InvalidInputError("banana tree needs at least one branch")
    if m % 2 == 0:
        return _label_ecb_even_apex(tree, apex, h, k)

    decided = decide_depth1(canonical(tuple(ch["tip"] for ch in chains)))
    order: list[dict] = []
    pool = list(chains)
    for val in decided.sequence:
        idx = next(i for i, ch in enumerate(pool) if ch["tip"] == val)
        order.append(pool.pop(idx))

    # lex positions: apex = 1; the level-l spine vertex of branch b sits at
    # 1 + (l-1)m + b; the chain ends at K = the first level-h vertex
    K = 2 + m * (h - 1)
    parks = [m] + [1] * (m * (h - 1))
    steps = [TransferStep(j, j + 1, parks[j - 1]) for j in range(1, K)]
    bundle_of_pos = {}
    for lvl in range(1, h):
        for b in range(m):
            bundle_of_pos[1 + m * (lvl - 1) + b + 1] = order[b]["bundles"][lvl - 1]
    if k == 0:
        bundle_of_pos[1] = apex_bundle
    if k <= h - 1:
        i = 1 if k == 0 else 2 + m * (k - 1)
        if any(bundle_of_pos.get(p, 0) <= 0 or bundle_of_pos[p] % 2 for p in range(i, K)):
            raise InvalidInputError("every vertex between level k and h-1 needs a positive even bundle")
        steps.append(TransferStep(K, K - 1, 0))
        for p in range(K - 1, i, -1):
            steps.append(TransferStep(p, p - 1, 1))
        steps.append(TransferStep(i, i + 1, bundle_of_pos[i]))
        for p in range(i + 1, K):
            steps.append(TransferStep(p, p + 1, bundle_of_pos[p] - 1))
    steps.extend(_offset_steps(decided.plan.steps, K - 1))
    constructed, labels = _run_star_plan(tree.edge_count, steps)
    out = _pull_back(tree, apex, constructed, labels)
    if out[apex] != 0:  # pragma: no cover
        raise DefectError("odd-apex banana labeling did not put 0 at the apex")
    return out


def _label_ecb_even_apex(tree: Tree, apex: int, h: int, k: int) -> Labeling:
    """Even apex degree: delete one branch, label the rest, reattach the
    deleted branch as a caterpillar at the 0-labeled apex."""
    kids = children_map(tree, apex)
    heads = [c for c in sorted(kids[apex]) if kids[c]] if h >= 2 else sorted(kids[apex])
    drop = heads[-1]
    branch = {drop}
    stack = [drop]
    while stack:
        x = stack.pop()
        for c in kids[x]:
            branch.add(c)
            stack.append(c)
    keep = [v for v in range(tree.vertex_count) if v not in branch]
    remap = {v: i for i, v in enumerate(keep)}
    t_rest = make_tree(
        len(keep),
        [(remap[a], remap[b]) for a, b in tree.edges if a not in branch and b not in branch],
        root=remap[apex],
    )
    rest_labels = _label_ecb_at(t_rest, remap[apex], h, k)
    bverts = [apex] + sorted(branch)
    bmap = {v: i for i, v in enumerate(bverts)}
    t_branch = make_tree(
        len(bverts),
        [(bmap[a], bmap[b]) for a, b in tree.edges if a in branch and b in branch]
        + [(bmap[apex], bmap[drop])],
    )
    h_labels = label_caterpillar(t_branch, bmap[apex])
    joined, jl, merged = join_at_zero(
        t_branch, h_labels, bmap[apex], t_rest, rest_labels, remap[apex], mode="graceful"
    )
    mapping = rooted_isomorphism(tree, apex, joined, merged)
    if mapping is None:  # pragma: no cover
        raise DefectError("even-apex reassembly mismatch")
    out = tuple(jl[mapping[x]] for x in range(tree.vertex_count))
    if not classify_labeling(tree, out).is_graceful:  # pragma: no cover
        raise DefectError("even-apex labeling not graceful")
    return out


def label_even_caterpillar_banana(tree: Tree) -> Labeling:
    """Graceful labeling of an even-caterpillar banana tree (apex at 0 when
    the apex degree is odd)."""
    from .trees import even_caterpillar_banana_params

    for apex in range(tree.vertex_count):
        p = even_caterpillar_banana_params(tree, apex)
        if p is not None:
            return _label_ecb_at(tree, apex, p[0], p[1])
    raise InvalidInputError("not an even-caterpillar banana tree")


def label_generalized_banana(tree: Tree) -> Labeling:
    """Graceful labeling of a generalized banana tree (apex at 0 when the
    apex degree is odd)."""
    from .trees import generalized_banana_params

    for apex in range(tree.vertex_count):
        h = generalized_banana_params(tree, apex)
        if h is not None:
            return _label_ecb_at(tree, apex, max(h, 1), max(h, 1))
    raise InvalidInputError("not a generalized banana tree")


# ---------------------------------------------------------------------------
# the power-of-two spider class


def spider_tree(leg_lengths: Sequence[int]) -> Tree:
    """Center 0; leg i's vertices follow consecutively, center outward."""
    edges = []
    nid = 1
    for ln in leg_lengths:
        prev = 0
        for _ in range(ln):
            edges.append((prev, nid))
            prev = nid
            nid += 1
    return make_tree(nid, edges, root=0)


def label_spider_powers(leg_lengths: Sequence[int]) -> Optional[Labeling]:
    """Graceful labeling (center 0) of the spider with the given descending
    leg lengths, when every leg satisfies 2^(m_i - 1) (2i - 1) <= n; length-1
    legs absorb the unused labels. None when the condition fails."""
    legs = list(leg_lengths)
    if any(l < 1 for l in legs):
        raise InvalidInputError("leg lengths must be positive")
    if legs != sorted(legs, reverse=True):
        raise InvalidInputError("leg lengths must be sorted descending")
    n = sum(legs)
    for i, m_i in enumerate(legs, start=1):
        if m_i >= 2 and (2 ** (m_i - 1)) * (2 * i - 1) > n:
            return None
    labels = [0]
    used = {0}
    short_slots = []
    for i, m_i in enumerate(legs, start=1):
        if m_i == 1:
            short_slots.append(len(labels))
            labels.append(-1)
            continue
        for j in range(m_i - 1, -1, -1):
            val = (2 ** j) * (2 * i - 1)
            labels.append(val)
            used.add(val)
    spare = [x for x in range(n + 1) if x not in used]
    if len(spare) != len(short_slots):  # pragma: no cover - counting identity
        raise DefectError("spider label accounting failed")
    for slot, val in zip(short_slots, spare):
        labels[slot] = val
    return tuple(labels)


# ---------------------------------------------------------------------------
# labeling functions and range-relaxed labelings


RationalLabeling = tuple[Fraction, ...]


def _two_free_core(q: Fraction) -> tuple[int, int]:
    """The odd/odd core of a positive rational; q1 ~ q2 iff cores are equal."""
    a, b = q.numerator, q.denominator
    while a % 2 == 0:
        a //= 2
    while b % 2 == 0:
        b //= 2
    return (a, b)


def labeling_function(tree: Tree, v: int) -> RationalLabeling:
    """A rational labeling g with V_g = E_g u {0} and g(v) = 0, grown from the
    leaf v by halving single children and splitting sibling pairs."""
    if tree.vertex_count < 2:
        raise InvalidInputError("labeling functions need at least one edge")
    if tree.degree(v) != 1:
        raise InvalidInputError("the base vertex must be a leaf")
    adj = tree.adjacency()
    nv = adj[v][0]
    kids = children_map(tree, v)
    g: dict[int, Fraction] = {v: Fraction(0), nv: Fraction(1)}
    cores: set[tuple[int, int]] = {_two_free_core(Fraction(1))}
    order = [x for x in _bfs(tree, v) if x in g or True]

    def assert_family(h_vertices):
        # if g(v1) = 2^k g(v2) with k >= 1 then v2 descends from v1 and v1 full
        items = [(x, g[x]) for x in h_vertices if g[x] > 0]
        for x1, q1 in items:
            for x2, q2 in items:
                if x1 == x2 or q2 == 0:
                    continue
                ratio = q1 / q2
                if ratio.denominator == 1 and ratio.numerator >= 2 and (ratio.numerator & (ratio.numerator - 1)) == 0:
                    if not _descends(kids, x2, x1) or any(c not in g for c in kids[x1]):
                        raise DefectError("family condition violated")

    while len(g) < tree.vertex_count:
        u = next(
            x for x in order if x in g and any(c not in g for c in kids[x])
        )
        missing = [c for c in kids[u] if c not in g]
        if len(missing) == 1:
            w = missing[0]
            g[w] = g[u] / 2
            if _two_free_core(g[w]) != _two_free_core(g[u]):  # pragma: no cover
                raise DefectError("halving changed the two-free core")
            cores.add(_two_free_core(g[w]))
        else:
            w1, w2 = missing[0], missing[1]
            base = g[u]
            q = None
            s = 2
            while q is None:
                denom = 2 ** s
                for t in range(denom):
                    odd = 2 * t + 1
                    cand = base * Fraction(odd, denom)
                    if cand <= base * Fraction(3, 8) or cand >= base * Fraction(5, 8):
                        continue
                    if cand == base / 2:
                        continue
                    c1, c2 = _two_free_core(cand), _two_free_core(base - cand)
                    if c1 != c2 and c1 not in cores and c2 not in cores:
                        q = cand
                        break
                s += 1
                if s > 64:  # pragma: no cover - the proof guarantees termination
                    raise DefectError("no admissible split found")
            g[w1] = q
            g[w2] = base - q
            cores.add(_two_free_core(q))
            cores.add(_two_free_core(base - q))
        assert_family(list(g))
    out = tuple(g[x] for x in range(tree.vertex_count))
    _check_labeling_function(tree, out)
    return out


def _bfs(tree: Tree, root: int) -> list[int]:
    from .trees import bfs_order

    return bfs_order(tree, root)


def _descends(kids, target: int, ancestor: int) -> bool:
    stack = list(kids[ancestor])
    while stack:
        x = stack.pop()
        if x == target:
            return True
        stack.extend(kids[x])
    return False


def _check_labeling_function(tree: Tree, g: Sequence[Fraction]) -> None:
    if len(set(g)) != len(g):
        raise DefectError("labeling function not injective")
    vg = set(g)
    eg = {abs(g[a] - g[b]) for a, b in tree.edges}
    if vg != eg | {Fraction(0)}:
        raise DefectError("V_g != E_g u {0}")


def consistent_rrg(tree: Tree, v: int) -> Labeling:
    """An injective integer labeling with distinct edge labels, f(v) = 0, and
    V_f = E_f u {0}; labels may exceed the edge count."""
    if tree.vertex_count == 1:
        return (0,)
    if tree.degree(v) == 1:
        g = labeling_function(tree, v)
        k = lcm(*(q.denominator for q in g))
        out = tuple(int(q * k) for q in g)
    else:
        adj = tree.adjacency()
        branch_root = adj[v][0]
        comp = {branch_root}
        stack = [branch_root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != v and y not in comp:
                    comp.add(y)
                    stack.append(y)
        h2_verts = [v] + sorted(comp)
        h1_verts = [x for x in range(tree.vertex_count) if x not in comp]
        m2 = {x: i for i, x in enumerate(h2_verts)}
        m1 = {x: i for i, x in enumerate(h1_verts)}
        t2 = make_tree(
            len(h2_verts),
            [(m2[a], m2[b]) for a, b in tree.edges if a in m2 and b in m2],
        )
        t1 = make_tree(
            len(h1_verts),
            [(m1[a], m1[b]) for a, b in tree.edges if a in m1 and b in m1],
        )
        f1 = consistent_rrg(t1, m1[v])
        f2 = consistent_rrg(t2, m2[v])
        mmax = max(f1)
        out_list = [0] * tree.vertex_count
        for x in h1_verts:
            out_list[x] = f1[m1[x]]
        for x in h2_verts:
            if x != v:
                out_list[x] = (mmax + 1) * f2[m2[x]]
        out = tuple(out_list)
    if len(set(out)) != len(out) or out[v] != 0:
        raise DefectError("consistent range-relaxed labeling failed")  # pragma: no cover
    vf = set(out)
    ef = {abs(out[a] - out[b]) for a, b in tree.edges}
    if len(ef) != tree.edge_count or vf != ef | {0}:  # pragma: no cover
        raise DefectError("V_f != E_f u {0}")
    return out


def attach_leaves_graceful(tree: Tree, v: int, extra: int = 0) -> tuple[int, Tree, Labeling]:
    """The smallest N such that attaching N leaves at v is graceful via the
    consistent range-relaxed labeling, plus the grown tree and its labeling;
    `extra` attaches N+extra instead (any count at least N works)."""
    f = consistent_rrg(tree, v)
    n = tree.edge_count
    n_new = max(0, max(f) - n) + extra
    nv = tree.vertex_count
    grown = make_tree(
        nv + n_new, list(tree.edges) + [(v, nv + i) for i in range(n_new)], root=tree.root
    )
    used = set(f)
    gaps = [x for x in range(n + n_new + 1) if x not in used]
    if len(gaps) != n_new:  # pragma: no cover - counting identity
        raise DefectError("gap labels do not match the new leaves")
    labels = tuple(f) + tuple(gaps)
    if not classify_labeling(grown, labels).is_graceful:  # pragma: no cover
        raise DefectError("attach-leaves labeling not graceful")
    return n_new - extra, grown, labels
