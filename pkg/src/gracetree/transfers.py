"""The transfer calculus: alternating sequences, transferable leaf sets,
replayable first-type transfer plans, and the attainable-sequence catalog.

Plans are context-free: each step stores (from_index, to_index, leftover)
against a 1-based alternating sequence, with the pile initially held by the
first vertex as if transferred from an imaginary index 0. Concrete moved
label ranges are recomputed at replay time from the actual vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidInputError,
    ReplayFailureError,
    TransferRejectedError,
)
from .labelings import Labeling
from .trees import Tree, make_tree, parents_and_depths

FORM_DESC = "descending-gap"  # labels a, b-1, a+1, b-2, ... (b-side descends)
FORM_ASC = "ascending-gap"  # labels a, b+1, a-1, b+2, ... (b-side ascends)


@dataclass(frozen=True)
class AlternatingSequence:
    vertices: tuple[int, ...]
    form: str
    a: int
    b: int

    def __len__(self) -> int:
        return len(self.vertices)

    def label_at(self, index: int) -> int:
        """Template label at a 1-based position (positions may exceed length)."""
        return template_label(self.form, self.a, self.b, index)


def template_label(form: str, a: int, b: int, index: int) -> int:
    if index % 2 == 1:
        return a + (index - 1) // 2 if form == FORM_DESC else a - (index - 1) // 2
    return b - index // 2 if form == FORM_DESC else b + index // 2


def make_alternating(labels: Labeling, vertices: Sequence[int]) -> AlternatingSequence:
    """Detect the form and parameters of a vertex sequence, or reject it."""
    verts = tuple(vertices)
    if len(verts) < 2:
        raise InvalidInputError("an alternating sequence needs at least 2 vertices")
    if len(set(verts)) != len(verts):
        raise InvalidInputError("alternating sequence vertices must be distinct")
    seq = [labels[v] for v in verts]
    for form, b in ((FORM_DESC, seq[1] + 1), (FORM_ASC, seq[1] - 1)):
        a = seq[0]
        if b < 0:
            continue
        if all(template_label(form, a, b, i + 1) == x for i, x in enumerate(seq)):
            return AlternatingSequence(verts, form, a, b)
    raise InvalidInputError(f"labels {seq} fit neither alternating form")


def converges(seq: AlternatingSequence, labels: Labeling) -> bool:
    lo, hi = min(seq.a, seq.b), max(seq.a, seq.b)
    return all(lo <= labels[v] <= hi for v in seq.vertices[1:])


def close_sequence(seq: AlternatingSequence, labels: Labeling) -> AlternatingSequence:
    """Maximal alternating extension of a convergent sequence; idempotent."""
    if not converges(seq, labels):
        raise InvalidInputError("only convergent sequences have a closure")
    by_label = {x: v for v, x in enumerate(labels)}
    verts = list(seq.vertices)
    used = set(verts)
    i = len(verts)
    while True:
        i += 1
        nxt = template_label(seq.form, seq.a, seq.b, i)
        v = by_label.get(nxt)
        if v is None or v in used:
            break
        verts.append(v)
        used.add(v)
    return AlternatingSequence(tuple(verts), seq.form, seq.a, seq.b)


@dataclass(frozen=True)
class TransferableSet:
    """Leaves adjacent to the sequence head with consecutive labels c..d."""

    vertices: tuple[int, ...]  # sorted by label, ascending
    c: int
    d: int


def make_transferable(
    tree: Tree, labels: Labeling, seq: AlternatingSequence, leaf_vertices: Iterable[int]
) -> TransferableSet:
    verts = sorted(set(leaf_vertices), key=lambda v: labels[v])
    if not verts:
        raise InvalidInputError("transferable set is empty")
    head = seq.vertices[0]
    for v in verts:
        if not tree.has_edge(head, v):
            raise InvalidInputError(f"vertex {v} is not adjacent to the sequence head")
    lab = [labels[v] for v in verts]
    c, d = lab[0], lab[-1]
    if lab != list(range(c, d + 1)):
        raise InvalidInputError("transferable labels must be consecutive")
    if c + d != seq.a + seq.b:
        raise InvalidInputError(
            f"transferable set needs c+d = a+b, got {c}+{d} != {seq.a}+{seq.b}"
        )
    return TransferableSet(tuple(verts), c, d)


def transfer_options(
    from_index: int, to_index: int, incoming_from: Optional[int] = None
) -> tuple[int, int]:
    """(minimum leftover, its parity) for a first-type transfer between
    sequence positions; any leftover of that parity and at least the minimum
    is legal. `incoming_from` is where the moved pile previously came from
    (omit it for the initial pile, which counts as coming from index 0)."""
    i0 = 0 if incoming_from is None else incoming_from
    if (from_index - to_index) % 2 == 0:
        raise InvalidInputError("transfer endpoints must have opposite parity")
    if (to_index - i0) % 2 != 0:
        raise InvalidInputError("target must have the parity of the pile's origin")
    lo = abs(to_index - i0) // 2
    return lo, lo % 2


def apply_transfer(
    tree: Tree,
    labels: Labeling,
    u: int,
    targets: Iterable[int],
    v: int,
    branch: bool = False,
) -> Tree:
    """Detach `targets` (leaves, or branch roots when branch=True) from u and
    reattach them at v. Labels are untouched; gracefulness is preserved when
    the pairing condition holds."""
    tset = sorted(set(targets), key=lambda t: labels[t])
    if not tset:
        return tree
    if v == u or v in tset:
        raise InvalidInputError("transfer target must lie outside the moved part")
    for t in tset:
        if not tree.has_edge(u, t):
            raise InvalidInputError(f"{t} is not adjacent to {u}")
        if not branch and tree.degree(t) != 1:
            raise InvalidInputError(f"{t} is not a leaf; use branch mode")
    if branch:
        parent, _ = parents_and_depths(tree, u)
        x = v
        while x is not None and x != u:
            if x in tset:
                raise InvalidInputError("target vertex lies inside a moved branch")
            x = parent[x]
    s = labels[u] + labels[v]
    lab = [labels[t] for t in tset]
    i, j = 0, len(lab) - 1
    while i < j:
        if lab[i] + lab[j] != s:
            raise TransferRejectedError(
                f"pair ({lab[i]},{lab[j]}) does not sum to f(u)+f(v) = {s}"
            )
        i += 1
        j -= 1
    if i == j and 2 * lab[i] != s:
        raise TransferRejectedError(f"single label {lab[i]} needs 2x = f(u)+f(v) = {s}")
    edges = set(tree.edges)
    for t in tset:
        edges.discard((min(u, t), max(u, t)))
        edges.add((min(v, t), max(v, t)))
    return make_tree(tree.vertex_count, edges, tree.root)


def classify_moved_set(labels_moved: Sequence[int], source_label: int, target_label: int) -> Optional[str]:
    """'type1' for one consecutive range, 'type2' for a union of two equal
    disjoint non-adjacent ranges, None when the move is not a legal transfer."""
    lab = sorted(labels_moved)
    s = source_label + target_label
    i, j = 0, len(lab) - 1
    while i < j:
        if lab[i] + lab[j] != s:
            return None
        i += 1
        j -= 1
    if i == j and 2 * lab[i] != s:
        return None
    if lab == list(range(lab[0], lab[-1] + 1)):
        return "type1" if lab[0] + lab[-1] == s else None
    # one gap splitting the set into two equal consecutive runs?
    for cut in range(1, len(lab)):
        left, right = lab[:cut], lab[cut:]
        if (
            len(left) == len(right)
            and left == list(range(left[0], left[0] + cut))
            and right == list(range(right[0], right[0] + cut))
            and right[0] > left[-1] + 1
            and left[0] + right[0] + (cut - 1) == s
        ):
            return "type2"
    return None


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class TransferStep:
    from_index: int
    to_index: int
    leftover: int


@dataclass(frozen=True)
class TransferPlan:
    steps: tuple[TransferStep, ...]
    result: Optional[tuple[int, ...]] = None
    nicely: bool = False  # the final step dumps a surplus onto position m+1

    def to_trace(self) -> list[dict]:
        return [
            {"from": s.from_index, "to": s.to_index, "leftover": s.leftover}
            for s in self.steps
        ]

    @staticmethod
    def from_trace(items: Iterable[dict]) -> "TransferPlan":
        steps = tuple(
            TransferStep(int(d["from"]), int(d["to"]), int(d["leftover"])) for d in items
        )
        return TransferPlan(steps)


def replay_plan(
    tree: Tree,
    labels: Labeling,
    seq: AlternatingSequence,
    leaves: TransferableSet,
    plan: TransferPlan,
    check_each_step=None,
) -> tuple[Tree, tuple[int, ...]]:
    """Execute a plan; returns the rewired tree and the per-position census of
    the original transferable leaves. `check_each_step(tree)` runs after every
    transfer when provided."""
    pile = list(leaves.vertices)  # sorted by label ascending
    original = set(pile)
    holder = 1
    cur = tree
    for k, step in enumerate(plan.steps):
        if step.from_index != holder:
            raise ReplayFailureError(k, f"step starts at {step.from_index}, pile is at {holder}")
        if not (1 <= step.to_index <= len(seq.vertices)):
            raise ReplayFailureError(k, f"target index {step.to_index} outside sequence")
        if step.leftover < 0 or step.leftover >= len(pile):
            raise ReplayFailureError(
                k, f"leftover {step.leftover} impossible with pile of {len(pile)}"
            )
        u = seq.vertices[step.from_index - 1]
        v = seq.vertices[step.to_index - 1]
        s = labels[u] + labels[v]
        lo, hi = labels[pile[0]], labels[pile[-1]]
        e2 = s - lo - hi + step.leftover
        if e2 % 2 != 0:
            raise ReplayFailureError(k, "no consecutive range realizes this leftover")
        e = e2 // 2
        if not (0 <= e <= step.leftover):
            raise ReplayFailureError(k, f"range trim {e} outside 0..{step.leftover}")
        moved = pile[e : len(pile) - (step.leftover - e)]
        try:
            cur = apply_transfer(cur, labels, u, moved, v)
        except (TransferRejectedError, InvalidInputError) as exc:
            raise ReplayFailureError(k, str(exc)) from exc
        if check_each_step is not None:
            check_each_step(cur)
        pile = moved
        holder = step.to_index
    counts = []
    for v in seq.vertices:
        counts.append(sum(1 for t in original if cur.has_edge(v, t)))
    if plan.result is not None:
        m = len(plan.result)
        ok = counts[:m] == list(plan.result)
        tail = counts[m:]
        if plan.nicely:
            ok = ok and tail and tail[0] > 0 and not any(tail[1:])
        else:
            ok = ok and not any(tail)
        if not ok:
            raise ReplayFailureError(
                len(plan.steps), f"result {tuple(counts)} != expected {plan.result}"
            )
    return cur, tuple(counts)


def leaf_order(seq: AlternatingSequence, leaves: TransferableSet, labels: Labeling) -> list[int]:
    """The natural transfer order of a transferable set: d, c, d-1, c+1, ...
    for the descending-gap form, c, d, c+1, d-1, ... for the ascending-gap
    form. Matches the tail of the closed sequence."""
    c, d = leaves.c, leaves.d
    by_label = {labels[v]: v for v in leaves.vertices}
    out = []
    lo, hi = c, d
    take_hi = seq.form == FORM_DESC
    while lo <= hi:
        if take_hi:
            out.append(by_label[hi])
            hi -= 1
        else:
            out.append(by_label[lo])
            lo += 1
        take_hi = not take_hi
    return out


# ---------------------------------------------------------------------------
# symbol sequences


SYMBOLS = ("o", "e", "0", "e/0")


def symbol_matches(symbol: str, value: int) -> bool:
    if symbol == "o":
        return value > 0 and value % 2 == 1
    if symbol == "e":
        return value > 0 and value % 2 == 0
    if symbol == "0":
        return value == 0
    if symbol == "e/0":
        return value >= 0 and value % 2 == 0
    raise InvalidInputError(f"unknown symbol {symbol!r}")


def match_symbols(counts: Sequence[int], symbols: Sequence[str]) -> bool:
    if len(counts) != len(symbols):
        return False
    return all(symbol_matches(s, c) for s, c in zip(symbols, counts))


# ---------------------------------------------------------------------------
# catalog chunks
#
# Every nicely attainable chunk below parks its values at relative positions
# 1..L and dumps the remaining pile onto position L+1, which is where the next
# chunk's region starts; entering a chunk the pile always comes from the
# position just before the region, so chunks compose by plain offset shifts.


def _is_o(x: int) -> bool:
    return x > 0 and x % 2 == 1


def _is_e(x: int) -> bool:
    return x > 0 and x % 2 == 0


def _is_e0(x: int) -> bool:
    return x >= 0 and x % 2 == 0


class ChunkError(InvalidInputError):
    pass


def _walk(path: Sequence[int], parks: Sequence[int], offset: int) -> list[TransferStep]:
    assert len(parks) == len(path) - 1
    return [
        TransferStep(path[t] + offset, path[t + 1] + offset, parks[t])
        for t in range(len(path) - 1)
    ]


def chunk_o(values, offset, final_exact):
    (n1,) = values
    if not _is_o(n1):
        raise ChunkError("o chunk needs one positive odd value")
    if final_exact:
        return []
    return _walk([1, 2], [n1], offset)


def chunk_eoooe(values, offset, final_exact):
    n1, n2, n3, n4, n5 = values
    if not (_is_e(n1) and _is_o(n2) and _is_o(n3) and _is_o(n4) and _is_e(n5)):
        raise ChunkError("pattern e,o,o,o,e violated")
    path = [1, 4, 3, 2, 5] + ([] if final_exact else [6])
    parks = [n1, n4, n3, n2] + ([] if final_exact else [n5])
    return _walk(path, parks, offset)


def chunk_eoeeoe(values, offset, final_exact):
    n1, n2, n3, n4, n5, n6 = values
    if not (
        _is_e(n1) and _is_o(n2) and _is_e(n3) and _is_e(n4) and _is_o(n5) and _is_e(n6)
    ):
        raise ChunkError("pattern e,o,e,e,o,e violated")
    path = [1, 4, 5, 2, 3, 6] + ([] if final_exact else [7])
    parks = [n1, n4, n5, n2, n3] + ([] if final_exact else [n6])
    return _walk(path, parks, offset)


def chunk_double8(values, offset, final_exact):
    """The classic backwards double-8 for e,e,e,e."""
    n1, n2, n3, n4 = values
    if not all(_is_e(x) for x in values):
        raise ChunkError("pattern e,e,e,e violated")
    path = [1, 2, 3, 4, 1, 2, 3, 4] + ([] if final_exact else [5])
    parks = [1, 1, 1, 1, n1 - 1, n2 - 1, n3 - 1] + ([] if final_exact else [n4 - 1])
    return _walk(path, parks, offset)


def chunk_e_run(values, offset, final_exact):
    """e, e/0, o x 2k, e/0, e for k >= 0 (k = 0 is e, e/0, e/0, e)."""
    L = len(values)
    if L < 4 or L % 2 != 0:
        raise ChunkError("run chunk needs even length >= 4")
    k = (L - 4) // 2
    n = (None,) + tuple(values)  # 1-based
    if not (_is_e(n[1]) and _is_e0(n[2]) and _is_e0(n[L - 1]) and _is_e(n[L])):
        raise ChunkError("pattern e,e/0,...,e/0,e violated")
    if not all(_is_o(n[i]) for i in range(3, L - 1)):
        raise ChunkError("middle of run chunk must be positive odd")
    path = [1, 2, 1]
    parks = [1, n[2]]
    carry = n[1] - 1  # parked when the pile leaves position 1 again
    for j in range(1, k + 1):
        path += [2 * j + 2, 2 * j + 1]
        parks += [carry, n[2 * j + 2]]
        carry = n[2 * j + 1]
    path += [L, L - 1, L]
    parks += [carry, 1, n[L - 1]]
    if not final_exact:
        path.append(L + 1)
        parks.append(n[L] - 1)
    return _walk(path, parks, offset)


def chunk_far_single(values, offset, final_exact):
    """n1, 0 x (j-2), nj realized by the single hop 1 -> j (j even)."""
    if not final_exact:
        raise ChunkError("far chunks are tails")
    j = len(values)
    n1, nj = values[0], values[-1]
    if j < 2 or j % 2 != 0 or any(values[1:-1]):
        raise ChunkError("far chunk needs n1, zeros, nj with even length")
    if nj < 1 or n1 < j // 2 or (n1 - j // 2) % 2 != 0:
        raise ChunkError("far single: leftover parity/minimum violated")
    return _walk([1, j], [n1], offset)


def chunk_far_out_and_back(values, offset, final_exact):
    """n1, 0 x (j-2), nj realized by 1 -> j -> 1 (j even, nj even)."""
    if not final_exact:
        raise ChunkError("far chunks are tails")
    j = len(values)
    n1, nj = values[0], values[-1]
    if j < 2 or j % 2 != 0 or any(values[1:-1]):
        raise ChunkError("far chunk needs n1, zeros, nj with even length")
    a = j // 2
    if not _is_e0(nj) or n1 - a < 1:
        raise ChunkError("far out-and-back: parity/minimum violated")
    return _walk([1, j, 1], [a, nj], offset)


def chunk_out_and_back(values, offset, final_exact):
    """e, ..., e with an e/0 turnaround: 1 -> 2 -> ... -> T -> ... -> 1."""
    if not final_exact:
        raise ChunkError("out-and-back is a tail")
    T = len(values)
    if T == 1:
        if values[0] < 1:
            raise ChunkError("single tail value must be positive")
        return []
    if not all(_is_e(x) for x in values[:-1]) or not _is_e0(values[-1]):
        raise ChunkError("pattern e,...,e,e/0 violated")
    if values[0] < 2:
        raise ChunkError("first value must allow a positive return")
    path = list(range(1, T + 1)) + list(range(T - 1, 0, -1))
    parks = [1] * (T - 1) + [values[T - 1]] + [values[t] - 1 for t in range(T - 2, 0, -1)]
    return _walk(path, parks, offset)


def chunk_bounce(values, offset, final_exact):
    """e, e/0, then odd pairs ending one short: 1->2->1->4->3->6->5->...

    Covers e,e/0,e,o and e,e/0,o,...,o; the next-to-last position receives the
    final arrival and is parity-free."""
    if not final_exact:
        raise ChunkError("bounce is a tail")
    L = len(values)
    if L < 4 or L % 2 != 0:
        raise ChunkError("bounce chunk needs even length >= 4")
    n = (None,) + tuple(values)
    if not (_is_e(n[1]) and _is_e0(n[2])):
        raise ChunkError("bounce must start e, e/0")
    if n[L - 1] < 1:
        raise ChunkError("bounce arrival must be positive")
    for i in range(3, L + 1):
        if i != L - 1 and not _is_o(n[i]):
            raise ChunkError("bounce middle values must be positive odd")
    path = [1, 2, 1]
    parks = [1, n[2]]
    carry = n[1] - 1
    k = (L - 2) // 2
    for j in range(1, k + 1):
        path += [2 * j + 2, 2 * j + 1]
        parks += [carry, n[2 * j + 2]]
        carry = n[2 * j + 1]
    # the pile rests at position L-1; its value is the arrival, not a park
    return _walk(path, parks, offset)


@dataclass(frozen=True)
class Chunk:
    kind: str
    values: tuple[int, ...]


_NICELY_BUILDERS = {
    "o": chunk_o,
    "eoooe": chunk_eoooe,
    "eoeeoe": chunk_eoeeoe,
    "double8": chunk_double8,
    "e_run": chunk_e_run,
}
_TAIL_BUILDERS = {
    "out_and_back": chunk_out_and_back,
    "bounce": chunk_bounce,
    "far_single": chunk_far_single,
    "far_out_and_back": chunk_far_out_and_back,
}


def build_plan(chunks: Sequence[Chunk], trailing_zeros: int = 0) -> TransferPlan:
    """Assemble catalog chunks (all but possibly the last nicely attainable)
    into one well-behaved plan over their concatenated value regions."""
    steps: list[TransferStep] = []
    values: list[int] = []
    offset = 0
    for idx, ch in enumerate(chunks):
        final = idx == len(chunks) - 1
        if ch.kind in _NICELY_BUILDERS:
            steps.extend(_NICELY_BUILDERS[ch.kind](ch.values, offset, final))
        elif ch.kind in _TAIL_BUILDERS:
            if not final:
                raise ChunkError(f"tail chunk {ch.kind} must come last")
            steps.extend(_TAIL_BUILDERS[ch.kind](ch.values, offset, True))
        else:
            raise ChunkError(f"unknown chunk kind {ch.kind}")
        values.extend(ch.values)
        offset += len(ch.values)
    values.extend([0] * trailing_zeros)
    return TransferPlan(tuple(steps), tuple(values))


# ---------------------------------------------------------------------------
# planning: segmentation of a counts vector into catalog chunks


def _nicely_segmentations(counts: Sequence[int], i: int, memo) -> Optional[list[Chunk]]:
    """Chunks covering counts[i:] using nicely patterns only, or None."""
    if i in memo:
        return memo[i]
    out = None
    m = len(counts)
    if i == m:
        out = []
    else:
        cands: list[Chunk] = []
        if _is_o(counts[i]):
            cands.append(Chunk("o", (counts[i],)))
        if i + 5 <= m:
            seg = tuple(counts[i : i + 5])
            if match_symbols(seg, ("e", "o", "o", "o", "e")):
                cands.append(Chunk("eoooe", seg))
        if i + 6 <= m:
            seg = tuple(counts[i : i + 6])
            if match_symbols(seg, ("e", "o", "e", "e", "o", "e")):
                cands.append(Chunk("eoeeoe", seg))
        if i + 2 <= m and _is_e(counts[i]) and _is_e0(counts[i + 1]):
            k = 0
            while i + 4 + 2 * k <= m:
                mid = counts[i + 2 : i + 2 + 2 * k]
                if not all(_is_o(x) for x in mid):
                    break
                if _is_e0(counts[i + 2 + 2 * k]) and _is_e(counts[i + 3 + 2 * k]):
                    cands.append(Chunk("e_run", tuple(counts[i : i + 4 + 2 * k])))
                k += 1
        for ch in cands:
            rest = _nicely_segmentations(counts, i + len(ch.values), memo)
            if rest is not None:
                out = [ch] + rest
                break
    memo[i] = out
    return out


def _tail_chunk(counts: Sequence[int]) -> Optional[Chunk]:
    """A single tail chunk covering the whole remaining vector, if any."""
    m = len(counts)
    if m == 0:
        return None
    vals = tuple(counts)
    if m == 1 and vals[0] >= 1:
        return Chunk("out_and_back", vals)
    if m >= 2 and all(_is_e(x) for x in vals[:-1]) and _is_e0(vals[-1]) and vals[0] >= 2:
        return Chunk("out_and_back", vals)
    if m >= 4 and m % 2 == 0:
        n = (None,) + vals
        if (
            _is_e(n[1])
            and _is_e0(n[2])
            and n[m - 1] >= 1
            and all(_is_o(n[i]) for i in range(3, m + 1) if i != m - 1)
        ):
            return Chunk("bounce", vals)
    if m >= 2 and m % 2 == 0 and not any(vals[1:-1]):
        j = m
        n1, nj = vals[0], vals[-1]
        if nj >= 1 and n1 >= j // 2 and (n1 - j // 2) % 2 == 0:
            return Chunk("far_single", vals)
        if _is_e0(nj) and n1 - j // 2 >= 1:
            return Chunk("far_out_and_back", vals)
    return None


def _segment(counts: Sequence[int]) -> Optional[tuple[list[Chunk], int]]:
    """counts -> (chunks, trailing_zeros), all-nicely or nicely* + one tail."""
    m = len(counts)
    z = m
    while z > 0 and counts[z - 1] == 0:
        z -= 1
    core = list(counts[:z])
    zeros = m - z
    if not core:
        return ([], zeros) if sum(counts) == 0 else None
    memo: dict[int, Optional[list[Chunk]]] = {}
    full = _nicely_segmentations(core, 0, memo)
    if full is not None:
        return full, zeros
    # nicely prefix + one tail chunk
    for split in range(len(core) - 1, -1, -1):
        tail = _tail_chunk(core[split:])
        if tail is None:
            continue
        prefix = _nicely_segmentations(core[:split], 0, {})
        if prefix is not None:
            return prefix + [tail], zeros
    return None


class PlanSearchBound(Exception):
    """The exhaustive fallback hit its step bound before deciding."""


def exhaustive_plan_search(counts: Sequence[int], max_steps: int) -> Optional[tuple[TransferStep, ...]]:
    """Complete search for a well-behaved first-type plan with this result.

    BFS over (pile position, incoming position, deposited vector) states, so
    each state is expanded once and the shortest plan is returned. Raises
    PlanSearchBound only if undecided within `max_steps` plan length (a plan
    never needs to revisit a state, so the bound rarely binds).
    """
    counts = tuple(counts)
    m = len(counts)
    total = sum(counts)
    if total == 0:
        return ()

    def done(pos: int, deposited: tuple[int, ...], pile: int) -> bool:
        if deposited[pos - 1] + pile != counts[pos - 1]:
            return False
        return all(deposited[i] == counts[i] for i in range(m) if i != pos - 1)

    start = (1, 0, (0,) * m)
    if done(1, start[2], total):
        return ()
    from collections import deque

    parents: dict[tuple, tuple] = {start: None}
    frontier = deque([(start, 0)])
    while frontier:
        (pos, incoming, deposited), dist = frontier.popleft()
        if dist >= max_steps:
            raise PlanSearchBound()
        pile = total - sum(deposited)
        room = counts[pos - 1] - deposited[pos - 1]
        for j in range(1, m + 1):
            if (j - pos) % 2 == 0 or (j - incoming) % 2 != 0:
                continue
            lam = abs(j - incoming) // 2
            while lam <= min(room, pile - 1):
                dep2 = deposited[: pos - 1] + (deposited[pos - 1] + lam,) + deposited[pos:]
                state = (j, pos, dep2)
                if state not in parents:
                    parents[state] = ((pos, incoming, deposited), TransferStep(pos, j, lam))
                    if done(j, dep2, pile - lam):
                        steps = []
                        cur = state
                        while parents[cur] is not None:
                            prev, step = parents[cur]
                            steps.append(step)
                            cur = prev
                        return tuple(reversed(steps))
                    frontier.append((state, dist + 1))
                lam += 2
    return None


def plan_attainable(counts: Sequence[int]) -> Optional[TransferPlan]:
    """A well-behaved plan with result exactly `counts`: catalog segmentation
    first, then a bounded exhaustive fallback (<= 2m steps)."""
    counts = [int(x) for x in counts]
    if any(x < 0 for x in counts):
        raise InvalidInputError("counts must be non-negative")
    seg = _segment(counts)
    if seg is not None:
        chunks, zeros = seg
        try:
            return build_plan(chunks, zeros)
        except ChunkError:
            pass
    try:
        steps = exhaustive_plan_search(counts, 2 * max(len(counts), 1))
    except PlanSearchBound:
        return None
    if steps is None:
        return None
    return TransferPlan(steps, tuple(counts))


def plan_nicely_attainable(counts: Sequence[int]) -> Optional[TransferPlan]:
    """A plan realizing `counts` whose final step dumps the surplus onto a
    fresh vertex at position len(counts)+1; composable."""
    counts = [int(x) for x in counts]
    if any(x < 0 for x in counts):
        raise InvalidInputError("counts must be non-negative")
    if counts and counts[-1] == 0:
        return None  # a trailing zero cannot precede the dump
    memo: dict[int, Optional[list[Chunk]]] = {}
    chunks = _nicely_segmentations(counts, 0, memo)
    if chunks is None:
        return None
    steps: list[TransferStep] = []
    offset = 0
    for ch in chunks:
        steps.extend(_NICELY_BUILDERS[ch.kind](ch.values, offset, False))
        offset += len(ch.values)
    return TransferPlan(tuple(steps), tuple(counts), nicely=True)
