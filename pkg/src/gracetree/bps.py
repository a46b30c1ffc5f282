"""Blockwise permutable sequences: containment, attainability deciders, and
an exhaustive brute-force oracle.

A BPS is an int (depth 0) or a tuple of BPS's (unordered children, kept in a
canonical sorted order). Deciders search the containment space for an ordering
accepted by an ending-state machine whose transitions are the catalog lemmas:

    ''  --o-->  ''      (an [o] chunk extends a nicely attainable prefix)
    ''  --e-->  E1
    E1  --e/0-->  E2    (suffix e, e/0)
    E2  --o-->  E2'     and back            (suffix e, e/0, o, ..., o)
    E2  --e/0-->  E3/E3z (suffix e, e/0, o^2k, e/0)
    E3  --e-->  ''      (flush: e, e/0, o^2k, e/0, e is nicely attainable)
    E3  --o-->  bounce  (tail: e, e/0, o^2k, e/0, o)

plus an out-and-back tail mode for trailing runs of positive evens. Accepted
runs translate directly into catalog chunks and hence replayable plans.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import InvalidInputError
from .transfers import (
    Chunk,
    PlanSearchBound,
    TransferPlan,
    build_plan,
    exhaustive_plan_search,
)

Bps = Union[int, tuple]


def canonical(b) -> Bps:
    """Sort children recursively so equal BPS's compare equal."""
    if isinstance(b, int):
        if b < 0:
            raise InvalidInputError("BPS entries must be non-negative")
        return b
    kids = tuple(sorted((canonical(c) for c in b), key=_sort_key))
    if not kids:
        raise InvalidInputError("BPS nodes need at least one child")
    return kids


def _sort_key(b: Bps):
    if isinstance(b, int):
        return (0, b, ())
    return (1, len(b), tuple(_sort_key(c) for c in b))


def depth(b: Bps) -> int:
    if isinstance(b, int):
        return 0
    return 1 + max(depth(c) for c in b)


def values_of(b: Bps) -> list[int]:
    if isinstance(b, int):
        return [b]
    out = []
    for c in b:
        out.extend(values_of(c))
    return out


def total_of(b: Bps) -> int:
    return sum(values_of(b))


def is_odd_bps(b: Bps) -> bool:
    if isinstance(b, int):
        return True
    return len(b) % 2 == 1 and all(is_odd_bps(c) for c in b)


def parse_bps(text: str) -> Bps:
    """Parse `n` or `(B,B,...)`; whitespace tolerated."""
    s = "".join(text.split())
    pos = 0

    def parse() -> Bps:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids = [parse()]
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(parse())
            if pos >= len(s) or s[pos] != ")":
                raise InvalidInputError(f"expected ')' at column {pos + 1}")
            pos += 1
            return tuple(kids)
        j = pos
        while j < len(s) and s[j].isdigit():
            j += 1
        if j == pos:
            raise InvalidInputError(f"expected integer at column {pos + 1}")
        val = int(s[pos:j])
        pos = j
        return val

    out = parse()
    if pos != len(s):
        raise InvalidInputError(f"trailing characters at column {pos + 1}")
    return canonical(out)


def format_bps(b: Bps) -> str:
    if isinstance(b, int):
        return str(b)
    return "(" + ",".join(format_bps(c) for c in b) + ")"


def bps_contains(b: Bps) -> Iterator[tuple[int, ...]]:
    """Every contained sequence exactly once."""
    for seq in _contained(canonical(b)):
        yield seq


@lru_cache(maxsize=None)
def _contained(b: Bps) -> tuple[tuple[int, ...], ...]:
    if isinstance(b, int):
        return ((b,),)
    child_seqs = [_contained(c) for c in b]
    out: set[tuple[int, ...]] = set()

    def rec(remaining: tuple[int, ...], prefix: tuple[int, ...]):
        if not remaining:
            out.add(prefix)
            return
        used_forms = set()
        for k, i in enumerate(remaining):
            form = b[i]
            if form in used_forms:
                continue
            used_forms.add(form)
            rest = remaining[:k] + remaining[k + 1 :]
            for seq in child_seqs[i]:
                rec(rest, prefix + seq)

    rec(tuple(range(len(b))), ())
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# the ending-state machine

_ACCEPT = {"", "E1", "E2", "T", "Tz", "B", "Z"}


def _cls(v: int) -> str:
    if v == 0:
        return "0"
    return "o" if v % 2 == 1 else "e"


_STATES = (
    "",
    "E1",
    "E2",
    "E2p",
    "E3",
    "E3z",
    "A2",
    "A3",
    "A4",
    "B3",
    "B4",
    "B5",
    "T",
    "Tz",
    "B",
    "Z",
)


def _transitions(state: str, v: int) -> list[str]:
    c = _cls(v)
    out = []
    if state == "":
        if c == "o":
            out.append("")
        elif c == "e":
            out.extend(["E1", "T"])
        else:
            out.append("Z")
    elif state == "E1":  # suffix: e
        if c == "e":
            out.append("E2")
        elif c == "0":
            out.append("E2")
        else:
            out.append("A2")
    elif state == "E2":  # suffix: e, e/0, o^2k
        if c == "o":
            out.append("E2p")
        elif c == "e":
            out.append("E3")
        else:
            out.append("E3z")
    elif state == "E2p":  # suffix: e, e/0, o^(2k+1)
        if c == "o":
            out.append("E2")
    elif state == "E3":  # suffix: e, e/0, o^2k, e
        if c == "e":
            out.append("")  # flush the nicely chunk e, e/0, o^2k, e/0, e
        elif c == "o":
            out.append("B")  # bounce tail e, e/0, o^2k, e/0, o
    elif state == "E3z":  # like E3 but the last slot holds the 0
        if c == "e":
            out.append("")
    elif state == "A2":  # suffix: e, o
        if c == "o":
            out.append("A3")
        elif c == "e":
            out.append("B3")
    elif state == "A3":  # suffix: e, o, o
        if c == "o":
            out.append("A4")
    elif state == "A4":  # suffix: e, o, o, o
        if c == "e":
            out.append("")  # flush e, o, o, o, e
    elif state == "B3":  # suffix: e, o, e
        if c == "e":
            out.append("B4")
    elif state == "B4":  # suffix: e, o, e, e
        if c == "o":
            out.append("B5")
    elif state == "B5":  # suffix: e, o, e, e, o
        if c == "e":
            out.append("")  # flush e, o, e, e, o, e
    elif state == "T":  # trailing run of positive evens (out-and-back)
        if c == "e":
            out.append("T")
        elif c == "0":
            out.append("Tz")
    elif state in ("Tz", "B", "Z"):
        if c == "0":
            out.append(state if state != "B" else "Z")
    return out


def _machine_path(values: Sequence[int], accepts=frozenset(_ACCEPT)) -> Optional[list[str]]:
    """States after each value for some accepting run, or None."""
    n = len(values)
    # DP backward: reachable-to-accept sets
    alive: list[set[str]] = [set() for _ in range(n + 1)]
    alive[n] = set(accepts)
    for i in range(n - 1, -1, -1):
        for s in _STATES:
            if any(t in alive[i + 1] for t in _transitions(s, values[i])):
                alive[i].add(s)
    if "" not in alive[0]:
        return None
    path = [""]
    cur = ""
    for i, v in enumerate(values):
        nxt = next(t for t in _transitions(cur, v) if t in alive[i + 1])
        path.append(nxt)
        cur = nxt
    return path


def _chunks_from_run(values: Sequence[int], path: Sequence[str]) -> tuple[list[Chunk], int]:
    """Translate an accepted machine run into catalog chunks + trailing zeros."""
    flush_kind = {"E3": "e_run", "E3z": "e_run", "A4": "eoooe", "B5": "eoeeoe"}
    chunks: list[Chunk] = []
    buf: list[int] = []
    zeros = 0
    for i, v in enumerate(values):
        prev, cur = path[i], path[i + 1]
        if cur == "":
            if prev == "":
                chunks.append(Chunk("o", (v,)))
            else:
                chunks.append(Chunk(flush_kind[prev], tuple(buf + [v])))
                buf = []
        elif cur in ("Z", "Tz") and prev in ("Z", "Tz", "B"):
            zeros += 1
        elif cur == "Tz":
            buf.append(v)  # the single trailing e/0 of the out-and-back
        elif cur == "Z":
            zeros += 1
        elif cur == "B":
            chunks.append(Chunk("bounce", tuple(buf + [v])))
            buf = []
        else:
            buf.append(v)
    final = path[-1]
    if final in ("E1", "T"):
        chunks.append(Chunk("out_and_back", tuple(buf)))
    elif final == "Tz":
        if buf:
            chunks.append(Chunk("out_and_back", tuple(buf)))
    elif final == "E2":
        if len(buf) == 2:
            chunks.append(Chunk("out_and_back", tuple(buf)))
        else:
            chunks.append(Chunk("bounce", tuple(buf)))
    elif final in ("", "B", "Z"):
        assert not buf
    return chunks, zeros


# ---------------------------------------------------------------------------
# the containment search (which orderings does the BPS permit?)


@lru_cache(maxsize=None)
def _feasible(b: Bps, state_in: str) -> dict[str, tuple[int, ...]]:
    """state_out -> a contained value sequence driving the machine there."""
    if isinstance(b, int):
        return {t: (b,) for t in _transitions(state_in, b)}
    kids = tuple(sorted(b, key=_sort_key))
    out: dict[str, tuple[int, ...]] = {}

    def rec(remaining: tuple, state: str, prefix: tuple[int, ...], seen: set):
        if not remaining:
            if state not in out:
                out[state] = prefix
            return
        key = (remaining, state)
        if key in seen:
            return
        seen.add(key)
        used = set()
        for k, child in enumerate(remaining):
            if child in used:
                continue
            used.add(child)
            rest = remaining[:k] + remaining[k + 1 :]
            for s_out, seq in _feasible(child, state).items():
                rec(rest, s_out, prefix + seq, seen)

    rec(kids, state_in, (), set())
    return out


def _search_accepted(b: Bps) -> Optional[tuple[int, ...]]:
    """A contained sequence accepted by the machine from '' (trailing zeros ok)."""
    res = _feasible(canonical(b), "")
    best = None
    for state, seq in res.items():
        if state in _ACCEPT and (best is None or seq < best):
            best = seq
    return best


@dataclass(frozen=True)
class DecidedSequence:
    sequence: tuple[int, ...]
    plan: TransferPlan


def _materialize(seq: Sequence[int]) -> DecidedSequence:
    path = _machine_path(seq)
    if path is None:  # pragma: no cover - callers pass accepted sequences
        raise InvalidInputError(f"sequence {seq} is not machine-accepted")
    chunks, zeros = _chunks_from_run(seq, path)
    plan = build_plan(chunks, zeros)
    return DecidedSequence(tuple(seq), plan)


# ---------------------------------------------------------------------------
# the three deciders


def decide_depth1(b: Bps) -> DecidedSequence:
    """Every BPS of depth <= 1 is attainable: o's, then e's, then 0's."""
    b = canonical(b)
    if depth(b) > 1:
        raise InvalidInputError("decide_depth1 needs depth <= 1")
    vals = values_of(b)
    ordered = sorted((v for v in vals if v % 2 == 1), reverse=True)
    ordered += sorted((v for v in vals if v and v % 2 == 0), reverse=True)
    ordered += [0] * sum(1 for v in vals if v == 0)
    return _materialize(ordered)


def _check_zero_blocks(b: Bps, allow_zeros: bool, block_depth: int) -> None:
    """Zeros must sit in depth-`block_depth` blocks with no other zero and at
    least one positive even sibling (the with-zeros lemma conditions)."""
    vals = values_of(b)
    if 0 not in vals:
        return
    if not allow_zeros:
        raise InvalidInputError("this decider requires positive integers")

    def walk(node: Bps) -> None:
        if isinstance(node, int):
            if node == 0:
                raise InvalidInputError("a 0 outside a qualifying block")
            return
        if depth(node) == block_depth and 0 in node:
            zs = sum(1 for c in node if c == 0)
            if zs > 1:
                raise InvalidInputError("a block has more than one 0")
            if not any(isinstance(c, int) and c > 0 and c % 2 == 0 for c in node):
                raise InvalidInputError("a 0-block lacks a positive even integer")
            return
        for c in node:
            walk(c)

    walk(b)


def decide_odd_depth2(b: Bps, allow_zeros: bool = False) -> Optional[DecidedSequence]:
    """Attainable ordering of an odd BPS of depth <= 2 (positive integers, or
    the with-zeros side conditions when allow_zeros)."""
    b = canonical(b)
    if not is_odd_bps(b):
        raise InvalidInputError("decide_odd_depth2 needs an odd BPS")
    if depth(b) > 2:
        raise InvalidInputError("decide_odd_depth2 needs depth <= 2")
    _check_zero_blocks(b, allow_zeros, block_depth=1)
    if depth(b) <= 1:
        return decide_depth1(b)
    seq = _search_accepted(b)
    if seq is None:
        return None
    return _materialize(seq)


def ending_pairs(b: Bps, allow_zeros: bool = False) -> frozenset[tuple[str, str]]:
    """The ending pairs an odd BPS is associated with, by the mod-4 count of
    its even entries (zeros counted as evens in the with-zeros variant)."""
    b = canonical(b)
    if not is_odd_bps(b):
        raise InvalidInputError("ending pairs are defined for odd BPS's")
    _check_zero_blocks(b, allow_zeros, block_depth=1)
    evens = sum(1 for v in values_of(b) if v % 2 == 0)
    mod = evens % 4
    tables = {
        0: {("", ""), ("E2", "E2p"), ("E2p", "E2")},
        1: {("", "E1"), ("E1", "E2"), ("E2", "E3"), ("E3", "")},
        2: {("", "E2"), ("", "E2p"), ("E2", ""), ("E2p", "")},
        3: {("", "E3"), ("E1", ""), ("E2", "E1"), ("E3", "E2")},
    }
    return frozenset(tables[mod])


def decide_large_depth(b: Bps, allow_zeros: bool = False) -> Optional[DecidedSequence]:
    """Attainable ordering of an odd BPS of any depth whose even count is not
    3 mod 4; None exactly in the 3 mod 4 case."""
    b = canonical(b)
    if not is_odd_bps(b):
        raise InvalidInputError("decide_large_depth needs an odd BPS")
    _check_zero_blocks(b, allow_zeros, block_depth=1)
    evens = sum(1 for v in values_of(b) if v % 2 == 0)
    if evens % 4 == 3:
        return None
    seq = _search_accepted(b)
    if seq is None:  # the ending calculus guarantees this cannot happen
        raise InvalidInputError(
            f"no accepted ordering for {format_bps(b)}; ending calculus violated"
        )
    return _materialize(seq)


# ---------------------------------------------------------------------------
# brute force


@dataclass(frozen=True)
class BruteForceResult:
    status: str  # "found" | "none" | "inconclusive"
    sequence: Optional[tuple[int, ...]] = None
    plan: Optional[TransferPlan] = None


@lru_cache(maxsize=None)
def _plan_search_cached(counts: tuple[int, ...], limit: int):
    try:
        steps = exhaustive_plan_search(counts, limit)
    except PlanSearchBound:
        return ("bound", None)
    return ("found", steps) if steps is not None else ("none", None)


def bps_brute_force(b: Bps, bound: Optional[int] = None) -> BruteForceResult:
    """Exhaustively search contained sequences x bounded type-1 plans.

    Authoritative on small instances; lexicographically least witness wins.
    """
    b = canonical(b)
    if total_of(b) > 14:
        raise InvalidInputError("brute force supports totals <= 14")
    inconclusive = False
    for seq in _contained(b):
        limit = bound if bound is not None else 4 * max(len(seq), 1) + 4
        status, steps = _plan_search_cached(seq, limit)
        if status == "bound":
            inconclusive = True
        elif status == "found":
            return BruteForceResult("found", seq, TransferPlan(steps, tuple(seq)))
    return BruteForceResult("inconclusive" if inconclusive else "none")
