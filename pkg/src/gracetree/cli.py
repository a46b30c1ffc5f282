"""Command-line front end: parse trees, graphs, and BPS expressions; dispatch
to the labelers, deciders, and the brute-force oracle; emit machine-readable
reports.

Output is line-oriented JSON (--pretty for humans). Exit codes: 0 ok,
1 rejected/refused, 2 defect.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import bps as bpsmod
from .classic import (
    SimpleGraph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    is_graceful_graph_labeling,
    label_complete,
    label_complete_bipartite,
    label_cycle,
)
from .constructions import cyclic_decomposition
from .errors import (
    ContractViolationError,
    DefectError,
    GracetreeError,
    InvalidInputError,
    ReplayFailureError,
    SearchRefusedError,
    TransferRejectedError,
)
from .labelings import classify_labeling
from .labelers import (
    label_diameter2r,
    label_diameter6,
    label_even_caterpillar_banana,
    label_generalized_banana,
    label_spider_powers,
    match_theorem,
)
from .oracle import brute_force_alpha, brute_force_graceful, count_graceful
from .transfers import TransferPlan, make_alternating, make_transferable, replay_plan
from .trees import (
    Tree,
    labeling_from_json,
    profile_tree,
    tree_from_parens,
    tree_from_text,
    tree_to_text,
)


@dataclass
class Report:
    status: str  # ok | rejected | refused | defect
    payload: dict = field(default_factory=dict)
    diagnostics: str = ""

    def exit_code(self) -> int:
        return {"ok": 0, "rejected": 1, "refused": 1, "defect": 2}[self.status]

    def emit(self, pretty: bool) -> None:
        doc = {"status": self.status, **self.payload}
        if self.diagnostics:
            doc["diagnostics"] = self.diagnostics
        print(json.dumps(doc, indent=2 if pretty else None))


def parse_input(text: str):
    """Tree (edge list or nested parens), SimpleGraph (cycle:/complete:/kbip:
    shorthand), or BPS."""
    s = text.strip()
    if s.startswith("cycle:"):
        return cycle_graph(int(s[6:]))
    if s.startswith("complete:"):
        return complete_graph(int(s[9:]))
    if s.startswith("kbip:"):
        m, n = s[5:].split(",")
        return complete_bipartite_graph(int(m), int(n))
    if s.startswith("("):
        # paren trees contain no digits; BPS expressions always do
        if any(ch.isdigit() for ch in s):
            return bpsmod.parse_bps(s)
        return tree_from_parens(s)
    if s and s[0].isdigit() and "\n" not in s and " " not in s and "=" not in s:
        return bpsmod.parse_bps(s)
    return tree_from_text(s)


def _read_source(arg: Optional[str]) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    # a path that exists wins over literal text
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError:
        return arg


def _labeling_payload(tree: Tree, labels) -> dict:
    cls = classify_labeling(tree, labels)
    return {
        "labeling": list(labels),
        "classification": {
            "is_rho": cls.is_rho,
            "is_sigma": cls.is_sigma,
            "is_graceful": cls.is_graceful,
            "alpha_index": cls.alpha_index,
        },
    }


def run(args: argparse.Namespace) -> Report:
    try:
        return _dispatch(args)
    except (InvalidInputError, ContractViolationError, TransferRejectedError) as exc:
        return Report("rejected", {}, str(exc))
    except ReplayFailureError as exc:
        return Report("rejected", {"failed_step": exc.step_index}, str(exc))
    except SearchRefusedError as exc:
        return Report("refused", {}, str(exc))
    except DefectError as exc:
        return Report("defect", {}, str(exc))
    except GracetreeError as exc:  # pragma: no cover - catch-all
        return Report("defect", {}, str(exc))


def _dispatch(args: argparse.Namespace) -> Report:
    verb = args.verb
    if verb == "classify":
        obj = parse_input(_read_source(args.input))
        if isinstance(obj, Tree):
            prof = profile_tree(obj)
            payload = {
                "kind": "tree",
                "vertices": obj.vertex_count,
                "diameter": prof.diameter,
                "center": list(prof.center),
                "caterpillar": prof.caterpillar,
                "lobster": prof.lobster,
                "spider": prof.spider,
                "banana": prof.banana,
                "generalized_banana_h": prof.generalized_banana_h,
                "even_caterpillar_banana": list(prof.even_caterpillar_banana)
                if prof.even_caterpillar_banana
                else None,
                "radial": prof.radial,
                "odd_radial": prof.odd_radial,
                "symmetrical": prof.symmetrical,
                "theorems": [m.theorem for m in match_theorem(obj)],
            }
            if args.labels:
                labels = labeling_from_json(_read_source(args.labels))
                payload.update(_labeling_payload(obj, labels))
            return Report("ok", payload)
        if isinstance(obj, SimpleGraph):
            return Report(
                "ok", {"kind": "graph", "vertices": obj.vertex_count, "edges": len(obj.edges)}
            )
        return Report("ok", {"kind": "bps", "bps": bpsmod.format_bps(obj)})

    if verb == "verify":
        obj = parse_input(_read_source(args.input))
        labels = labeling_from_json(_read_source(args.labels))
        if isinstance(obj, SimpleGraph):
            ok = is_graceful_graph_labeling(obj, labels)
            return Report("ok" if ok else "rejected", {"is_graceful": ok})
        payload = _labeling_payload(obj, labels)
        return Report("ok", payload)

    if verb == "label":
        obj = parse_input(_read_source(args.input))
        if isinstance(obj, SimpleGraph):
            return _label_graph(obj)
        assert isinstance(obj, Tree)
        theorem = args.theorem
        if args.auto or theorem is None:
            matches = match_theorem(obj)
            if not matches:
                return Report("rejected", {}, "no labeling theorem applies")
            theorem = matches[0].theorem
        if theorem in ("t41", "t42", "t45"):
            labels = label_diameter6(obj, theorem)
        elif theorem in ("t43", "t44"):
            labels = label_diameter2r(obj, theorem)
        elif theorem == "gen-banana":
            labels = label_generalized_banana(obj)
        elif theorem == "even-cat-banana":
            labels = label_even_caterpillar_banana(obj)
        elif theorem == "log-spider":
            from .trees import spider_leg_lengths

            legs = spider_leg_lengths(obj)
            if legs is None:
                return Report("rejected", {}, "not a spider")
            got = label_spider_powers(legs)
            if got is None:
                return Report("rejected", {}, "leg-length condition fails")
            from .labelers import spider_tree
            from .trees import rooted_isomorphism, tree_center

            sp = spider_tree(legs)
            centers = [v for v in range(obj.vertex_count) if obj.degree(v) > 2] or [0]
            mapping = rooted_isomorphism(obj, centers[0], sp, 0)
            if mapping is None:
                return Report("defect", {}, "spider shape mismatch")
            labels = tuple(got[mapping[x]] for x in range(obj.vertex_count))
        elif theorem == "conjecture":
            return Report("rejected", {}, "conjectured, not implemented")
        else:
            return Report("rejected", {}, f"unknown theorem {theorem!r}")
        cls = classify_labeling(obj, labels)
        if not cls.is_graceful:  # pragma: no cover - labelers verify themselves
            return Report("defect", {}, "labeler emitted a non-graceful labeling")
        return Report("ok", {"theorem": theorem, **_labeling_payload(obj, labels)})

    if verb == "decide":
        obj = parse_input(_read_source(args.input))
        if not isinstance(obj, (int, tuple)):
            return Report("rejected", {}, "decide expects a BPS")
        b = bpsmod.canonical(obj)
        d = bpsmod.depth(b)
        if d <= 1:
            decided = bpsmod.decide_depth1(b)
        elif d == 2:
            decided = bpsmod.decide_odd_depth2(b, allow_zeros=args.allow_zeros)
        else:
            decided = bpsmod.decide_large_depth(b, allow_zeros=args.allow_zeros)
        if decided is None:
            return Report(
                "ok",
                {"attainable": None, "bps": bpsmod.format_bps(b)},
                "not decided by this calculus (even count is 3 mod 4)",
            )
        return Report(
            "ok",
            {
                "attainable": list(decided.sequence),
                "bps": bpsmod.format_bps(b),
                "trace": decided.plan.to_trace(),
            },
        )

    if verb == "replay":
        doc = json.loads(_read_source(args.input))
        tree = tree_from_text(doc["tree"])
        labels = tuple(doc["labeling"])
        with open(args.trace, "r", encoding="utf-8") as fh:
            plan = TransferPlan.from_trace(json.load(fh))
        seq = make_alternating(labels, doc["sequence"])
        leaves = make_transferable(tree, labels, seq, doc["leaves"])
        final, counts = replay_plan(tree, labels, seq, leaves, plan)
        ok_graceful = classify_labeling(final, labels).is_graceful
        return Report(
            "ok" if ok_graceful else "defect",
            {"tree": tree_to_text(final), "counts": list(counts)},
        )

    if verb == "search":
        obj = parse_input(_read_source(args.input))
        if not isinstance(obj, Tree):
            return Report("rejected", {}, "search expects a tree")
        pin = None
        if args.pin:
            vtxt, ltxt = args.pin.split(":")
            pin = (int(vtxt.removeprefix("v=")), int(ltxt))
        if args.count:
            total = count_graceful(obj, fixed=pin, max_vertices=args.max_vertices)
            return Report("ok", {"count": total})
        fn = brute_force_alpha if args.alpha else brute_force_graceful
        labels = fn(obj, fixed=pin, max_vertices=args.max_vertices)
        if labels is None:
            return Report("ok", {"exists": False})
        return Report("ok", {"exists": True, **_labeling_payload(obj, labels)})

    if verb == "decompose":
        obj = parse_input(_read_source(args.input))
        if not isinstance(obj, Tree):
            return Report("rejected", {}, "decompose expects a tree")
        labels = (
            labeling_from_json(_read_source(args.labels))
            if args.labels
            else brute_force_graceful(obj)
        )
        if labels is None:
            return Report("rejected", {}, "no graceful labeling found")
        copies = cyclic_decomposition(obj, labels)
        return Report(
            "ok",
            {
                "modulus": 2 * obj.edge_count + 1,
                "copies": [[list(e) for e in copy] for copy in copies],
            },
        )

    return Report("rejected", {}, f"unknown verb {verb!r}")  # pragma: no cover


def _label_graph(g: SimpleGraph) -> Report:
    """Cycle / complete / complete bipartite labelings by shape detection."""
    n = g.vertex_count
    deg = [g.degree(v) for v in range(n)]
    if all(d == 2 for d in deg) and len(g.edges) == n:
        labels = label_cycle(n)
        if labels is None:
            return Report("rejected", {}, "C_n is graceful only for n = 0, 3 mod 4")
        return Report("ok", {"labeling": list(labels), "is_graceful": True})
    if len(g.edges) == n * (n - 1) // 2:
        labels = label_complete(n)
        if labels is None:
            return Report("rejected", {}, "K_n is graceful only for n <= 4")
        return Report("ok", {"labeling": list(labels), "is_graceful": True})
    # complete bipartite: the two degree classes
    degs = sorted(set(deg))
    if len(degs) <= 2:
        m = sum(1 for d in deg if d == degs[-1])
        nn = n - m
        if m * nn == len(g.edges):
            labels = label_complete_bipartite(m, nn)
            ok = is_graceful_graph_labeling(g, labels)
            if ok:
                return Report("ok", {"labeling": list(labels), "is_graceful": True})
    return Report("rejected", {}, "unrecognized graph shape")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gracetree")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, labels=False):
        sp.add_argument("input", nargs="?", default="-", help="file, literal, or - for stdin")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        if labels:
            sp.add_argument("--labels", help="labeling as a JSON array (file or literal)")

    common(sub.add_parser("verify", help="re-check a supplied labeling"), labels=True)
    lp = sub.add_parser("label", help="run a constructive labeler")
    common(lp)
    lp.add_argument("--theorem", help="t41|t42|t43|t44|t45|gen-banana|even-cat-banana|log-spider")
    lp.add_argument("--auto", action="store_true", help="use the first applicable theorem")
    dp = sub.add_parser("decide", help="decide BPS attainability")
    common(dp)
    dp.add_argument("--allow-zeros", action="store_true")
    rp = sub.add_parser("replay", help="replay a transfer trace")
    common(rp)
    rp.add_argument("--trace", required=True, help="JSON trace file")
    spp = sub.add_parser("search", help="brute-force graceful/alpha search")
    common(spp)
    spp.add_argument("--pin", help="v=<id>:<label>")
    spp.add_argument("--alpha", action="store_true")
    spp.add_argument("--count", action="store_true")
    spp.add_argument("--max-vertices", type=int, default=None)
    common(sub.add_parser("classify", help="structural profile"), labels=True)
    common(sub.add_parser("decompose", help="cyclic decomposition of K_{2n+1}"), labels=True)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    report = run(args)
    report.emit(getattr(args, "pretty", False))
    return report.exit_code()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
