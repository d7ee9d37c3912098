"""Command-line interface.

    revlab revise   --state karl.st --operator op.txt "t" "o"
    revlab check    --operator op.txt --sig "a b" all
    revlab classify --state st.txt --operator op.txt
    revlab repro    karl|fig1|lemmas
    revlab enumerate --sig "a b" --universe faithful

Reports are deterministic given inputs and seed; the seed is recorded in
every report header.  `--format json` emits one machine-readable document.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import verify
from .classify import classification_report
from .errors import RevlabError
from .fixtures import REPRO_NAMES
from .operators import RevisionOperator, parse_operator
from .prop import Signature, parse_models
from .states import dump_state, enumerate_states, parse_state, sample_states

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1000


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="revlab", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, operator=True, state=False, universe=False):
        if state:
            p.add_argument("--state", required=True, help="state file (sig/bel/scope/order lines)")
        if operator:
            p.add_argument("--operator", help="operator spec file")
        if universe:
            p.add_argument("--sig", help="signature atoms, e.g. 'a b'")
            p.add_argument(
                "--universe",
                default="faithful",
                choices=("faithful", "clf", "fa", "il"),
                help="state universe kind (default: faithful)",
            )
            p.add_argument("--unbiased", action="store_true", help="require the universe to be unbiased")
            p.add_argument(
                "--global-consistency",
                action="store_true",
                help="exclude states with inconsistent beliefs",
            )
            p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="instances sampled at 3 atoms")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--format", default="text", choices=("text", "json"))
        p.add_argument(
            "--consistent-only",
            action="store_true",
            help="exclude the contradiction from formula quantifiers",
        )
        p.add_argument(
            "--max-counterexamples",
            type=int,
            default=5,
            help="counterexamples reported per failing check",
        )

    p = sub.add_parser("revise", help="run a revision sequence, printing each posterior state")
    common(p, state=True)
    p.add_argument("formulas", nargs="*", help="input formulas, applied in order")

    p = sub.add_parser("check", help="check postulates / characterisation theorems")
    common(p, universe=True)
    p.add_argument("ids", nargs="+", help="postulate or theorem ids, or 'all'")

    p = sub.add_parser("classify", help="per-class scope/latency/reasonableness report")
    common(p, state=True, universe=True)

    p = sub.add_parser("repro", help="replay a built-in worked example")
    p.add_argument("name", choices=sorted(REPRO_NAMES))
    p.add_argument("--format", default="text", choices=("text", "json"))

    p = sub.add_parser("enumerate", help="enumerate a state universe")
    common(p, operator=False, universe=True)
    p.add_argument("--count-only", action="store_true")
    return top


def _load_operator(args, sig: Signature | None) -> RevisionOperator:
    if not getattr(args, "operator", None):
        return RevisionOperator("dl")
    with open(args.operator) as fh:
        return parse_operator(fh.read(), sig)


def _universe(args, sig: Signature, op):
    """Universe plus either full states (n<=2) or sampled (state, alpha) pairs."""
    il_scope = getattr(op, "il_scope", None)
    kind = args.universe if il_scope is None else "il"
    uni = enumerate_states(sig, kind, args.global_consistency, il_scope)
    if sig.n_atoms <= 2:
        states, instance_list = list(uni.states), None
    else:
        rng = random.Random(args.seed)
        states = sample_states(sig, kind, args.samples, rng, args.global_consistency, il_scope)
        lo = 1 if args.consistent_only else 0
        instance_list = [(st, rng.randrange(lo, 1 << sig.n_worlds)) for st in states]
    if args.unbiased and instance_list is None and not uni.is_unbiased():
        raise RevlabError("universe is not unbiased")
    return uni, states, instance_list


def _emit(args, header: dict, rows: list[dict], any_fail: bool) -> int:
    if args.format == "json":
        data = [
            {k: v for k, v in row.items() if k not in ("line", "blocks")} for row in rows
        ]
        print(json.dumps({**header, "checks": data}, indent=2, sort_keys=True))
    else:
        for key, value in header.items():
            print(f"# {key}: {value}")
        for row in rows:
            print(row["line"])
            for block in row.get("blocks", ()):
                print(block, end="")
    return 1 if any_fail else 0


def _verdict_row(v: verify.Verdict, op_name: str, n_atoms: int, sig: Signature) -> dict:
    result = "PASS" if v.holds else "FAIL"
    line = f"CHECK {v.check_id} op={op_name} n={n_atoms} instances={v.instances} result={result}"
    blocks = []
    ces = []
    for ce in v.counterexamples:
        parts = [dump_state(sig, ce.state)]
        parts.append(f"# clause: {ce.clause}\n")
        if ce.alpha is not None:
            parts.append(f"# alpha: class {ce.alpha}\n")
        if ce.beta is not None:
            parts.append(f"# beta: class {ce.beta}\n")
        parts.append(f"# observed: {ce.observed}  required: {ce.required}\n")
        blocks.append("".join(parts))
        ces.append(
            {
                "state": dump_state(sig, ce.state),
                "alpha": ce.alpha,
                "beta": ce.beta,
                "clause": ce.clause,
                "observed": repr(ce.observed),
                "required": repr(ce.required),
            }
        )
    return {
        "id": v.check_id,
        "result": result,
        "instances": v.instances,
        "note": v.note,
        "line": line,
        "blocks": blocks,
        "counterexamples": ces,
    }


def cmd_revise(args) -> int:
    with open(args.state) as fh:
        sig, st = parse_state(fh.read())
    op = _load_operator(args, sig)
    rows = [{"line": f"# initial\n{dump_state(sig, st)}", "state": dump_state(sig, st)}]
    for text in args.formulas:
        alpha = parse_models(text, sig)
        st = op.apply(st, alpha)
        rows.append(
            {"line": f"# after {text}\n{dump_state(sig, st)}", "state": dump_state(sig, st), "input": text}
        )
    header = {"command": "revise", "operator": op.name, "seed": args.seed}
    return _emit(args, header, rows, any_fail=False)


def _expand_ids(ids: list[str], op) -> list[str]:
    family_ids = {
        "dl": [f"DL{i}" for i in range(1, 8)],
        "cl": [f"CL{i}" for i in range(1, 7)],
        "il": [f"IL{i}" for i in range(1, 8)],
        "agm": [f"CL{i}" for i in range(1, 7)] + [f"IL{i}" for i in range(1, 8)],
    }
    out: list[str] = []
    for raw in ids:
        if raw == "all":
            out.extend(family_ids[op.family])
        else:
            out.append(raw)
    valid = set(verify.POSTULATE_IDS) | set(verify.THEOREM_IDS)
    for check_id in out:
        if check_id not in valid:
            raise RevlabError(
                f"unknown id {check_id!r}; valid ids: {', '.join(list(verify.POSTULATE_IDS) + list(verify.THEOREM_IDS))}"
            )
    return out


def cmd_check(args) -> int:
    if not args.sig:
        raise RevlabError("check needs --sig")
    sig = Signature.of(args.sig)
    op = _load_operator(args, sig)
    uni, states, instance_list = _universe(args, sig, op)
    ids = _expand_ids(args.ids, op)
    rows = []
    any_fail = False
    for check_id in ids:
        if check_id in verify.THEOREM_IDS:
            v = verify.verify_equivalence(
                op,
                uni,
                check_id,
                states=states,
                instance_list=instance_list,
                consistent_only=args.consistent_only,
                max_counterexamples=args.max_counterexamples,
            )
        else:
            v = verify.check_postulate(
                op,
                uni,
                check_id,
                states=states,
                instance_list=instance_list,
                consistent_only=args.consistent_only,
                max_counterexamples=args.max_counterexamples,
            )
        if instance_list is not None:
            v.seed = args.seed
        any_fail = any_fail or not v.holds
        rows.append(_verdict_row(v, op.name, sig.n_atoms, sig))
    header = {
        "command": "check",
        "operator": op.name,
        "universe": f"{uni.kind} (global_consistency={uni.global_consistency}, "
        f"sampled={instance_list is not None})",
        "seed": args.seed,
        "consistent_only": args.consistent_only,
        "reading": "order conditions treat out-of-domain worlds as unrelated; "
        "scoped-independence world variables range over accepted minterms",
    }
    return _emit(args, header, rows, any_fail)


def cmd_classify(args) -> int:
    with open(args.state) as fh:
        sig, st = parse_state(fh.read())
    op = _load_operator(args, sig)
    universe = None
    if sig.n_atoms <= 2:
        universe, _, _ = _universe(args, sig, op)
    lines = classification_report(op, st, universe, sig)
    header = {"command": "classify", "operator": op.name, "seed": args.seed}
    rows = [{"line": line} for line in lines]
    return _emit(args, header, rows, any_fail=False)


def cmd_repro(args) -> int:
    rows = []
    any_fail = False
    for row in REPRO_NAMES[args.name]():
        status = "PASS" if row.ok else "FAIL"
        line = f"REPRO {args.name}: {row.label}: {status}"
        if not row.ok:
            any_fail = True
            line += f" (observed {row.observed}, required {row.required})"
        rows.append({"line": line, "label": row.label, "result": status})
    header = {"command": "repro", "name": args.name}
    return _emit(args, header, rows, any_fail)


def cmd_enumerate(args) -> int:
    if not args.sig:
        raise RevlabError("enumerate needs --sig")
    sig = Signature.of(args.sig)
    uni, states, instance_list = _universe(args, sig, RevisionOperator("dl"))
    sampled = instance_list is not None
    rows = [{"line": f"# states: {len(states)}{' (sampled)' if sampled else ''}"}]
    if not args.count_only:
        rows += [{"line": dump_state(sig, st), "state": dump_state(sig, st)} for st in states]
    header = {
        "command": "enumerate",
        "universe": uni.kind,
        "global_consistency": uni.global_consistency,
        "seed": args.seed,
    }
    return _emit(args, header, rows, any_fail=False)


COMMANDS = {
    "revise": cmd_revise,
    "check": cmd_check,
    "classify": cmd_classify,
    "repro": cmd_repro,
    "enumerate": cmd_enumerate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except RevlabError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
