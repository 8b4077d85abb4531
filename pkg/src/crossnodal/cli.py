"""Command-line front end: ``crossnodal run FILE`` or one subcommand per task."""

from __future__ import annotations

import argparse
import json
import sys

from .fixture import (DEFAULT_MAX_DIM, FORMAT_VERSION, TASKS, FixtureError, dumps, parse_fixture,
                      run_document)
from .radical import DEFAULT_SEED

# which preset references each single-task subcommand takes
_REFS = {
    "validate": ("algebra", "pair", "group", "action"),
    "radical": ("algebra",),
    "wedderburn": ("algebra",),
    "crossed-product": ("action",),
    "check-action": ("action",),
    "check-separability": ("action",),
    "pair-report": ("pair",),
    "lemma34-classify": (),
    "verify-closure": ("pair", "action"),
    "phi-check": ("action",),
    "morita-check": ("pair",),
}


def _summary(report: dict) -> str:
    lines = []
    for t in report["tasks"]:
        status = t["status"]
        head = f"[{status:>8}] {t['id']}: {t['task']}"
        if status == "error":
            lines.append(f"{head} -- {t['error']}")
            continue
        r = t["result"]
        bits = []
        for key in ("valid", "nodal", "split", "strictly_separable", "isomorphism", "preserved",
                    "holds1", "holds2", "holds3", "dim", "ell_star", "mu"):
            if key in r:
                bits.append(f"{key}={json.dumps(r[key])}")
        lines.append(f"{head} {' '.join(bits)}".rstrip())
        for m in t.get("mismatches", []):
            lines.append(f"           expected {m['key']}={json.dumps(m['expected'])}, got {json.dumps(m['actual'])}")
    s = report["summary"]
    lines.append(f"{s['tasks']} tasks, {s['errors']} errors, {s['mismatches']} mismatches")
    return "\n".join(lines)


def _emit(report: dict, args) -> None:
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.summary:
        print(_summary(report), file=sys.stderr)


def _single_task_document(args) -> str:
    doc: dict = {"format_version": FORMAT_VERSION}
    task: dict = {"task": args.command, "id": args.command}
    sections = {"algebra": "algebras", "pair": "pairs", "group": "groups", "action": "actions"}
    for ref in _REFS[args.command]:
        expr = getattr(args, ref, None)
        if expr:
            doc.setdefault(sections[ref], {})[ref] = {"preset": expr}
            task[ref] = ref
    if args.command == "wedderburn" and args.allow_fields:
        task["allow_fields"] = True
    if args.command == "lemma34-classify":
        if args.exhaustive:
            task["exhaustive"] = {"max_n": args.max_n, "max_entry": args.max_entry,
                                  "a_values": args.a_values, "backend": args.backend}
        else:
            if args.B is None or args.a is None:
                raise FixtureError("lemma34-classify needs --B and --a, or --exhaustive")
            task["B"], task["a"] = json.loads(args.B), json.loads(args.a)
    if args.command == "morita-check" and args.progenerator:
        task["progenerator"] = [s.strip() for s in args.progenerator.split(",")]
    if args.expect:
        task["expect"] = json.loads(args.expect)
    doc["tasks"] = [task]
    return json.dumps(doc)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossnodal", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the idempotent search")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="refuse larger algebras")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--summary", action="store_true", help="print a human-readable summary to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run every task of a fixture file")
    run.add_argument("file")

    for name in TASKS:
        sp = sub.add_parser(name, parents=[common], help=f"run a single {name} task on presets")
        for ref in _REFS[name]:
            sp.add_argument(f"--{ref}", help=f"{ref} preset, e.g. trunc_node(3)")
        if name == "wedderburn":
            sp.add_argument("--allow-fields", action="store_true")
        if name == "lemma34-classify":
            sp.add_argument("--B", help="JSON matrix")
            sp.add_argument("--a", help="JSON vector")
            sp.add_argument("--exhaustive", action="store_true")
            sp.add_argument("--max-n", type=int, default=3)
            sp.add_argument("--max-entry", type=int, default=3)
            sp.add_argument("--a-values", type=int, nargs="+", default=[1, 2])
            sp.add_argument("--backend", choices=["python", "kernel"], default="python")
        if name == "morita-check":
            sp.add_argument("--progenerator", help="comma-separated summands, e.g. A,A or e1,e2,e1")
        sp.add_argument("--expect", help="JSON object of expected result values")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = _single_task_document(args)
        doc = parse_fixture(text, args.max_dim)
    except (FixtureError, OSError, json.JSONDecodeError) as exc:
        print(f"crossnodal: error: {exc}", file=sys.stderr)
        return 2
    report, code = run_document(doc, args.seed, args.max_dim)
    _emit(report, args)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
