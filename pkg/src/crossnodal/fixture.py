"""Fixture documents: strict JSON parsing, reference resolution, task execution, canonical output.

A document looks like::

    {
      "format_version": "1",
      "algebras": {"N": {"preset": "trunc_node(3)"}},
      "groups": {"C2": {"preset": "cyclic(2)"}},
      "actions": {"swap": {"algebra": "N", "group": "C2", "phi": {"s": [[...]]}, "omega": {"s,s": ["-1", 0, 0, 0, 0]}}},
      "pairs": {"node": {"preset": "node_pair(3)"}},
      "tasks": [{"task": "verify-closure", "pair": "node", "action": "hswap", "expect": {"nodal": true}}]
    }

Rationals are integers or strings "p/q"; floats are rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from json.decoder import JSONArray, JSONObject
from json.scanner import py_make_scanner
from typing import Any

from . import linalg as la
from .action import (ActionDatum, GroupTable, InvalidAction, action_datum, check_strict_separability,
                     crossed_product, free_rank_report, group_table, separability_witness, validate_action,
                     validate_group)
from .algebra import Algebra, AlgebraError, subalgebra_closure, validate_algebra
from .endo import invariant_module, morita_transport_check, phi_isomorphism
from .lemma34 import HypothesisViolation, batch_check, classify_matrix_condition, exhaustive_check
from .linalg import Subspace
from .modules import direct_sum, left_ideal_module, regular_module
from .nodal import NotBackstrom, SemilocalPair, pair_report, validate_pair, verify_closure_theorem
from .presets import preset, preset_kind
from .radical import (DEFAULT_SEED, CertificateError, NotSplit, is_hereditary, is_semisimple,
                      jacobson_radical, radical_certificate, semiperfect_data, wedderburn)

FORMAT_VERSION = "1"
DEFAULT_MAX_DIM = 512

TASKS = ("validate", "radical", "wedderburn", "crossed-product", "check-action", "check-separability",
         "pair-report", "lemma34-classify", "verify-closure", "phi-check", "morita-check")

_TOP_KEYS = {"format_version", "algebras", "groups", "actions", "pairs", "tasks"}
_SECTION_KEYS = {
    "algebras": {"preset", "structure", "unit", "labels"},
    "groups": {"preset", "table", "labels"},
    "actions": {"preset", "algebra", "group", "phi", "omega"},
    "pairs": {"preset", "ambient", "generators", "basis"},
}
_TASK_KEYS = {
    "validate": {"algebra", "pair", "group", "action"},
    "radical": {"algebra"},
    "wedderburn": {"algebra", "allow_fields"},
    "crossed-product": {"action"},
    "check-action": {"action"},
    "check-separability": {"action"},
    "pair-report": {"pair"},
    "lemma34-classify": {"B", "a", "exhaustive"},
    "verify-closure": {"pair", "action"},
    "phi-check": {"action"},
    "morita-check": {"pair", "progenerator"},
}
_COMMON_TASK_KEYS = {"task", "id", "expect"}


class FixtureError(ValueError):
    """Input error; ``line``/``column`` point into the source text when known.

    ``offset`` is a raw character offset filled in by low-level helpers that
    do not see the text; :func:`parse_fixture` converts it to line/column.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 offset: int | None = None):
        self.message, self.line, self.column, self.offset = message, line, column, offset
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


# -- positioned JSON -----------------------------------------------------

class _Obj(dict):
    """dict remembering where its keys start in the source."""

    key_pos: dict
    start: int


class _Arr(list):
    """list remembering where it and its elements start in the source."""

    start: int
    _src: str
    _end: int
    _pos: list | None = None

    def position(self, i: int) -> int:
        if self._pos is None:
            self._pos = _element_positions(self._src, self.start, self._end)
        return self._pos[i] if i < len(self._pos) else self.start


def _depth1_tokens(s: str, start: int, end: int):
    """Yield (kind, offset) for depth-1 strings and value starts inside s[start:end]."""
    depth = 0
    i = start
    fresh = False  # just after the opening bracket or a depth-1 comma
    while i < end:
        ch = s[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if depth == 1 and fresh:
            yield "item", i
            fresh = False
        if ch == '"':
            j = i + 1
            while s[j] != '"':
                j += 2 if s[j] == "\\" else 1
            i = j + 1
            continue
        if ch in "{[":
            depth += 1
            fresh = depth == 1
        elif ch in "}]":
            depth -= 1
        elif ch == "," and depth == 1:
            fresh = True
        i += 1


def _key_positions(s: str, start: int, end: int) -> list:
    """(key, offset) for the depth-1 keys of the object spanning s[start:end], in order."""
    out = []
    for _, i in _depth1_tokens(s, start, end):
        j = i + 1
        while s[j] != '"':
            j += 2 if s[j] == "\\" else 1
        out.append((json.loads(s[i:j + 1]), i))
    return out


def _element_positions(s: str, start: int, end: int) -> list:
    return [i for _, i in _depth1_tokens(s, start, end)]


class _Decoder(json.JSONDecoder):
    def __init__(self, text: str):
        super().__init__()

        def parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None):
            s, begin = s_and_end
            pairs, end = JSONObject(s_and_end, strict, scan_once, None, lambda p: p, memo)
            keys = _key_positions(s, begin - 1, end) if pairs else []
            seen = set()
            for k, pos in keys:
                if k in seen:
                    raise FixtureError(f"duplicate key {k!r}", *_line_col(s, pos))
                seen.add(k)
            obj = _Obj(pairs)
            obj.start = begin - 1
            obj.key_pos = dict(keys)
            return obj, end

        def parse_array(s_and_end, scan_once):
            s, begin = s_and_end
            values, end = JSONArray(s_and_end, scan_once)
            arr = _Arr(values)
            arr.start, arr._src, arr._end = begin - 1, s, end
            return arr, end

        self.parse_object = parse_object
        self.parse_array = parse_array
        self.scan_once = py_make_scanner(self)


def _line_col(s: str, pos: int) -> tuple[int, int]:
    line = s.count("\n", 0, pos) + 1
    return line, pos - (s.rfind("\n", 0, pos) + 1) + 1


def load_json(text: str):
    try:
        return _Decoder(text).decode(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


# -- documents ----------------------------------------------------------

@dataclass
class FixtureDocument:
    text: str
    raw: dict
    algebras: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)


def _err(doc_text: str, obj, key: str | None, message: str) -> FixtureError:
    pos = None
    if isinstance(obj, _Obj):
        pos = obj.key_pos.get(key, obj.start) if key is not None else obj.start
    if pos is None:
        return FixtureError(message)
    return FixtureError(message, *_line_col(doc_text, pos))


def _check_keys(text, obj, allowed, where):
    if not isinstance(obj, dict):
        raise _err(text, None, None, f"{where} must be an object")
    for k in obj:
        if k not in allowed:
            raise _err(text, obj, k, f"unknown key {k!r} in {where}")


def parse_rational(x, where: str = "value", offset: int | None = None) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FixtureError(f"{where}: expected an integer or a \"p/q\" string, got {x!r}", offset=offset)
    if isinstance(x, str) and not re.fullmatch(r"[-+]?\d+(/\d+)?", x):
        raise FixtureError(f"{where}: malformed rational {x!r}", offset=offset)
    try:
        return la.to_fraction(x)
    except ZeroDivisionError:
        raise FixtureError(f"{where}: denominator 0 in {x!r}", offset=offset) from None


def _start(x):
    return getattr(x, "start", None)


def _vector(x, where, n=None):
    if not isinstance(x, list):
        raise FixtureError(f"{where}: expected an array", offset=_start(x))
    pos = x.position if isinstance(x, _Arr) else (lambda i: None)
    v = tuple(parse_rational(c, f"{where}[{i}]", pos(i)) for i, c in enumerate(x))
    if n is not None and len(v) != n:
        raise FixtureError(f"{where}: expected length {n}, got {len(v)}", offset=_start(x))
    return v


def _matrix(x, where, rows=None, cols=None):
    if not isinstance(x, list):
        raise FixtureError(f"{where}: expected an array of rows", offset=_start(x))
    m = [_vector(r, f"{where}[{i}]", cols) for i, r in enumerate(x)]
    if rows is not None and len(m) != rows:
        raise FixtureError(f"{where}: expected {rows} rows, got {len(m)}", offset=_start(x))
    return m


def parse_fixture(text: str, max_dim: int = DEFAULT_MAX_DIM) -> FixtureDocument:
    try:
        return _parse(text, max_dim)
    except FixtureError as exc:
        if exc.line is None and exc.offset is not None:
            raise FixtureError(exc.message, *_line_col(text, exc.offset)) from None
        raise


def _parse(text: str, max_dim: int) -> FixtureDocument:
    raw = load_json(text)
    _check_keys(text, raw, _TOP_KEYS, "document")
    if raw.get("format_version") != FORMAT_VERSION:
        raise _err(text, raw, "format_version",
                   f"unsupported format_version {raw.get('format_version')!r}, expected \"1\"")
    doc = FixtureDocument(text, raw)
    for section in ("algebras", "groups", "actions", "pairs"):
        body = raw.get(section, {})
        _check_keys(text, body, body.keys(), section)
        for name, spec in body.items():
            _check_keys(text, spec, _SECTION_KEYS[section], f"{section}.{name}")
    _resolve(doc, max_dim)
    tasks = raw.get("tasks", [])
    if not isinstance(tasks, list):
        raise _err(text, raw, "tasks", "tasks must be an array")
    for i, t in enumerate(tasks):
        _check_keys(text, t, _COMMON_TASK_KEYS | set().union(*_TASK_KEYS.values()), f"tasks[{i}]")
        kind = t.get("task")
        if kind not in _TASK_KEYS:
            raise _err(text, t, "task", f"tasks[{i}]: unknown task {kind!r}")
        _check_keys(text, t, _COMMON_TASK_KEYS | _TASK_KEYS[kind], f"tasks[{i}] ({kind})")
        for ref, table in (("algebra", doc.algebras), ("pair", doc.pairs), ("group", doc.groups),
                           ("action", doc.actions)):
            if ref in t and t[ref] not in table:
                raise _err(text, t, ref, f"unresolved reference {t[ref]!r}")
        if "expect" in t and not isinstance(t["expect"], dict):
            raise _err(text, t, "expect", f"tasks[{i}]: expect must be an object")
        doc.tasks.append(t)
    return doc


def _guard(dim: int, max_dim: int, what: str, at=None):
    if dim > max_dim:
        raise FixtureError(f"{what} has dimension {dim}, above --max-dim {max_dim}", offset=_start(at))


def _preset_of(text, spec, kind, name):
    expr = spec["preset"]
    if not isinstance(expr, str):
        raise _err(text, spec, "preset", f"{name}: preset must be a string")
    if len(spec) != 1:
        raise _err(text, spec, next(k for k in spec if k != "preset"),
                   f"{name}: a preset definition takes no other keys")
    try:
        k = preset_kind(expr)
        if k != kind:
            raise _err(text, spec, "preset", f"{name}: preset {expr!r} is of kind {k}, expected {kind}")
        return preset(expr)
    except AlgebraError as exc:
        raise _err(text, spec, "preset", f"{name}: {exc}") from None


def _lookup(text, spec, key, table, name):
    ref = spec.get(key)
    if ref not in table:
        raise _err(text, spec, key, f"{name}: unresolved reference {ref!r}")
    return table[ref]


def _resolve(doc: FixtureDocument, max_dim: int):
    text, raw = doc.text, doc.raw
    for name, spec in raw.get("algebras", {}).items():
        if "preset" in spec:
            alg = _preset_of(text, spec, "algebra", name)
        else:
            if "structure" not in spec or "unit" not in spec:
                raise _err(text, spec, None, f"{name}: need 'structure' and 'unit' (or 'preset')")
            unit = _vector(spec["unit"], f"{name}.unit")
            d = len(unit)
            _guard(d, max_dim, name, spec)
            st = spec["structure"]
            if not isinstance(st, list) or len(st) != d:
                raise _err(text, spec, "structure", f"{name}: structure must be {d} x {d} x {d}")
            structure = [_matrix(row, f"{name}.structure[{i}]", d, d) for i, row in enumerate(st)]
            labels = spec.get("labels")
            try:
                alg = Algebra(structure, unit, labels, name)
            except AlgebraError as exc:
                raise _err(text, spec, None, f"{name}: {exc}") from None
        _guard(alg.dim, max_dim, name, spec)
        doc.algebras[name] = alg
    for name, spec in raw.get("groups", {}).items():
        if "preset" in spec:
            doc.groups[name] = _preset_of(text, spec, "group", name)
        else:
            table = spec.get("table")
            if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
                raise _err(text, spec, "table", f"{name}: table must be an array of rows")
            if any(isinstance(x, bool) or not isinstance(x, int) for r in table for x in r):
                raise _err(text, spec, "table", f"{name}: table entries must be integers")
            try:
                doc.groups[name] = group_table(table, spec.get("labels"))
            except (AlgebraError, ValueError) as exc:
                raise _err(text, spec, "table", f"{name}: {exc}") from None
    for name, spec in raw.get("actions", {}).items():
        if "preset" in spec:
            base = {k: v for k, v in spec.items() if k != "omega"}
            base = _Obj(base)
            base.start, base.key_pos = spec.start, spec.key_pos
            datum = _preset_of(text, base, "action", name)
            if "omega" in spec:  # single entries overriding the preset's factor system
                datum = _override_omega(text, spec, name, datum)
        else:
            alg = _lookup(text, spec, "algebra", doc.algebras, name)
            G = _lookup(text, spec, "group", doc.groups, name)
            datum = _explicit_action(text, spec, name, alg, G)
        _guard(datum.algebra.dim * datum.group.order, max_dim, f"crossed product of {name}", spec)
        doc.actions[name] = datum
    for name, spec in raw.get("pairs", {}).items():
        if "preset" in spec:
            pair = _preset_of(text, spec, "pair", name)
        else:
            H = _lookup(text, spec, "ambient", doc.algebras, name)
            if ("generators" in spec) == ("basis" in spec):
                raise _err(text, spec, None, f"{name}: give exactly one of 'generators' or 'basis'")
            if "generators" in spec:
                gens = _matrix(spec["generators"], f"{name}.generators", cols=H.dim)
                sub = subalgebra_closure(H, gens)
            else:
                sub = Subspace.span(_matrix(spec["basis"], f"{name}.basis", cols=H.dim), H.dim)
            pair = SemilocalPair(H, sub, name)
        doc.pairs[name] = pair


def _group_index(text, spec, key, G: GroupTable, label: str, name: str) -> int:
    if label in G.labels:
        return G.labels.index(label)
    raise _err(text, spec, key, f"{name}: unknown group element {label!r}")


def _omega_entries(text, spec, name, alg: Algebra, G: GroupTable) -> dict:
    omega = {}
    given = spec.get("omega", {})
    if not isinstance(given, dict):
        raise _err(text, spec, "omega", f"{name}: omega must map \"f,g\" to elements")
    for key, v in given.items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise _err(text, given, key, f"{name}: omega keys look like \"f,g\"")
        f, g = (_group_index(text, given, key, G, p, name) for p in parts)
        omega[(f, g)] = _vector(v, f"{name}.omega.{key}", alg.dim)
    return omega


def _explicit_action(text, spec, name, alg: Algebra, G: GroupTable) -> ActionDatum:
    phi = [la.identity(alg.dim) for _ in G.elements()]
    given = spec.get("phi", {})
    if not isinstance(given, dict):
        raise _err(text, spec, "phi", f"{name}: phi must map group labels to matrices")
    for lab, m in given.items():
        g = _group_index(text, given, lab, G, lab, name)
        phi[g] = _matrix(m, f"{name}.phi.{lab}", alg.dim, alg.dim)
    return action_datum(alg, G, phi, _omega_entries(text, spec, name, alg, G))


def _override_omega(text, spec, name, datum: ActionDatum) -> ActionDatum:
    table = [list(r) for r in datum.omega]
    for (f, g), v in _omega_entries(text, spec, name, datum.algebra, datum.group).items():
        table[f][g] = v
    return action_datum(datum.algebra, datum.group, datum.phi, table)


# -- canonical output ---------------------------------------------------

def jsonable(obj: Any):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Subspace):
        return {"dim": obj.dim, "basis": [jsonable(v) for v in obj.basis]}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def _canonical_value(v):
    """Numbers in a raw fixture as canonical rational strings; other values unchanged."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, str) and re.fullmatch(r"[-+]?\d+(/\d+)?", v):
        return str(parse_rational(v))
    if isinstance(v, dict):
        return {k: _canonical_value(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_canonical_value(x) for x in v]
    return v


def serialize_fixture(doc: FixtureDocument) -> str:
    """Canonical text of a parsed document; parse and serialise again gives the same text."""
    raw = doc.raw
    out = {"format_version": FORMAT_VERSION}
    for section in ("algebras", "groups", "actions", "pairs"):
        if section in raw:
            out[section] = _canonical_value(raw[section])
    if "tasks" in raw:
        out["tasks"] = _canonical_value(raw["tasks"])
    return json.dumps(out, indent=2, ensure_ascii=False) + "\n"


# -- tasks --------------------------------------------------------------

def _progenerator(pair: SemilocalPair, summands, seed: int):
    A = pair.sub_algebra
    if not isinstance(summands, list) or not summands:
        raise FixtureError("progenerator must be a non-empty array like [\"A\", \"e1\"]")
    mods = []
    lifted = None
    for s in summands:
        if s == "A":
            mods.append(regular_module(A))
            continue
        m = re.fullmatch(r"e(\d+)", str(s))
        if not m:
            raise FixtureError(f"unknown progenerator summand {s!r}")
        if lifted is None:
            lifted = semiperfect_data(A, seed).lifted
        k = int(m.group(1))
        if not 1 <= k <= len(lifted):
            raise FixtureError(f"summand {s!r}: only {len(lifted)} primitive idempotents")
        e = lifted[k - 1]
        mods.append(left_ideal_module(A, Subspace.span(la.transpose(A.right_matrix(e)), A.dim)))
    return direct_sum(*mods)


def _wedderburn_result(alg: Algebra, seed: int, allow_fields: bool) -> dict:
    try:
        data = wedderburn(alg, seed, allow_fields=allow_fields)
    except NotSplit as exc:
        return {"split": False, "reason": str(exc)}
    return {"split": data.split, "sizes": list(data.sizes),
            "division_dims": [b.division_dim for b in data.blocks],
            "block_dims": [b.dim for b in data.blocks],
            "primitive_idempotents": [list(e) for e in data.prim_idems]}


def run_task(doc: FixtureDocument, task: dict, seed: int = DEFAULT_SEED, max_dim: int = DEFAULT_MAX_DIM) -> dict:
    kind = task["task"]
    if kind == "validate":
        if "algebra" in task:
            probs = validate_algebra(doc.algebras[task["algebra"]])
        elif "pair" in task:
            probs = validate_pair(doc.pairs[task["pair"]])
        elif "group" in task:
            probs = validate_group(doc.groups[task["group"]])
        elif "action" in task:
            d = doc.actions[task["action"]]
            probs = validate_action(d.algebra, d)
        else:
            raise FixtureError("validate needs one of algebra, pair, group, action")
        return {"valid": not probs, "problems": probs}
    if kind == "radical":
        alg = doc.algebras[task["algebra"]]
        rad = jacobson_radical(alg)
        return {"dim": rad.dim, "basis": [list(v) for v in rad.basis],
                "certificate_problems": radical_certificate(alg, rad), "semisimple": rad.dim == 0}
    if kind == "wedderburn":
        return _wedderburn_result(doc.algebras[task["algebra"]], seed, bool(task.get("allow_fields", False)))
    if kind == "crossed-product":
        d = doc.actions[task["action"]]
        cp = crossed_product(d.algebra, d)
        B = cp.total
        rad_b = jacobson_radical(B)
        rad_formula = cp.lift_subspace(jacobson_radical(d.algebra))
        return {"dim": B.dim, "valid_algebra": not validate_algebra(B), "radical_dim": rad_b.dim,
                "radical_formula": rad_b == rad_formula,
                "semisimple": {"base": is_semisimple(d.algebra), "crossed": is_semisimple(B)},
                "hereditary": {"base": is_hereditary(d.algebra, seed), "crossed": is_hereditary(B, seed)},
                "free": free_rank_report(cp)["free"]}
    if kind == "check-action":
        d = doc.actions[task["action"]]
        probs = validate_action(d.algebra, d)
        naive = crossed_product(d.algebra, d, check=False)
        assoc = validate_algebra(naive.total)
        return {"valid": not probs, "problems": probs, "associative": not assoc,
                "associativity_failures": len(assoc)}
    if kind == "check-separability":
        d = doc.actions[task["action"]]
        cp = crossed_product(d.algebra, d)
        wit = separability_witness(cp)
        rep = check_strict_separability(cp.total, cp.base_subspace(), wit.w, wit.pi)
        rep["free"] = free_rank_report(cp)["free"]
        return rep
    if kind == "pair-report":
        pair = doc.pairs[task["pair"]]
        probs = validate_pair(pair)
        if probs:
            return {"valid": False, "problems": probs, "nodal": False}
        return {"valid": True, **pair_report(pair, seed)}
    if kind == "lemma34-classify":
        if "exhaustive" in task:
            opts = task["exhaustive"]
            if not isinstance(opts, dict) or set(opts) - {"max_n", "max_entry", "a_values", "backend"}:
                raise FixtureError("exhaustive takes max_n, max_entry, a_values, backend")
            args = (opts.get("max_n", 3), opts.get("max_entry", 3), tuple(opts.get("a_values", (1, 2))))
            if opts.get("backend", "python") == "python":
                res = exhaustive_check(*args)
                res["counterexample_count"] = len(res["counterexamples"])
                return res
            res = batch_check(*args)
            res.pop("backend")  # reports must not depend on the installed accelerator
            return res
        B, a = task.get("B"), task.get("a")
        if not isinstance(B, list) or not isinstance(a, list):
            raise FixtureError("lemma34-classify needs B and a, or exhaustive")
        c = classify_matrix_condition(B, a)
        return {"holds1": c.holds1, "holds2": c.holds2, "holds3": c.holds3}
    if kind == "verify-closure":
        pair, d = doc.pairs[task["pair"]], doc.actions[task["action"]]
        _guard(pair.ambient.dim * d.group.order, max_dim, "crossed pair")
        if d.algebra is not pair.ambient:
            raise FixtureError("the action must be defined on the pair's ambient algebra")
        return verify_closure_theorem(pair, d, seed)
    if kind == "phi-check":
        d = doc.actions[task["action"]]
        im = invariant_module(regular_module(d.algebra), d.phi)
        return phi_isomorphism(d.algebra, d, im)
    if kind == "morita-check":
        pair = doc.pairs[task["pair"]]
        prog = _progenerator(pair, task.get("progenerator", ["A"]), seed)
        _guard(pair.ambient.dim * prog.dim, max_dim, "induced module")
        rep = morita_transport_check(pair, prog, seed)
        rep.pop("pair")
        return rep
    raise FixtureError(f"unknown task {kind!r}")  # pragma: no cover


def _lookup_path(result: dict, path: str):
    cur = result
    for part in path.split("."):
        if not isinstance(cur, dict) or part not in cur:
            raise KeyError(path)
        cur = cur[part]
    return cur


def _inputs(task: dict) -> dict:
    return {k: task[k] for k in ("algebra", "group", "action", "pair", "progenerator", "B", "a", "exhaustive")
            if k in task}


_EXPECTED_ERRORS = (FixtureError, AlgebraError, InvalidAction, NotBackstrom, CertificateError,
                    HypothesisViolation, ZeroDivisionError)


def run_document(doc: FixtureDocument, seed: int = DEFAULT_SEED, max_dim: int = DEFAULT_MAX_DIM) -> tuple[dict, int]:
    """Run every task in order; return the report and the process exit code."""
    entries = []
    errors = mismatches = 0
    for i, task in enumerate(doc.tasks):
        entry = {"index": i, "id": task.get("id", f"task{i}"), "task": task["task"], "inputs": _inputs(task)}
        try:
            result = jsonable(run_task(doc, task, seed, max_dim))
        except _EXPECTED_ERRORS as exc:
            entry.update(status="error", error=f"{type(exc).__name__}: {exc}")
            errors += 1
            entries.append(entry)
            continue
        entry["result"] = result
        status = "ok"
        if "expect" in task:
            bad = []
            for key, want in task["expect"].items():
                try:
                    got = _lookup_path(result, key)
                except KeyError:
                    bad.append({"key": key, "expected": jsonable(want), "actual": "<missing>"})
                    continue
                if got != jsonable(want):
                    bad.append({"key": key, "expected": jsonable(want), "actual": got})
            entry["expect"] = jsonable(task["expect"])
            if bad:
                entry["mismatches"] = bad
                status = "mismatch"
                mismatches += 1
        entry["status"] = status
        entries.append(entry)
    code = 2 if errors else (1 if mismatches else 0)
    report = {"format_version": FORMAT_VERSION, "seed": seed, "max_dim": max_dim, "tasks": entries,
              "summary": {"tasks": len(entries), "errors": errors, "mismatches": mismatches, "exit_code": code}}
    return report, code
