"""posetcode command line: analyze, verify, criteria, search, construct, gen, catalog."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .codes import (
    construct_m1_perfect,
    construct_m_perfect,
    format_code,
    is_perfect,
    parse_code,
    witness_json,
)
from .criteria import CriterionReport, CriterionResult, run_battery
from .errors import PosetCodeError
from .ideals import enumerate_ideals
from .metric import ball_size
from .poset import Poset, elements, format_poset, gen_poset, height, parse_poset, word_string
from .search import SearchConfig, exhaust_small_posets, find_perfect_code

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NONEXISTENCE = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_PARSE = 65

VERDICT_EXIT = {
    "existence_constructed": EXIT_OK,
    "nonexistence_proven": EXIT_NONEXISTENCE,
    "inconclusive": EXIT_INCONCLUSIVE,
}

# witness keys holding subsets of P (bitmasks) and single 0-based elements
_SET_KEYS = {"I", "I1", "I2", "V", "W", "maxV", "U", "v"}
_ELEMENT_KEYS = {"a", "a2", "b"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Inputs:
    """Reads input files once and remembers their digests for the report."""

    def __init__(self):
        self.digests = {}

    def read(self, path: str) -> str:
        data = Path(path).read_bytes() if path != "-" else sys.stdin.buffer.read()
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def poset(self, path: str) -> Poset:
        text = self.read(path)
        try:
            return parse_poset(text)
        except (PosetCodeError, ValueError) as exc:
            raise _ParseFailure(f"{path}: {exc}") from exc

    def code(self, path: str):
        text = self.read(path)
        try:
            return parse_code(text)
        except (PosetCodeError, ValueError) as exc:
            raise _ParseFailure(f"{path}: {exc}") from exc


class _ParseFailure(Exception):
    pass


def _witness(w, n: int):
    if isinstance(w, list):
        return [_witness(x, n) for x in w]
    if not isinstance(w, dict):
        return w
    out = {}
    for key, val in w.items():
        if key in _SET_KEYS and isinstance(val, int):
            out[key] = elements(val)
        elif key in _ELEMENT_KEYS:
            out[key] = [x + 1 for x in val] if isinstance(val, list) else val + 1
        else:
            out[key] = _witness(val, n)
    return out


def criterion_json(res: CriterionResult, n: int) -> dict:
    return {"criterion": res.criterion, "verdict": res.verdict, "witness": _witness(res.witness, n)}


def report_json(rep: CriterionReport, n: int) -> dict:
    out = {
        "context": rep.context,
        "verdict": rep.verdict,
        "fired": rep.fired(),
        "entries": [criterion_json(e, n) for e in rep.entries],
    }
    if rep.code is not None:
        out["code"] = format_code(rep.code)
    return out


# -- commands -------------------------------------------------------------------


def cmd_analyze(args, inputs: _Inputs):
    P = inputs.poset(args.poset)
    fam = enumerate_ideals(P, args.r)
    payload = {
        "n": P.n,
        "r": args.r,
        "ideal_count": len(fam),
        "P_r": elements(fam.union_mask),
        "core": elements(fam.core_mask),
        "u": fam.u,
        "lam": fam.lam,
        "k": fam.k,
        "essential": elements(fam.essential_mask),
        "ball": ball_size(P, args.r),
        "essential_height": height(P, fam.essential_mask),
    }
    lines = [f"{key}: {val}" for key, val in payload.items()]
    return EXIT_OK, payload, lines


def cmd_verify(args, inputs: _Inputs):
    P = inputs.poset(args.poset)
    C = inputs.code(args.code)
    if C.n != P.n:
        raise UsageError(f"code length {C.n} differs from poset size {P.n}")
    res = is_perfect(P, C, args.r, oracle=args.oracle)
    payload = {
        "r": args.r,
        "cardinality": C.cardinality,
        "packing_ok": res.packing_ok,
        "covering_ok": res.covering_ok,
        "perfect": res.perfect,
        "witness": witness_json(res.witness, P.n),
    }
    lines = [f"perfect: {res.perfect}", f"packing_ok: {res.packing_ok}", f"covering_ok: {res.covering_ok}"]
    if res.witness:
        lines.append(f"witness: {json.dumps(payload['witness'])}")
    return (EXIT_OK if res.perfect else EXIT_FAIL), payload, lines


def cmd_criteria(args, inputs: _Inputs):
    P = inputs.poset(args.poset)
    rep = run_battery(P, args.m, args.r)
    payload = report_json(rep, P.n)
    lines = [f"verdict: {rep.verdict}"]
    for e in payload["entries"]:
        extra = f"  {json.dumps(e['witness'])}" if e["verdict"] != "inconclusive" and e["witness"] else ""
        lines.append(f"  {e['criterion']:<13} {e['verdict']}{extra}")
    if rep.code is not None:
        lines.append("code:")
        lines += ["  " + s for s in payload["code"].splitlines()]
    return VERDICT_EXIT[rep.verdict], payload, lines


def cmd_search(args, inputs: _Inputs):
    P = inputs.poset(args.poset)
    cfg = SearchConfig(symmetry=not args.no_symmetry, parallel_width=args.jobs)
    if args.node_limit is not None:
        cfg = SearchConfig(node_limit=args.node_limit, symmetry=cfg.symmetry, parallel_width=cfg.parallel_width)
    res = find_perfect_code(P, args.r, cfg)
    words = [word_string(w, P.n) for w in res.code.codewords] if res.found else None
    payload = {
        "r": args.r,
        "status": res.status,
        "ball": res.ball_size,
        "nodes": res.nodes,
        "reason": res.reason,
        "code": words,
    }
    lines = [f"status: {res.status}", f"ball: {res.ball_size}", f"nodes: {res.nodes}"]
    if res.reason:
        lines.append(f"reason: {res.reason}")
    if words:
        lines.append(f"codewords ({len(words)}):")
        lines += ["  " + w for w in words]
    status_exit = {"found": EXIT_OK, "none": EXIT_NONEXISTENCE, "budget_exceeded": EXIT_INCONCLUSIVE}
    return status_exit[res.status], payload, lines


def cmd_construct(args, inputs: _Inputs):
    P = inputs.poset(args.poset)
    C = construct_m_perfect(P, args.m) if args.variant == "th0" else construct_m1_perfect(P, args.m)
    text = format_code(C)
    _write(args.output, text)
    payload = {"variant": args.variant, "m": args.m, "cardinality": C.cardinality, "code": text}
    return EXIT_OK, payload, [f"wrote {args.output}"] if args.output else text.splitlines()


def cmd_gen(args, inputs: _Inputs):
    params = args.params
    if args.kind == "disjoint_chains":
        P = gen_poset(args.kind, params)
    else:
        if len(params) != 1:
            raise UsageError(f"{args.kind} takes exactly one size parameter")
        P = gen_poset(args.kind, params[0])
    text = format_poset(P, f"{args.kind} {' '.join(map(str, params))}")
    _write(args.output, text)
    payload = {"kind": args.kind, "params": params, "n": P.n, "poset": text}
    return EXIT_OK, payload, [f"wrote {args.output}"] if args.output else text.splitlines()


def cmd_catalog(args, inputs: _Inputs):
    rows = []
    disagreements = 0
    out = open(args.output, "w") if args.output else None
    try:
        for entry in exhaust_small_posets(args.n_max, args.offset, n_min=args.n_min):
            rec = entry.to_json()
            disagreements += not entry.agree
            line = json.dumps(rec, sort_keys=True)
            if out:
                out.write(line + "\n")
            else:
                rows.append(line)
    finally:
        if out:
            out.close()
    payload = {"n_max": args.n_max, "offset": args.offset, "disagreements": disagreements}
    if args.json:
        payload["records"] = [json.loads(x) for x in rows]
    lines = rows + [f"# disagreements: {disagreements}"]
    return (EXIT_OK if disagreements == 0 else EXIT_FAIL), payload, lines


def _write(path: Optional[str], text: str):
    if path:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="posetcode", description="Perfect codes under poset metrics.")
    p.add_argument("--version", action="version", version=f"posetcode {__version__}")
    p.add_argument("--json", action="store_true", help="emit a JSON report instead of text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze", help="ideal-family statistics and ball size")
    s.add_argument("poset")
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("verify", help="check whether a code is r-perfect")
    s.add_argument("poset")
    s.add_argument("code")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="force the full coverage sweep")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("criteria", help="run the existence/nonexistence battery")
    s.add_argument("poset")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_criteria)

    s = sub.add_parser("search", help="exhaustive search for an r-perfect code")
    s.add_argument("poset")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-symmetry", action="store_true", help="do not fix the zero codeword")
    s.add_argument("--node-limit", type=int, default=None)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("construct", help="build an m- or (m-1)-perfect code")
    s.add_argument("poset")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("--variant", choices=("th0", "m1"), default="th0")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("gen", help="write a standard poset")
    s.add_argument("kind", choices=("chain", "antichain", "disjoint_chains", "crown"))
    s.add_argument("params", type=int, nargs="+")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("catalog", help="battery versus brute force on all small posets (JSON lines)")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--offset", type=int, required=True, help="r = m - offset")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        code, payload, lines = args.func(args, inputs)
    except _ParseFailure as exc:
        print(f"posetcode: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, PosetCodeError, OSError) as exc:
        print(f"posetcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    if args.json:
        report = {
            "tool_version": __version__,
            "inputs": inputs.digests,
            "command": ["posetcode", *argv],
            "exit_code": code,
            "payload": payload,
            "timing": {"seconds": round(elapsed, 6)},
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
