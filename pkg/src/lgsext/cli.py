"""``lgsext`` command line: build, validate, ext, sixterm, ck.

Exit codes::

    0  success
    2  parse or usage error
    3  axiom violation
    4  insufficient depth
    5  internal consistency failure
    6  rejected input (builder precondition, degenerate matrix)
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import builders
from .cuntz_krieger import ck_compare, ck_six_term, ck_strong_ext, ck_weak_ext
from .documents import (
    DocumentError,
    dumps_lgs,
    dumps_records,
    file_digest,
    group_record,
    loads_lgs,
)
from .ext import (
    DEFAULT_WINDOW,
    ConsistencyError,
    GroupTower,
    InsufficientDepthError,
    SixTermReport,
    six_term_check,
    strong_ext0_truncated,
    strong_ext1_tower,
    weak_ext0_truncated,
    weak_ext1_tower,
)
from .intlinalg import IntMatrix, WellDefinednessError
from .lgs import InvalidSystemError, TruncatedLambdaGraphSystem, validate

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_AXIOM = 3
EXIT_DEPTH = 4
EXIT_CONSISTENCY = 5
EXIT_INPUT = 6

DEFAULT_DEPTHS = {"cuntz": 4, "cuntz-krieger": 4, "markov-coded": 7, "dyck": 8}
INVARIANTS = ("weak1", "strong1", "weak0", "strong0")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# Input helpers


def parse_matrix(text: str) -> IntMatrix:
    """Bracketed rows ``[[1,1],[1,0]]`` or whitespace-separated rows, one per line."""
    text = text.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"bad matrix literal: {exc}", EXIT_PARSE) from None
        if rows and all(isinstance(x, int) for x in rows):
            rows = [rows]  # "[2]" is the 1x1 matrix
    else:
        try:
            rows = [[int(x) for x in line.replace(",", " ").split()]
                    for line in text.splitlines() if line.strip()]
        except ValueError as exc:
            raise CliError(f"bad matrix: {exc}", EXIT_PARSE) from None
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) and r for r in rows)
            or not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r)):
        raise CliError("matrix must be a nonempty list of integer rows", EXIT_PARSE)
    if len({len(r) for r in rows}) != 1:
        raise CliError("matrix rows have different lengths", EXIT_PARSE)
    return IntMatrix.from_rows(rows)


def matrix_argument(arg: str) -> IntMatrix:
    """A literal, or a path to a file holding one."""
    if arg.lstrip().startswith("[") or not os.path.exists(arg):
        return parse_matrix(arg)
    with open(arg, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def read_document(path: str) -> tuple[TruncatedLambdaGraphSystem, dict]:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from None
    try:
        lgs, prov = loads_lgs(data.decode("utf-8"))
    except (DocumentError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    provenance = {"input_sha256": file_digest(data)}
    if prov is not None:
        provenance["source"] = prov
    return lgs, provenance


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Rendering


def tower_records(tower: GroupTower) -> list[dict]:
    recs = []
    for k, t in enumerate(tower.levels):
        rec = {"record": "tower", "invariant": tower.kind, "level": t.level}
        rec.update(group_record(t.group))
        if k + 1 < len(tower.levels):
            rec["map_from_next_iso"] = tower.connecting_maps[k].is_isomorphism
        recs.append(rec)
    st = tower.stabilization
    recs.append({"record": "stabilization", "invariant": tower.kind, "stabilized": st.stabilized,
                 "from_level": st.from_level, "window": st.window,
                 "limit": str(tower.limit) if tower.limit is not None else None})
    return recs


def tower_text(tower: GroupTower) -> str:
    lines = [f"{tower.kind}:"]
    for k, t in enumerate(tower.levels):
        mark = ""
        if k + 1 < len(tower.levels):
            mark = "  (map from next level: iso)" if tower.connecting_maps[k].is_isomorphism \
                else "  (map from next level: not iso)"
        lines.append(f"  L={t.level}: {t.group}{mark}")
    if tower.limit is not None:
        lines.append(f"  limit: {tower.limit} ({tower.stabilization})")
    else:
        lines.append(f"  no limit named: {tower.stabilization}")
    return "\n".join(lines)


def kernel_records(lgs: TruncatedLambdaGraphSystem, kind: str,
                   levels: Sequence[int], horizon: int | None) -> list[dict]:
    fn = weak_ext0_truncated if kind == "weak0" else strong_ext0_truncated
    recs = []
    for l in levels:
        k = fn(lgs, l, horizon)
        recs.append({"record": "kernel", "invariant": kind, "level": l, "horizon": k.horizon,
                     "rank": k.rank, "sum_image": k.sum_image})
    return recs


def kernel_text(kind: str, recs: list[dict]) -> str:
    lines = [f"{kind} (rank of truncated kernel, coordinatized at level L+1):"]
    for r in recs:
        lines.append(f"  L={r['level']}: Z^{r['rank']}  horizon {r['horizon']}, "
                     f"sum image {r['sum_image']}Z")
    return "\n".join(lines)


def sixterm_record(rep: SixTermReport) -> dict:
    return {
        "record": "sixterm", "level": rep.level,
        "strong0": str(rep.strong0), "weak0": str(rep.weak0),
        "strong1": str(rep.strong1), "weak1": str(rep.weak1),
        "sum_image": rep.sum_image, "iota_hat_one": list(rep.iota_hat_one),
        "iota_hat_integer": rep.iota_hat_integer, "iota_hat_kernel": rep.iota_hat_kernel,
        "junctions": dict(sorted(rep.junctions.items())), "verdict": rep.verdict,
        "stabilized": rep.stabilized, "notes": list(rep.notes),
    }


def sixterm_text(rep: SixTermReport) -> str:
    lines = [f"six-term sequence at level {rep.level}:", "  " + rep.sequence_text()]
    lines.append(f"  s: coordinate sum, image {rep.sum_image}Z")
    if rep.iota_hat_integer is not None:
        lines.append(f"  iota_hat: m -> {rep.iota_hat_integer}m under S = Z")
    else:
        lines.append(f"  iota_hat(1) = {list(rep.iota_hat_one)} in {rep.strong1}")
    names = {"a": "strong0 -> weak0 injective", "b": "exact at weak0",
             "c": "exact at Z", "d": "exact at strong1", "e": "strong1 -> weak1 onto"}
    for key in sorted(rep.junctions):
        lines.append(f"  ({key}) {names.get(key, key)}: {'ok' if rep.junctions[key] else 'FAIL'}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    lines.append("  verdict: " + ("exact" if rep.verdict else "NOT exact")
                 + ("" if rep.stabilized else " (inconclusive)"))
    return "\n".join(lines)


def provenance_text(prov: dict) -> str:
    return "provenance: " + json.dumps(prov, sort_keys=True)


def emit(fmt: str, records: list[dict], text_blocks: list[str]) -> None:
    if fmt == "machine":
        sys.stdout.write(dumps_records(records))
    else:
        sys.stdout.write("\n".join(text_blocks) + "\n")


# ---------------------------------------------------------------------------
# Commands


def cmd_build(args) -> int:
    depth = args.depth if args.depth is not None else DEFAULT_DEPTHS[args.family]
    params: dict = {"depth": depth}
    if args.family in ("cuntz", "dyck"):
        if args.N is None:
            raise CliError(f"{args.family} needs --N", EXIT_PARSE)
        params["N"] = args.N
        lgs = (builders.cuntz if args.family == "cuntz" else builders.dyck)(args.N, depth)
    else:
        if (args.matrix is None) == (args.matrix_file is None):
            raise CliError(f"{args.family} needs exactly one of --matrix, --matrix-file",
                           EXIT_PARSE)
        A = parse_matrix(args.matrix) if args.matrix is not None else matrix_argument(
            args.matrix_file)
        params["A"] = A.tolist()
        fn = builders.cuntz_krieger if args.family == "cuntz-krieger" else builders.markov_coded
        lgs = fn(A, depth)
    report = validate(lgs)
    if not report.passed:
        raise CliError("builder produced an invalid system:\n" + report.summary(),
                       EXIT_CONSISTENCY)
    write_output(dumps_lgs(lgs, {"builder": args.family, "params": params}), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    lgs, _ = read_document(args.input)
    report = validate(lgs)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_AXIOM


def _levels(lgs: TruncatedLambdaGraphSystem, level: int | None) -> list[int]:
    if level is None:
        return list(lgs.pair_levels)
    if level not in lgs.pair_levels:
        if level < lgs.base_level:
            raise CliError(f"level {level} is below the base level {lgs.base_level}",
                           EXIT_PARSE)
        raise InsufficientDepthError(f"level {level} is not in the truncation",
                                     level + 1 - lgs.base_level)
    return [level]


def cmd_ext(args) -> int:
    lgs, prov = read_document(args.input)
    report = validate(lgs)
    if not report.passed:
        raise CliError(report.summary(), EXIT_AXIOM)
    which = INVARIANTS if args.which == "all" else (args.which,)
    levels = _levels(lgs, args.level)
    records: list[dict] = [dict(record="provenance", **prov)]
    texts = [provenance_text(prov)]
    for inv in which:
        if inv in ("weak1", "strong1"):
            fn = weak_ext1_tower if inv == "weak1" else strong_ext1_tower
            tower = fn(lgs, args.window, validate=False)
            records += tower_records(tower)
            texts.append(tower_text(tower))
        else:
            recs = kernel_records(lgs, inv, levels, args.horizon)
            records += recs
            texts.append(kernel_text(inv, recs))
    emit(args.format, records, texts)
    return EXIT_OK


def cmd_sixterm(args) -> int:
    lgs, prov = read_document(args.input)
    report = validate(lgs)
    if not report.passed:
        raise CliError(report.summary(), EXIT_AXIOM)
    level = _levels(lgs, args.level)[0]
    rep = six_term_check(lgs, level, args.window, args.horizon)
    emit(args.format, [dict(record="provenance", **prov), sixterm_record(rep)],
         [provenance_text(prov), sixterm_text(rep)])
    return EXIT_OK


def cmd_ck(args) -> int:
    mats = [matrix_argument(m) for m in args.matrices]
    need = 2 if args.op == "compare" else 1
    if len(mats) != need:
        raise CliError(f"ck {args.op} takes {need} matrix argument(s)", EXIT_PARSE)
    prov = {"ck": args.op, "matrices": [m.tolist() for m in mats]}
    records: list[dict] = [dict(record="provenance", **prov)]
    if args.op in ("weak", "strong"):
        g = (ck_weak_ext if args.op == "weak" else ck_strong_ext)(mats[0])
        records.append(dict(record="group", invariant=args.op, **group_record(g)))
        texts = [str(g)]
    elif args.op == "sixterm":
        rep = ck_six_term(mats[0])
        records.append(sixterm_record(rep))
        texts = [sixterm_text(rep)]
    else:
        cmp = ck_compare(*mats)
        records.append({"record": "compare", "weak": [str(g) for g in cmp.weak],
                        "strong": [str(g) for g in cmp.strong], "agree": cmp.agree})
        texts = [f"weak:   {cmp.weak[0]}  vs  {cmp.weak[1]}",
                 f"strong: {cmp.strong[0]}  vs  {cmp.strong[1]}",
                 "agree" if cmp.agree else "differ"]
    emit(args.format, records, texts)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lgsext",
                                description="Ext invariants of lambda-graph systems.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a builder output as an LGS document")
    b.add_argument("family", choices=sorted(DEFAULT_DEPTHS))
    b.add_argument("--N", type=int)
    b.add_argument("--matrix", help="bracketed literal such as [[1,1],[1,0]]")
    b.add_argument("--matrix-file")
    b.add_argument("--depth", type=int)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("validate", help="check the axioms of an LGS document")
    v.add_argument("input", help="path, or - for stdin")
    v.set_defaults(func=cmd_validate)

    def common(sp):
        sp.add_argument("input", help="path, or - for stdin")
        sp.add_argument("--window", type=int, default=DEFAULT_WINDOW)
        sp.add_argument("--level", type=int)
        sp.add_argument("--horizon", type=int,
                        help="deepest level pair used for kernels (default: deepest available)")
        sp.add_argument("--format", choices=("text", "machine"), default="text")

    e = sub.add_parser("ext", help="Ext towers and kernel truncations")
    common(e)
    e.add_argument("--which", choices=INVARIANTS + ("all",), default="all")
    e.set_defaults(func=cmd_ext)

    s = sub.add_parser("sixterm", help="check the six-term sequence at one level")
    common(s)
    s.set_defaults(func=cmd_sixterm)

    c = sub.add_parser("ck", help="closed forms for Cuntz-Krieger matrices")
    c.add_argument("op", choices=("weak", "strong", "sixterm", "compare"))
    c.add_argument("matrices", nargs="+", help="literal or file path")
    c.add_argument("--format", choices=("text", "machine"), default="text")
    c.set_defaults(func=cmd_ck)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"lgsext: {exc}", file=sys.stderr)
        return exc.code
    except InsufficientDepthError as exc:
        print(f"lgsext: insufficient depth: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except InvalidSystemError as exc:
        print(f"lgsext: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (ConsistencyError, WellDefinednessError) as exc:
        print(f"lgsext: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (builders.BuilderError, ValueError) as exc:
        print(f"lgsext: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
