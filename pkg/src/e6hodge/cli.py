"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cosets, glued, hodge
from .chartable import CLASS_NAMES, CharacterTable, table as char_table, verify_character_table
from .group import ConsistencyError, get_table

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class OutputDoc:
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"title": self.title, **self.meta, "rows": [dict(zip(self.columns, r)) for r in self.rows]}
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            for r in self.rows:
                w.writerow([_cell(x) for x in r])
            return buf.getvalue()
        lines = [f"## {self.title}", ""]
        for k, v in self.meta.items():
            lines.append(f"- {k}: {_cell(v)}")
        if self.meta:
            lines.append("")
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "|".join("---" for _ in self.columns) + "|")
        for r in self.rows:
            lines.append("| " + " | ".join(_cell(x) for x in r) + " |")
        return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_cell(y) for y in x) + ")"
    if isinstance(x, dict):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _report_doc(rep, extra_meta=None) -> OutputDoc:
    meta = {"ok": rep.ok}
    if rep.data:
        meta["data"] = rep.data
    if extra_meta:
        meta.update(extra_meta)
    return OutputDoc(rep.title, ["check", "ok", "detail"], [[n, ok, d] for n, ok, d in rep.checks], meta)


# -- commands -----------------------------------------------------------------------

def cmd_group_info(args) -> tuple[OutputDoc, int]:
    T = get_table(args.cache, rebuild=args.rebuild_cache)
    data = T.class_data()
    rows = [[c, data[c].size, data[c].centralizer_order] for c in CLASS_NAMES]
    doc = OutputDoc(
        "W(E6)",
        ["class", "size", "centralizer"],
        rows,
        {"order": len(T), "classes": len(data), "checksum": T.checksum()},
    )
    return doc, EXIT_OK


def _load_table(path: str) -> CharacterTable:
    try:
        raw = json.loads(Path(path).read_text())
        return CharacterTable.from_payload(raw.get("payload", raw))
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"cannot read character table {path}: {exc}") from None


def cmd_chartable(args) -> tuple[OutputDoc, int]:
    Tc = _load_table(args.table) if args.table else char_table()
    if not args.verify:
        return OutputDoc("character table of W(E6)", ["chi", *Tc.classes],
                         [[x, *Tc.values[i]] for i, x in enumerate(Tc.characters)]), EXIT_OK
    T = get_table(args.cache, rebuild=args.rebuild_cache)
    sizes = {c: ci.size for c, ci in T.class_data().items()}
    try:
        rep = verify_character_table(Tc, sizes, T.power_maps())
    except (KeyError, IndexError, ValueError) as exc:
        raise InputError(f"malformed character table: {exc}") from None
    return _report_doc(rep), EXIT_OK if rep.ok else EXIT_CHECK


def cmd_cosets(args) -> tuple[OutputDoc, int]:
    T = get_table(args.cache, rebuild=args.rebuild_cache)
    G = cosets.build_subgroup(T, args.descriptor)
    p = cosets.profile(G)
    lam = hodge.lambda_subgroup(p)
    row = [json.loads(G.to_json()), G.order, p.d, list(p.as_tuple()), 12 * p.a2c - p.d + 1, lam.as_strings()]
    return OutputDoc("coset action", ["subgroup", "order", "d", "profile", "genus", "lambda"], [row]), EXIT_OK


def cmd_table1(args) -> tuple[OutputDoc, int]:
    T = get_table(args.cache, rebuild=args.rebuild_cache)
    rows = hodge.HodgeCalculator(T).solve_table1()
    out = [[r.character, r.rank, *r.lam.as_strings(), *r.avec] for r in rows]
    doc = OutputDoc("rk E_i, lambda_i and a-vectors", ["chi", "rank", "D0", "Dsyz", "Dazy", "a2c", "a2b", "a3b"], out)
    code = EXIT_OK
    if args.check:
        diff = hodge.diff_table1(rows)
        doc.meta["check"] = "pass" if not diff else "FAIL"
        if diff:
            doc.meta["diff"] = diff
            code = EXIT_CHECK
    return doc, code


def _load_spec(source: str) -> glued.GluingSpec:
    if source == "default":
        return glued.default_spec()
    try:
        items = json.loads(Path(source).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read roots file {source}: {exc}") from None
    if not isinstance(items, list):
        raise InputError("roots file must hold a JSON array")
    return glued.GluingSpec.from_json(items)


def cmd_glued(args) -> tuple[OutputDoc, int]:
    spec = _load_spec(args.spec)
    if args.action == "build":
        cover = glued.build(spec)
        full = glued.monodromy_full(spec)
        counts = [cover.node_count(i) for i in range(glued.N_SHEETS)]
        doc = OutputDoc(
            "glued curve",
            ["nodes", "sheets", "connected", "p_a", "monodromy_full", "nodes_per_sheet"],
            [[len(cover.nodes), glued.N_SHEETS, cover.connected, cover.genus, full, counts]],
        )
        return doc, EXIT_OK
    if not glued.monodromy_full(spec):
        raise InputError("the reflections do not generate W(E6)")
    rep = glued.theorem_check(spec)
    return _report_doc(rep), EXIT_OK if rep.ok else EXIT_CHECK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "markdown"), default="markdown")
    common.add_argument("--cache", help="group-table cache file (default: $E6HODGE_CACHE_DIR or ~/.cache/e6hodge)")
    common.add_argument("--rebuild-cache", action="store_true", help="regenerate the group table")

    p = argparse.ArgumentParser(prog="e6hodge", description="Exact W(E6) character, coset and Hodge-class computations.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("group-info", parents=[common], help="order, classes, sizes, centralizers")
    s.set_defaults(func=cmd_group_info)

    s = sub.add_parser("chartable", parents=[common], help="print or verify the character table")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--table", help="verify this JSON table instead of the embedded one")
    s.set_defaults(func=cmd_chartable)

    s = sub.add_parser("cosets", parents=[common], help="profile, genus and lambda of a subgroup")
    s.add_argument("descriptor", help="g27 | g36 | g45 | full | cyclic:<class> | centralizer:<class> | JSON")
    s.set_defaults(func=cmd_cosets)

    s = sub.add_parser("table1", parents=[common], help="ranks, lambda classes and a-vectors of the 25 characters")
    s.add_argument("--check", action="store_true", help="diff against the embedded golden table")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("glued", parents=[common], help="the glued 27-sheet curve")
    s.add_argument("action", choices=("build", "verify"))
    s.add_argument("--spec", default="default", help="'default' or a roots JSON file")
    s.set_defaults(func=cmd_glued)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        doc, code = args.func(args)
    except (InputError, cosets.DescriptorError, glued.GluingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    sys.stdout.write(doc.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
