"""Command-line front end: ``knottheta compute|render|verify|batch``.

Inputs name a knot in the bundled table (``3_1``, ``11n34``), a named
example (``unknot``, ``trefoil``, ``ks``), a torus knot (``torus:22,7``), a
braid closure (``braid:1,1,1@2``), or a file holding a diagram in JSON or a
PD code.

Exit codes: 0 ok, 1 usage, 2 bad input, 3 failed mathematical check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .algebra import NonExactDivision, to_json, to_text
from .diagram import (Diagram, MultiComponent, NonPlanar, PDFormatError, braid_closure,
                      from_pd, knots_up_to, load_table, named_diagram, parse_pd, torus_knot,
                      unknot, validate)
from .diagram.table import KnotRecord
from .invariant import (NonIntegerCoefficients, OddParity, PoleAtOneEvaluation, SingularMatrix,
                        g_rule_check, green, residue_oracle, telescoping_check, theta,
                        theta_numeric)
from . import checks, render

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_MATH = 0, 1, 2, 3


class InputError(Exception):
    """The input could not be turned into a valid diagram."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# inputs


def resolve(source: str) -> tuple[str, Diagram]:
    """Turn an input string into (display name, diagram)."""
    try:
        if source == "unknot":
            return source, unknot()
        if source.startswith("torus:"):
            p, q = (int(x) for x in source[6:].replace("/", ",").split(","))
            return f"T({p},{q})", torus_knot(p, q)
        if source.startswith("braid:"):
            word, _, strands = source[6:].partition("@")
            gens = [int(x) for x in word.split(",") if x.strip()]
            n = int(strands) if strands else max([abs(g) for g in gens] + [0]) + 1
            return source, braid_closure(gens, n)
        path = pathlib.Path(source)
        if path.is_file():
            return path.stem, _read_file(path)
        try:
            return source, named_diagram(source)
        except KeyError:
            raise InputError(f"unknown knot or file: {source}") from None
    except (PDFormatError, NonPlanar, MultiComponent, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None


def _read_file(path: pathlib.Path) -> Diagram:
    text = path.read_text()
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            d = Diagram.from_dict(json.loads(stripped))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise InputError(f"{path}: not a diagram: {exc}") from None
        errs = validate(d)
        if errs:
            raise InputError(f"{path}: invalid diagram: " + "; ".join(errs))
        return d
    return from_pd(parse_pd(stripped))


def _read_table(path: str | None) -> list[KnotRecord]:
    if path is None:
        return list(load_table())
    try:
        data = json.loads(pathlib.Path(path).read_text())
        return [KnotRecord(k["name"], k.get("crossings", len(k["pd"])),
                           tuple(tuple(x) for x in k["pd"]), k.get("genus"), k.get("fibered"))
                for k in data["knots"]]
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot read knot table: {exc}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> int:
    name, d = resolve(args.input)
    if args.numeric:
        t1, t2 = args.numeric
        delta, value = theta_numeric(d, t1, t2)
        if args.format == "json":
            out = {"name": name, "t1": str(t1), "t2": str(t2),
                   "delta": None if delta is None else str(delta), "theta": str(value)}
            print(json.dumps(out, sort_keys=True))
        else:
            print(f"{name} at T1={t1}, T2={t2}")
            print(f"Delta = {delta}")
            print(f"theta = {value}")
        return EXIT_OK
    r = theta(d, classical=not args.virtual, verify=args.verify)
    if args.format == "json":
        out = r.to_dict()
        out["name"] = name
        print(json.dumps(out, sort_keys=True))
    else:
        print(name)
        print("Delta = " + (to_text(r.delta) if r.delta is not None
                            else f"T^({-r.total_rotation - r.writhe}/2) * ({to_text(r.det)})"))
        print("theta = " + to_text(r.theta))
        print(f"writhe = {r.writhe}, rotation = {r.total_rotation}, {r.ms} ms")
    return EXIT_OK


def cmd_render(args) -> int:
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for source in args.inputs:
        name, d = resolve(source)
        r = theta(d, classical=not args.virtual)
        safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)
        delta = r.delta if r.delta is not None else r.det
        files = {
            f"{safe}.delta.svg": render.barcode(delta),
            f"{safe}.theta.svg": render.hexqr(r.theta),
            f"{safe}.card.svg": render.theta_card(r, name),
        }
        for fname, svg in files.items():
            (outdir / fname).write_text(svg)
            print(outdir / fname)
    return EXIT_OK


def _verify_grules(args) -> tuple[bool, list[str]]:
    lines, ok = [], True
    for source in args.inputs or ["3_1"]:
        name, d = resolve(source)
        bad = g_rule_check(d, green(d, verify=True))
        ok &= not bad
        lines.append(f"{name}: " + ("ok" if not bad else f"{len(bad)} violations: {bad[:3]}"))
    return ok, lines


def _verify_residue(args) -> tuple[bool, list[str]]:
    specs = args.inputs or [r.name for r in knots_up_to(args.max_crossings)]
    lines, ok = [], True
    for source in specs:
        name, d = resolve(source)
        g = green(d)
        zero = residue_oracle(d, g).is_zero()
        bad = telescoping_check(d, g)
        ok &= zero and not bad
        if not zero or bad or args.verbose:
            lines.append(f"{name}: residue {'0' if zero else 'NONZERO'}, "
                         f"telescoping {'ok' if not bad else bad[:2]}")
    lines.append(f"checked {len(specs)} diagrams")
    return ok, lines


def _verify_moves(args) -> tuple[bool, list[str]]:
    rep = checks.move_fuzz(args.seed, args.count)
    rel = checks.relative_invariance_fuzz(args.seed, max(1, args.count // 5))
    lines = [f"moves: {rep.total} applied in {rep.chains} chains: "
             + ", ".join(f"{k} {v}" for k, v in sorted(rep.applied.items())),
             f"marked points: {rel.total} applied"]
    lines += rep.failures[:10] + rel.failures[:10]
    return rep.ok and rel.ok, lines


def _verify_conjectures(args) -> tuple[bool, list[str]]:
    if args.inputs:
        table = {r.name.replace("_", ""): r for r in load_table()}
        records = []
        for source in args.inputs:
            rec = table.get(source.replace("_", ""))
            if rec is None:
                raise InputError(f"conjecture checks need table knots; unknown: {source}")
            records.append(rec)
    else:
        records = knots_up_to(args.max_crossings)
    rep = checks.conjecture_report(records)
    lines = [f"checked {rep.checked} knots"]
    for key, names in rep.failures.items():
        if names:
            lines.append(f"warning: {key} fails on {', '.join(names)}")
    if rep.nonfibered_total:
        lines.append(f"fibered criterion fails on {rep.nonfibered_failing} of "
                     f"{rep.nonfibered_total} non-fibered knots")
    # conjectures are reported, never fatal
    return True, lines


SUITES = {
    "grules": _verify_grules,
    "residue": _verify_residue,
    "moves": _verify_moves,
    "conjectures": _verify_conjectures,
}


def cmd_verify(args) -> int:
    ok, lines = SUITES[args.suite](args)
    for line in lines:
        print(line)
    print(f"{args.suite}: {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_MATH


def _batch_one(rec: KnotRecord) -> dict:
    r = theta(rec.diagram())
    return {"name": rec.name, "delta": to_text(r.delta), "theta": to_text(r.theta),
            "delta_json": to_json(r.delta), "theta_json": to_json(r.theta)}


def separation_report(rows: list[dict]) -> dict:
    """Counts of distinct values and the groups of knots that collide."""
    def groups(key):
        by: dict = {}
        for row in rows:
            by.setdefault(key(row), []).append(row["name"])
        return sorted((names for names in by.values() if len(names) > 1), key=lambda g: g[0])

    n = len(rows)
    out = {"knots": n}
    for label, key in (("delta", lambda r: r["delta"]), ("theta", lambda r: r["theta"]),
                       ("Theta", lambda r: (r["delta"], r["theta"]))):
        distinct = len({key(r) for r in rows})
        out[label] = {"distinct": distinct, "deficit": n - distinct, "collisions": groups(key)}
    return out


def cmd_batch(args) -> int:
    records = [r for r in _read_table(args.table) if r.crossings <= args.max_crossings]
    if args.jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_batch_one, records, chunksize=4))
    else:
        rows = [_batch_one(r) for r in records]
    rows.sort(key=lambda r: r["name"])
    report = separation_report(rows)
    if args.format == "json":
        text = json.dumps({"knots": [{k: r[k] for k in ("name", "delta_json", "theta_json")}
                                     for r in rows], "report": report}, sort_keys=True)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "delta", "theta"])
        for r in rows:
            w.writerow([r["name"], r["delta"], r["theta"]])
        for label in ("delta", "theta", "Theta"):
            w.writerow([f"# {label}", f"distinct={report[label]['distinct']}",
                        f"deficit={report[label]['deficit']}"])
        text = buf.getvalue().rstrip("\n")
    else:
        lines = [f"{r['name']}: Delta = {r['delta']}; theta = {r['theta']}" for r in rows]
        for label in ("delta", "theta", "Theta"):
            rep = report[label]
            lines.append(f"{label}: {rep['distinct']} distinct values on {len(rows)} knots "
                         f"(deficit {rep['deficit']})")
        text = "\n".join(lines)
    if args.out:
        pathlib.Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument handling


def read_config(path: str) -> dict:
    """Parse a ``key = value`` file (comments with #, optional quotes)."""
    out = {}
    for n, raw in enumerate(pathlib.Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputError(f"{path}:{n}: expected key = value")
        key = key.strip().replace("-", "_")
        value = value.strip().strip('"').strip("'")
        if value.lower() in ("true", "false"):
            out[key] = value.lower() == "true"
        else:
            try:
                out[key] = int(value)
            except ValueError:
                out[key] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="file of key = value defaults")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", action="store_true", help="run the debug oracles too")

    p = _Parser(prog="knottheta", description="Compute and draw the knot invariant (Delta, theta).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="Delta and theta of one knot")
    c.add_argument("input")
    c.add_argument("--numeric", nargs=2, type=_fraction, metavar=("T1", "T2"),
                   help="evaluate exactly at rational T1, T2 instead")
    c.add_argument("--virtual", action="store_true",
                   help="allow half-integer coefficients (rotational virtual input)")
    c.set_defaults(func=cmd_compute)

    r = sub.add_parser("render", parents=[common], help="write bar code, QR code and card SVGs")
    r.add_argument("inputs", nargs="+")
    r.add_argument("--out", default=".")
    r.add_argument("--virtual", action="store_true")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("inputs", nargs="*")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--max-crossings", type=int, default=9)
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("batch", parents=[common], help="tabulate a knot table")
    b.add_argument("table", nargs="?", help="JSON table (default: the bundled one)")
    b.add_argument("--max-crossings", type=int, default=10)
    b.add_argument("--out")
    b.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pre, _ = parser.parse_known_args(argv)
        if getattr(pre, "config", None):
            config = read_config(pre.config)
            sub = parser._subparsers._group_actions[0].choices[pre.command]
            known = {a.dest for a in sub._actions}
            unknown = sorted(set(config) - known)
            if unknown:
                raise InputError(f"unknown config keys: {', '.join(unknown)}")
            sub.set_defaults(**config)
        args = parser.parse_args(argv)
        if args.jobs < 1:
            parser.error("--jobs must be at least 1")
        return args.func(args)
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (EXIT_USAGE)
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PoleAtOneEvaluation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularMatrix, NonExactDivision, NonIntegerCoefficients, OddParity,
            ArithmeticError) as exc:
        print(f"math check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
