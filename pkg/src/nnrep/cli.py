"""Command-line entry point: ``nnrep build | verify | table | demo``.

Exit codes: 0 success / verification passed, 1 verification failed,
2 usage, schema or construction error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .boolean import DecisionList, build_family, FAMILIES
from .errors import NNRepError
from .numerics import format_rational
from .representations import (
    AnchorSet,
    construct,
    construct_edl,
    construct_equality_system,
    construct_ldl,
    construct_polytope,
    polytope_circuit,
    type_rule_for,
)
from .serialization import (
    circuit_to_dict,
    dumps,
    load_anchors,
    load_circuit,
    report_to_dict,
    write_anchors,
)
from .verification import DEFAULT_MAX_BITS, size_and_resolution, verify_exhaustive

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FILE_FAMILIES = ("ldl-file", "edl-file", "polytope-file")

CLOSED_FORMS = {
    "and-eq": lambda m, n: 2 * m + 1,
    "or-eq": lambda m, n: (m + 2) * 2 ** (m - 1),
    "parity-eq": lambda m, n: 3**m,
    "parity-comp": lambda m, n: 2**m,
    "ip2": lambda m, n: 2**n,
    "omb-eq": lambda m, n: (m + 1) * 2**m,
}


class UsageError(Exception):
    pass


def represent_family(family: str, m: int, n: int):
    """(circuit, anchor set) for a named family; AND∘EQ uses the equality-system route."""
    circuit = build_family(family, m, n)
    if family == "and-eq":
        A = [g.weights for g in circuit.gates]
        b = [int(g.bias) for g in circuit.gates]
        return circuit, construct_equality_system(A, b)
    return circuit, construct(circuit)


def _load_polytope(path):
    doc = json.loads(Path(path).read_text())
    try:
        A, b = doc["A"], doc["b"]
    except (KeyError, TypeError):
        raise UsageError(f"{path}: polytope file needs 'A' and 'b'") from None
    return A, b, bool(doc.get("equality", False))


def represent_file(family: str, path):
    if path is None:
        raise UsageError(f"--family {family} needs --circuit PATH")
    if family == "polytope-file":
        A, b, equality = _load_polytope(path)
        anchors = construct_equality_system(A, b) if equality else construct_polytope(A, b)
        return polytope_circuit(A, b, equality), anchors
    circuit = load_circuit(path)
    if not isinstance(circuit, DecisionList):
        raise UsageError(f"{path}: expected a decision list circuit")
    if family == "ldl-file":
        if circuit.kind != "LDL":
            raise UsageError(f"{path}: ldl-file needs linear gates")
        return circuit, construct_ldl(circuit)
    if circuit.kind != "EDL":
        raise UsageError(f"{path}: edl-file needs exact gates")
    return circuit, construct_edl(circuit)


def cmd_build(args) -> int:
    if args.family in FILE_FAMILIES:
        circuit, anchors = represent_file(args.family, args.circuit)
    else:
        circuit, anchors = represent_family(args.family, args.m, args.n)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "circuit.json").write_text(dumps(circuit_to_dict(circuit)))
    anchor_path = out / f"anchors.{args.format}"
    write_anchors(anchors, anchor_path, args.format)
    size, res = size_and_resolution(anchors)
    print(f"family={args.family} construction={anchors.construction} size={size} resolution={res}")
    print(f"wrote {out / 'circuit.json'} and {anchor_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.circuit is None or args.anchors is None:
        raise UsageError("verify needs --circuit and --anchors")
    circuit = load_circuit(args.circuit)
    anchors = load_anchors(args.anchors)
    if anchors.n != circuit.n:
        raise UsageError(f"anchors have dimension {anchors.n}, circuit reads {circuit.n} inputs")
    report = verify_exhaustive(
        anchors, circuit, max_bits=args.max_bits, type_rule=type_rule_for(anchors, circuit)
    )
    text = dumps(report_to_dict(report))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    status = "PASS" if report.passed else "FAIL"
    print(
        f"{status}: {report.total_inputs} inputs, {len(report.failures)} failures, "
        f"{report.tie_violations} ties, min_margin={_fmt(report.min_margin)}",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_FAIL


def _fmt(q):
    return "none" if q is None else format_rational(q)


def table_rows(m_max: int, n_max: int):
    for family in FAMILIES:
        pairs = (
            [(n, n) for n in range(1, n_max + 1)]
            if family == "ip2"
            else [(m, n) for m in range(1, m_max + 1) for n in range(1, n_max + 1)]
        )
        for m, n in pairs:
            circuit, anchors = represent_family(family, m, n)
            report = verify_exhaustive(anchors, circuit, type_rule=type_rule_for(anchors, circuit))
            size, res = size_and_resolution(anchors)
            expected = CLOSED_FORMS[family](m, n)
            yield {
                "family": family,
                "m": m,
                "n": n,
                "size": size,
                "closed_form": expected,
                "match": size == expected,
                "resolution": res,
                "verified": report.passed,
                "min_margin": _fmt(report.min_margin),
            }


def cmd_table(args) -> int:
    if args.m > 4 or args.n > 3:
        raise UsageError("table ranges are limited to m <= 4, n <= 3")
    rows = list(table_rows(args.m, args.n))
    if args.format == "json":
        text = dumps(rows)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        header = f"{'family':<12} {'m':>2} {'n':>2} {'size':>5} {'formula':>7} {'ok':>3} {'RES':>4} {'verified':>8}"
        lines = [header, "-" * len(header)]
        for r in rows:
            lines.append(
                f"{r['family']:<12} {r['m']:>2} {r['n']:>2} {r['size']:>5} {r['closed_form']:>7} "
                f"{'yes' if r['match'] else 'NO':>3} {r['resolution']:>4} {'pass' if r['verified'] else 'FAIL':>8}"
            )
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    ok = all(r["match"] and r["verified"] for r in rows)
    return EXIT_OK if ok else EXIT_FAIL


# pentagon-shaped region over the 2-cube: keeps (0,0), (1,0), (0,1)
PENTAGON = ([[1, 1], [-1, 0], [0, -1], [1, -1], [-1, 1]], [1, 0, 0, 1, 1])


def demo_anchor_set(family: str, circuit_path=None) -> AnchorSet:
    if family == "and2":
        return construct_polytope([[-1, -1]], [-2])
    if family == "or2":
        # complement of NOR = 1{x1 + x2 <= 0}
        return construct_polytope([[1, 1]], [0]).complement()
    if family == "polytope-2d":
        A, b = PENTAGON
        if circuit_path is not None:
            A, b, _ = _load_polytope(circuit_path)
        return construct_polytope(A, b)
    raise UsageError(f"unknown demo family {family!r}")


def demo_rows(anchors: AnchorSet):
    """Anchors, cube vertices with their nearest-anchor labels, and bisector lines a.x = c."""
    from .verification import nearest_anchor

    pts = list(anchors.anchors)
    for i, (p, z) in enumerate(zip(pts, anchors.labels)):
        yield {"kind": "anchor", "id": i, "x1": p[0], "x2": p[1], "label": z}
    for v in range(4):
        X = ((v >> 1) & 1, v & 1)
        idx, _, _ = nearest_anchor(anchors, X)
        yield {"kind": "vertex", "id": v, "x1": X[0], "x2": X[1], "label": anchors.labels[idx]}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            p, q = pts[i], pts[j]
            a1, a2 = 2 * (q[0] - p[0]), 2 * (q[1] - p[1])
            c = q[0] ** 2 + q[1] ** 2 - p[0] ** 2 - p[1] ** 2
            yield {"kind": "bisector", "id": f"{i}-{j}", "a1": a1, "a2": a2, "c": c}


def cmd_demo(args) -> int:
    anchors = demo_anchor_set(args.family, args.circuit)
    if anchors.n != 2:
        raise UsageError("demo geometry is two-dimensional")
    fields = ["kind", "id", "x1", "x2", "label", "a1", "a2", "c"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in demo_rows(anchors):
        writer.writerow({k: format_rational(v) if isinstance(v, Fraction) else v for k, v in row.items()})
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nnrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an anchor set for a circuit family")
    p.add_argument("--family", required=True, choices=FAMILIES + FILE_FAMILIES)
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--n", type=_positive, default=1)
    p.add_argument("--circuit", help="input JSON for the *-file families")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check an anchor set against a circuit on every input")
    p.add_argument("--circuit")
    p.add_argument("--anchors")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--max-bits", type=_positive, default=DEFAULT_MAX_BITS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="reproduce the summary table with verification")
    p.add_argument("--m", type=_positive, default=3, help="largest m")
    p.add_argument("--n", type=_positive, default=2, help="largest n")
    p.add_argument("--out")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("demo", help="2-D anchor geometry as CSV for plotting")
    p.add_argument("--family", required=True, choices=("and2", "or2", "polytope-2d"))
    p.add_argument("--circuit", help="polytope JSON for polytope-2d")
    p.add_argument("--out")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, NNRepError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"nnrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
