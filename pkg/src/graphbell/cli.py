"""Command-line entry point: ``graphbell <command> [options]``.

Exit codes: 0 success, 2 failed precondition, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from . import bell, dense, lhv
from .errors import GraphBellError, ResourceError
from .graph import FAMILIES, family, load_graph

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_RESOURCE = 3

TABLE1_FAMILIES = ("LC", "RC", "ST")
FIDELITY_TOL = 1e-8


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _number(v):
    if v is None:
        return None
    v = float(v)
    return int(v) if v.is_integer() else v


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        src = p.add_argument_group("graph source (exactly one)")
        src.add_argument("--graph", metavar="FILE", help="edge-list file")
        src.add_argument("--family", choices=FAMILIES, type=str.upper, help="named graph family")
        src.add_argument("--n", type=int, help="vertex count for --family")
        src.add_argument("--rows", type=int, help="GRID rows")
        src.add_argument("--cols", type=int, help="GRID columns")
    p.add_argument("--workers", type=int, default=None, help="enumeration threads (default: all cores)")
    p.add_argument("--format", choices=("json", "csv"), default=None)


def _construction(p: argparse.ArgumentParser) -> None:
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--theorem1", action="store_true", help="vertex-neighborhood operator B(i, I)")
    kind.add_argument("--ardehali", action="store_true", help="Ardehali-type variant of B(i, I)")
    kind.add_argument("--triangle", type=_int_list, metavar="A,B,C", help="fully connected three-vertex operator")
    kind.add_argument("--basic", action="store_true", help="automatic violation-2 inequality")
    kind.add_argument("--composite", action="store_true", help="greedy product of vertex-neighborhood blocks")
    kind.add_argument("--lc4", type=int, metavar="K", help="member K (1-8) of the four-qubit cluster set")
    p.add_argument("-i", type=int, dest="vertex", help="central vertex")
    p.add_argument("-I", type=_int_list, dest="subset", metavar="J,K,...", help="independent neighbors of i")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphbell", description="Bell inequalities for graph states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inequality", help="build an inequality and report its local and quantum maxima")
    _common(p)
    _construction(p)
    p.add_argument("--lemma1", action="store_true", help="pin Z variables to +1 during enumeration")
    p.add_argument("--dense", action="store_true", help="add state-vector and spectrum checks (n <= 10)")

    p = sub.add_parser("table1", help="certified violations of the composite inequalities for LC, RC, ST")
    _common(p, graph=False)
    p.add_argument("--max-n", type=int, default=12)

    p = sub.add_parser("verify-lc4", help="check the four-qubit cluster inequality set")
    _common(p, graph=False)

    p = sub.add_parser("facet", help="affine-rank facet test of a two-setting expression")
    _common(p)
    _construction(p)
    p.add_argument("--pattern", choices=("mermin", "ardehali", "chsh", "single"), help="abstract expression")
    p.add_argument("--parties", type=int, help="party count for --pattern")
    p.add_argument("--bound", type=int, help="bound to test (default: the expression's local maximum)")
    return parser


def _graph(args):
    sources = (args.graph is not None) + (args.family is not None)
    if sources != 1:
        raise GraphBellError("give exactly one graph source: --graph FILE or --family NAME")
    if args.graph is not None:
        if args.n is not None or args.rows is not None or args.cols is not None:
            raise GraphBellError("--n/--rows/--cols only apply to --family")
        try:
            return load_graph(args.graph)
        except OSError as e:
            raise GraphBellError(f"cannot read graph file: {e}") from None
    if args.family == "GRID":
        if args.rows is None or args.cols is None:
            raise GraphBellError("GRID needs --rows and --cols")
        return family("GRID", args.rows, args.cols)
    if args.n is None:
        raise GraphBellError(f"{args.family} needs --n")
    return family(args.family, args.n)


def _build(args, g) -> bell.BellInequality:
    needs_i = args.theorem1 or args.ardehali
    if needs_i and (args.vertex is None or not args.subset):
        raise GraphBellError("--theorem1/--ardehali need -i VERTEX and -I J,K,...")
    if not needs_i and (args.vertex is not None or args.subset is not None):
        raise GraphBellError("-i/-I only apply to --theorem1 and --ardehali")
    if args.theorem1:
        return bell.theorem1_operator(g, args.vertex, args.subset)
    if args.ardehali:
        return bell.ardehali_expression(g, args.vertex, args.subset)
    if args.triangle is not None:
        return bell.fc3_operator(g, args.triangle)
    if args.basic:
        return bell.basic_inequality(g)
    if args.composite:
        return bell.greedy_composite(g)
    if args.lc4 is not None:
        members = bell.lc4_set()
        if not 1 <= args.lc4 <= len(members):
            raise GraphBellError(f"--lc4 takes 1..{len(members)}")
        if (g.n, g.edges()) != (4, [(1, 2), (2, 3), (3, 4)]):
            raise GraphBellError("--lc4 needs the four-vertex path graph")
        return members[args.lc4 - 1]
    raise GraphBellError("choose a construction: --theorem1, --ardehali, --triangle, --basic, --composite or --lc4")


def _workers(args) -> int:
    if args.workers is None:
        return lhv.default_workers()
    if args.workers < 1:
        raise GraphBellError("--workers must be >= 1")
    return args.workers


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_inequality(args) -> dict:
    g = _graph(args)
    b = _build(args, g)
    report = lhv.violation_report(b, use_lemma1=args.lemma1, graph=g, workers=_workers(args))
    out = {"inequality": b.to_dict(), "bounds": report.to_dict()}
    if args.dense:
        sp = dense.spectrum(b.pauli_form)
        if b.pauli_form.is_integral():
            value = dense.exact_graph_expectation(g, b.pauli_form)
        else:
            value = round(dense.expectation(dense.graph_state_vector(g), b.pauli_form), 12)
        out["dense"] = {
            "expectation": _number(value),
            "max_eigenvalue": _number(round(sp.max_eigenvalue, 10)),
            "multiplicity": sp.multiplicity,
            "min_eigenvalue": _number(round(sp.min_eigenvalue, 10)),
        }
    return out


def _inequality_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "n", "classical_max", "quantum_value", "violation"])
    ineq, bounds = doc["inequality"], doc["bounds"]
    w.writerow([ineq["label"], ineq["n"], bounds["classical_max"], bounds["quantum_value"], bounds["violation"]])
    return buf.getvalue()


def table1_rows(max_n: int, workers: int | None = None) -> list[dict]:
    """Violations of the composite inequalities, each certified by exhaustive enumeration."""
    if not 3 <= max_n <= 12:
        raise GraphBellError(f"--max-n must lie in 3..12, got {max_n}")
    rows = []
    for name in TABLE1_FAMILIES:
        for n in range(3, max_n + 1):
            b = bell.family_composite(name, n)
            report = lhv.violation_report(b, workers=workers)
            if report.classical_max != b.classical_bound:
                raise GraphBellError(
                    f"{name}{n}: enumerated local maximum {report.classical_max} "
                    f"differs from the composed bound {b.classical_bound}"
                )
            rows.append({"family": name, "n": n, "violation": _number(report.violation)})
    return rows


def cmd_table1(args) -> list[dict]:
    return table1_rows(args.max_n, _workers(args))


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "violation"])
    for r in rows:
        w.writerow([r["family"], r["n"], r["violation"]])
    return buf.getvalue()


def verify_lc4(workers: int | None = None) -> dict:
    g = family("LC", 4)
    state = dense.graph_state_vector(g)
    members = bell.lc4_set()
    per = []
    ok = True
    for b in members:
        report = lhv.classical_max(b.pauli_form, workers=workers)
        value = dense.expectation(state, b.pauli_form)
        sp = dense.spectrum(b.pauli_form)
        good = report.classical_max == 2 and abs(value - 4) < 1e-10 and sp.multiplicity == 2
        ok &= good
        per.append({
            "label": b.label,
            "classical_bound": _number(report.classical_max),
            "quantum_value": _number(round(value, 10)),
            "max_eigenvalue": _number(round(sp.max_eigenvalue, 10)),
            "multiplicity": sp.multiplicity,
            "pass": good,
        })
    pairs = []
    for a, b in itertools.combinations(members, 2):
        sp = dense.spectrum(a.pauli_form + b.pauli_form)
        fid = None
        if sp.multiplicity == 1:
            fid = dense.top_state(sp).fidelity(state)
        good = sp.multiplicity == 1 and abs(sp.max_eigenvalue - 8) < 1e-8 and abs(fid - 1) < FIDELITY_TOL
        ok &= good
        pairs.append({
            "pair": [a.label, b.label],
            "max_eigenvalue": _number(round(sp.max_eigenvalue, 10)),
            "multiplicity": sp.multiplicity,
            "fidelity": _number(round(fid, 10)) if fid is not None else None,
            "pass": good,
        })
    four = members[0].pauli_form + members[1].pauli_form + members[2].pauli_form + members[3].pauli_form
    lo, is_psd = dense.psd_check(four, 16, state)
    ok &= is_psd
    total = dense.expectation(state, four)
    return {
        "inequalities": per,
        "pairwise": pairs,
        "psd": {"projector_scale": 16, "min_eigenvalue": _number(round(lo, 10)), "is_psd": is_psd},
        "fidelity_bound_at_cluster_state": _number(round(dense.fidelity_bound(total), 10)),
        "pass": bool(ok),
    }


def cmd_verify_lc4(args) -> dict:
    return verify_lc4(_workers(args))


def _pattern(args) -> tuple[bell.TwoSettingExpression, int | None]:
    P = args.parties
    if P is None:
        raise GraphBellError("--pattern needs --parties")
    if args.pattern == "mermin":
        return bell.mermin_pattern(P), bell.mermin_bound(P)
    if args.pattern == "ardehali":
        return bell.ardehali_pattern(P), bell.ardehali_bound(P)
    if args.pattern == "chsh":
        if P != 2:
            raise GraphBellError("chsh has exactly two parties")
        return bell.chsh_pattern(), 2
    return bell.single_term_pattern(P), 1


def cmd_facet(args) -> dict:
    if args.pattern is not None:
        if args.graph is not None or args.family is not None:
            raise GraphBellError("--pattern does not take a graph")
        expr, bound = _pattern(args)
        label = f"{args.pattern}{args.parties}"
    else:
        if args.parties is not None:
            raise GraphBellError("--parties only applies to --pattern")
        b = _build(args, _graph(args))
        expr, bound, label = b.expression, b.classical_bound, b.label
    if expr.parties > lhv.MAX_FACET_PARTIES:
        raise ResourceError(f"facet test limited to {lhv.MAX_FACET_PARTIES} parties, got {expr.parties}")
    if args.bound is not None:
        bound = args.bound
    res = lhv.facet_test(expr, bound)
    return {
        "label": label,
        "parties": expr.parties,
        "expression": str(expr),
        "bound": _number(bound),
        "saturating_count": res.saturating_count,
        "affine_rank": res.affine_rank,
        "full_dimension": (1 << expr.parties) - 1,
        "is_facet": res.is_facet,
    }


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def render(command: str, doc, fmt: str | None) -> str:
    if command == "table1":
        if fmt in (None, "csv"):
            return _rows_csv(doc)
        return json.dumps({"rows": doc}, indent=2) + "\n"
    if fmt == "csv":
        if command == "inequality":
            return _inequality_csv(doc)
        raise GraphBellError(f"{command} only produces JSON")
    return json.dumps(doc, indent=2) + "\n"


COMMANDS = {
    "inequality": cmd_inequality,
    "table1": cmd_table1,
    "verify-lc4": cmd_verify_lc4,
    "facet": cmd_facet,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
        text = render(args.command, doc, args.format)
    except ResourceError as e:
        print(f"graphbell: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except GraphBellError as e:
        print(f"graphbell: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(text)
    if args.command == "verify-lc4" and not doc["pass"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
