"""Command-line front end: choose a family, solve it, print the Stokes data.

Two output modes. The table is for reading; the JSON document (schema
"stokes-lab/1") is for machines: fixed key order, every arithmetic value an
exact string pair or a cyclotomic coefficient vector, no floats, no timing
key, so identical invocations produce identical bytes and a parse/re-dump
round-trip is byte-stable. Timing is printed in table mode only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .exact import Cyclotomic, pretty_cyclotomic
from .qde import QdeProblem, eigenvalues
from .solver import (InconsistentSystem, StokesData, StokesSystem, StuckSystem,
                     build_system, solve, verify)
from .symbolic import MAX_CHAR_POLY_DIM, DimensionLimitError

SCHEMA = "stokes-lab/1"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments; here 2 belongs to solver failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _weights_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stokeslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="family", required=True,
                                parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--verify", action="store_true",
                        help="re-check the solution and compare against the "
                             "closed forms where they exist")
    common.add_argument("--char-poly", action="store_true", dest="char_poly",
                        help="include the symbolic characteristic polynomial "
                             "and the target polynomial")
    common.add_argument("--max-dim", type=int, default=MAX_CHAR_POLY_DIM,
                        help="refuse problems above this dimension "
                             "(default %(default)s)")

    p = sub.add_parser("projective", parents=[common])
    p.add_argument("--n", type=int, required=True)

    w = sub.add_parser("weighted", parents=[common])
    w.add_argument("--weights", type=_weights_arg, required=True,
                   metavar="W0,W1,...")

    h = sub.add_parser("hypersurface", parents=[common])
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--m", type=int, required=True)
    return parser


def _make_problem(args) -> QdeProblem:
    if args.family == "projective":
        return QdeProblem.projective(args.n)
    if args.family == "weighted":
        return QdeProblem.weighted(args.weights)
    return QdeProblem.hypersurface(args.n, args.m)


def _frac_pair(value) -> list[str]:
    q = Fraction(value)
    return [str(q.numerator), str(q.denominator)]


def _cyc_json(value: Cyclotomic) -> dict:
    v = value.canonical()
    return {"order": v.order, "coeffs": [_frac_pair(c) for c in v.coeffs]}


def _value_entry(value: Cyclotomic) -> dict:
    return {"value": _cyc_json(value), "pretty": pretty_cyclotomic(value)}


def build_document(system: StokesSystem, data: StokesData,
                   report: dict | None, include_char_poly: bool) -> dict:
    problem = system.problem
    ev = eigenvalues(problem)
    N = problem.dimension

    doc: dict = {"schema": SCHEMA}
    doc["problem"] = {
        "family": problem.family,
        "n": problem.n if problem.family != "weighted" else None,
        "m": problem.m if problem.family == "hypersurface" else None,
        "weights": list(problem.weights) if problem.family == "weighted" else None,
        "dimension": N,
        "ramification": problem.ramification,
        "zero_multiplicity": problem.zero_multiplicity,
    }
    doc["eigenvalues"] = {
        "count": ev.ram,
        "zero_multiplicity": ev.zero_multiplicity,
        "scale_base": str(ev.scale_base),
        "scale_root": ev.scale_root,
    }
    doc["formal_monodromy"] = {
        "wrap": system.gamma.wrap,
        "matrix": [[_cyc_json(system.gamma.matrix.get(r, c).constant_value())
                    for c in range(N)] for r in range(N)],
    }
    doc["directions"] = [
        {"direction": _frac_pair(d.value),
         "pairs": [{"source": src, "target": dst} for src, dst in d.pairs]}
        for d in system.directions
    ]
    supports = []
    for dvalue, mat in system.factors:
        entries = []
        for (r, c) in sorted(mat.entries):
            if r == c:
                continue
            unknown = mat.entries[(r, c)].unknowns()[0]
            entries.append({"row": r, "col": c, "unknown": repr(unknown)})
        supports.append({"direction": _frac_pair(dvalue), "entries": entries})
    doc["supports"] = supports
    doc["window"] = [
        {"pair": [l, k], **_value_entry(v)}
        for (l, k), v in sorted(data.window.items())
    ]
    doc["stokes_table"] = [
        {"pair": [l, k], **_value_entry(v)}
        for (l, k), v in sorted(data.x.items())
    ]
    doc["yz"] = [{"j": j, **_value_entry(v)} for j, v in sorted(data.yz.items())]
    doc["gauge"] = [{"j": j, "value": _cyc_json(v)}
                    for j, v in sorted(data.gauge.items())]
    if include_char_poly:
        doc["char_poly"] = {
            "symbolic": [repr(c) for c in system.charpoly.coeffs],
            "sigma": system.sigma,
            "target": [str(c) for c in system.target],
        }
    if report is not None:
        closed = report["closed_form"]
        doc["verification"] = {
            "resubstitution": report["resubstitution"],
            "closed_form": None if closed is None else {
                "checked": closed["checked"],
                "mismatches": [
                    {"pair": list(mm["pair"]),
                     "solver": mm["solver"],
                     "formula": mm["formula"],
                     **({"note": mm["note"]} if "note" in mm else {})}
                    for mm in closed["mismatches"]
                ],
            },
            "integrality": report["integrality"],
            "ok": report["ok"],
        }
    return doc


def emit_json(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _poly_line(coeff_strings: list[str]) -> str:
    """Render ascending integer coefficient strings as a polynomial in λ."""
    parts = []
    for i in range(len(coeff_strings) - 1, -1, -1):
        c = int(coeff_strings[i])
        if c == 0:
            continue
        power = "" if i == 0 else ("λ" if i == 1 else f"λ^{i}")
        mag = str(abs(c)) if (abs(c) != 1 or i == 0) else ""
        term = mag + power
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts) if parts else "0"


def _pair_name(index) -> str:
    return "0" if index is None else f"q{index}"


def emit_table(doc: dict, elapsed: float) -> str:
    lines = []
    p = doc["problem"]
    if p["family"] == "projective":
        head = f"projective n={p['n']}"
    elif p["family"] == "weighted":
        head = "weighted (" + ",".join(str(w) for w in p["weights"]) + ")"
    else:
        head = f"hypersurface n={p['n']} m={p['m']}"
    lines.append(f"problem: {head}")
    lines.append(f"dimension: {p['dimension']} "
                 f"(ramified block {p['ramification']}, "
                 f"zero block {p['zero_multiplicity']})")
    ev = doc["eigenvalues"]
    lines.append(f"eigenvalue scale: {ev['scale_base']}^(1/{ev['scale_root']})")
    lines.append(f"formal monodromy wrap: {doc['formal_monodromy']['wrap']}")

    lines.append("singular directions in [0,1):")
    for d in doc["directions"]:
        num, den = d["direction"]
        value = num if den == "1" else f"{num}/{den}"
        pairs = ", ".join(f"{_pair_name(q['source'])} -> {_pair_name(q['target'])}"
                          for q in d["pairs"])
        lines.append(f"  d = {value}: {pairs}")

    lines.append("stokes values on the window:")
    for row in doc["window"]:
        l, k = row["pair"]
        lines.append(f"  x[{l},{k}] = {row['pretty']}")
    lines.append("stokes table, all pairs:")
    for row in doc["stokes_table"]:
        l, k = row["pair"]
        lines.append(f"  x[{l},{k}] = {row['pretty']}")
    if doc["yz"]:
        lines.append("yz products:")
        for row in doc["yz"]:
            lines.append(f"  y[{row['j']}]*z[{row['j']}] = {row['pretty']}")
        gauge = ", ".join(
            f"y[{row['j']}] = {pretty_cyclotomic(_cyc_from_json(row['value']))}"
            for row in doc["gauge"])
        lines.append(f"gauge: {gauge}")

    if "char_poly" in doc:
        cp = doc["char_poly"]
        lines.append("characteristic polynomial of γ·∏St:")
        for i in range(len(cp["symbolic"]) - 1, -1, -1):
            lines.append(f"  λ^{i}: {cp['symbolic'][i]}")
        lines.append(f"target: {_poly_line(cp['target'])} (sigma {cp['sigma']})")

    if "verification" in doc:
        ver = doc["verification"]
        lines.append("verify: " + ("PASS" if ver["ok"] else "FAIL"))
        lines.append(f"  resubstitution: {'ok' if ver['resubstitution'] else 'FAILED'}")
        closed = ver["closed_form"]
        if closed is not None:
            lines.append(f"  closed form: {closed['checked']} pairs checked, "
                         f"{len(closed['mismatches'])} mismatches")
            for mm in closed["mismatches"]:
                l, k = mm["pair"]
                note = f"  [{mm['note']}]" if "note" in mm else ""
                lines.append(f"    ({l},{k}): solver {mm['solver']}, "
                             f"closed form {mm['formula']}{note}")
        if ver["integrality"] is not None:
            lines.append(f"  integrality: {'ok' if ver['integrality'] else 'FAILED'}")
    lines.append(f"time: {elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _cyc_from_json(obj: dict) -> Cyclotomic:
    coeffs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
    return Cyclotomic(obj["order"], coeffs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        problem = _make_problem(args)
    except ValueError as exc:
        print(f"stokeslab: error: {exc}", file=sys.stderr)
        return 1
    if problem.dimension > args.max_dim:
        print(f"stokeslab: error: dimension {problem.dimension} exceeds "
              f"--max-dim {args.max_dim}", file=sys.stderr)
        return 1

    started = time.perf_counter()
    try:
        system = build_system(problem, max_dim=args.max_dim)
        data = solve(system)
    except (StuckSystem, InconsistentSystem) as exc:
        print(f"stokeslab: solver failure: {exc}", file=sys.stderr)
        for power, lhs, rhs in getattr(exc, "equations", []):
            print(f"  λ^{power}: {lhs!r} = {rhs}", file=sys.stderr)
        return 2
    except DimensionLimitError as exc:
        print(f"stokeslab: error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - started

    report = verify(system, data) if args.verify else None
    doc = build_document(system, data, report, args.char_poly)
    if args.format == "json":
        sys.stdout.write(emit_json(doc))
    else:
        sys.stdout.write(emit_table(doc, elapsed))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
