"""Command-line interface: ``thuecm <solve|bounds|certify|oracle> FILE``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from math import ceil

from . import __version__
from .balls import _mpf_frac
from .bounds import BoundReport, certified_str, full_report, verify_solution_bounds
from .enumeration import roots_of_unity
from .fields import FieldError
from .heights import coordinate_bound_from_height
from .instances import InvariantError, SchemaError, parse_instance
from .lattice import BudgetExceeded
from .solver import CertificationError, SolutionSet, ThueInstance, brute_force, certify_instance, solve_thue

EXIT_OK = 0
EXIT_INCOMPLETE = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_CERTIFICATION = 4
EXIT_CHECK_MISMATCH = 5

# (2B+1)^d grid points per coordinate; the oracle loops over pairs of them
MAX_CHECK_GRID = 4000


def decimal_up(q: Fraction, digits: int = 12) -> str:
    """Decimal string >= q with ``digits`` places after the point."""
    scale = 10 ** digits
    n = ceil(q * scale)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


def _bounds_dict(rep: BoundReport, digits: int) -> dict:
    out = rep.as_dict()
    out["omega1"] = certified_str(rep.omega1, digits)
    out["omega2"] = certified_str(rep.omega2, digits)
    out["omega1_upper"] = decimal_up(_mpf_frac(rep.omega1.value.b))
    out["omega2_upper"] = decimal_up(_mpf_frac(rep.omega2.value.b))
    return out


def _solutions_list(sols: SolutionSet) -> list[dict]:
    return [{"x": [str(c) for c in x], "y": [str(c) for c in y]}
            for x, y in sols.coordinate_pairs()]


def default_check_box(inst: ThueInstance, rep: BoundReport) -> int:
    omega = max(_mpf_frac(rep.omega1.value.b), _mpf_frac(rep.omega2.value.b))
    box = min(int(coordinate_bound_from_height(inst.K, omega)), 30)
    while box > 0 and (2 * box + 1) ** inst.K.degree > MAX_CHECK_GRID:
        box -= 1
    return box


def compare_with_oracle(solved: SolutionSet, oracle: SolutionSet, box: int) -> dict:
    """Both inclusions, restricted to the box."""
    found = set(solved.coordinate_pairs())
    brute = set(oracle.coordinate_pairs())
    inside = {p for p in found if all(abs(c) <= box for v in p for c in v)}
    return {
        "box": box,
        "missing_from_solver": sorted(brute - found),
        "missing_from_oracle": sorted(inside - brute),
        "agree": brute <= found and inside <= brute,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thuecm",
                                description="Solve Thue equations F(x, y) = b over a totally real "
                                            "field when F(X, 1) has a root generating a CM field.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("mode", choices=["solve", "bounds", "certify", "oracle"])
    p.add_argument("file", help="instance JSON file, or a bundled name such as example3.json")
    p.add_argument("--box", type=int, default=None,
                   help="coordinate box for the brute-force oracle (oracle mode, --check)")
    p.add_argument("--check", action="store_true",
                   help="after solving, compare against the brute-force oracle")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the divisor strata")
    p.add_argument("--precision", type=int, default=None, metavar="BITS",
                   help="starting working precision (overrides the instance option)")
    p.add_argument("--strict-paper-mode", action="store_true",
                   help="scan divisors of |N_L(b)|^2 instead of |N_L(b)|")
    p.add_argument("--json", default=None, metavar="OUT", help="write the report as JSON ('-' for stdout)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(args: argparse.Namespace) -> tuple[dict, int]:
    t0 = time.perf_counter()
    inst = parse_instance(args.file)
    if args.precision is not None:
        if args.precision < 16:
            raise SchemaError("--precision must be at least 16 bits")
        inst.precision_bits = args.precision
    if args.strict_paper_mode:
        inst.strict_paper_mode = True
    digits = max(10, inst.precision_bits * 3 // 10)
    report: dict = {"mode": args.mode, "instance": inst.name}
    code = EXIT_OK

    rel = certify_instance(inst)
    report["L_min_poly"] = [str(c) for c in rel.L.min_poly.coeffs]
    if args.mode == "certify":
        report["certified"] = True
        report["relative_degree"] = rel.relative_degree
    elif args.mode == "oracle":
        box = 3 if args.box is None else args.box
        sols = brute_force(inst, box)
        report["box"] = box
        report["solutions"] = _solutions_list(sols)
        report["complete"] = False
    else:
        unit = abs(inst.b.norm()) == 1
        w = len(roots_of_unity(rel.L, inst.budget)) if unit else None
        rep = full_report(inst.F, inst.b, rel.L, w)
        report["bounds"] = _bounds_dict(rep, digits)
        if args.mode == "solve":
            sols = solve_thue(inst, jobs=args.jobs)
            report["solutions"] = _solutions_list(sols)
            report["complete"] = sols.complete
            report["certificate"] = sols.certificate
            report["bounds_hold"] = (verify_solution_bounds(sols.solutions, rep)
                                     and len(sols) <= rep.count_bound)
            if not sols.complete:
                code = EXIT_INCOMPLETE
            if args.check:
                box = default_check_box(inst, rep) if args.box is None else args.box
                cmp = compare_with_oracle(sols, brute_force(inst, box), box)
                report["check"] = {k: (v if k in ("box", "agree") else [list(map(list, p)) for p in v])
                                   for k, v in cmp.items()}
                if not cmp["agree"]:
                    code = EXIT_CHECK_MISMATCH
    report["wall_time_s"] = round(time.perf_counter() - t0, 3)
    return report, code


def _summary(report: dict) -> str:
    lines = [f"mode: {report['mode']}  instance: {report.get('instance') or '-'}"]
    lines.append("L = Q[t]/(" + ", ".join(report["L_min_poly"]) + ")  (coefficients low to high)")
    if "bounds" in report:
        b = report["bounds"]
        lines.append(f"case: {b['case']}")
        lines.append(f"Omega1 = {b['omega1_exact'] or b['omega1']}  (upper {b['omega1_upper']})")
        lines.append(f"Omega2 = {b['omega2_exact'] or b['omega2']}  (upper {b['omega2_upper']})")
        lines.append(f"count bound: {b['count_bound']}" + (f"  (w = {b['w']})" if b["w"] else ""))
    if "solutions" in report:
        lines.append(f"solutions ({len(report['solutions'])}):")
        for s in report["solutions"]:
            lines.append(f"  x = ({', '.join(s['x'])})  y = ({', '.join(s['y'])})")
        lines.append(f"complete: {str(report['complete']).lower()}")
    if "check" in report:
        c = report["check"]
        lines.append(f"oracle check (box {c['box']}): {'agree' if c['agree'] else 'MISMATCH'}")
    if report.get("certified"):
        lines.append("instance certified")
    lines.append(f"wall time: {report['wall_time_s']} s")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        report, code = run(args)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"thuecm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"thuecm: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except (InvariantError, FieldError) as exc:
        print(f"thuecm: invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except BudgetExceeded as exc:
        print(f"thuecm: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    print(_summary(report))
    if args.json:
        text = json.dumps(report, indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
