"""Command-line calculators and sweeps.

Exit codes: 0 success, 2 usage or range error, 3 theorem mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .char_degrees import (
    BRUTEFORCE_LIMIT,
    GROUP_ORACLE_LIMIT,
    conjugacy_class_count,
    degree_set_bruteforce,
    degree_set_divisor_formula,
    main_theorem_prediction,
    no_degree_two_witness,
    orbit_list,
)
from .field_model import (
    GaloisConnectionViolation,
    GroupSpec,
    SpecError,
    admissible_orders,
    galois_connection_rows,
    validate_hypotheses,
    verify_galois_connection,
)
from .numtheory import INT_LIMIT, RangeError, is_prime, lucas_lehmer

SCHEMA_VERSION = "1"
ORBIT_LIST_LIMIT = 10**3

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


@dataclass
class Output:
    """Rendered result of one command."""

    payload: dict
    text: list[str]
    csv_header: list[str]
    csv_rows: list[list] = field(default_factory=list)
    code: int = EXIT_OK

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"version": SCHEMA_VERSION, **self.payload}, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.csv_header)
            w.writerows(self.csv_rows)
            return buf.getvalue().rstrip("\n")
        return "\n".join(self.text)


def _join(values) -> str:
    return ";".join(str(v) for v in values)


def _spec(q: int, e: int, d: int) -> GroupSpec:
    try:
        return GroupSpec(q, e, d)
    except SpecError as exc:
        raise UsageError(str(exc)) from None


# -- degrees -------------------------------------------------------------------


def cmd_degrees(q: int, e: int, order: int) -> Output:
    spec = _spec(q, e, order)
    hyp = validate_hypotheses(spec)
    formula = degree_set_divisor_formula(spec)
    brute = degree_set_bruteforce(spec) if spec.d <= BRUTEFORCE_LIMIT else None
    prediction = main_theorem_prediction(spec) if hyp.main_theorem_applies else None
    orbits = orbit_list(spec) if spec.d <= ORBIT_LIST_LIMIT else None

    routes_agree = brute is None or (
        brute.degrees == formula.degrees and brute.multiplicities == formula.multiplicities
    )
    match = None if prediction is None else prediction.degrees == formula.degrees
    code = EXIT_MISMATCH if (match is False or not routes_agree) else EXIT_OK

    text = [
        f"group: q={q} e={e} d={order} |G|={spec.group_order}",
        "hypotheses: "
        + " ".join(f"{k}={str(v).lower()}" for k, v in hyp.as_dict().items()),
        f"degrees: {list(formula.degrees)}",
        "multiplicities: "
        + " ".join(f"{n}:{k}" for n, k in sorted(formula.multiplicities.items())),
        f"orbit_count: {formula.orbit_count}",
    ]
    if brute is not None:
        text.append(f"bruteforce: {'agrees' if routes_agree else 'DISAGREES'}")
    if orbits is not None:
        text.append("orbits:")
        for o in orbits:
            text.append(
                f"  rep={o.representative} size={o.size} d_m={o.d_m} "
                f"members={list(o.members)}"
            )
    if prediction is None:
        text.append("prediction: not applicable (" + "; ".join(hyp.failed()) + ")")
    else:
        text.append(f"prediction: {list(prediction.degrees)} (divisors of e, degree two removed)")
        text.append(f"match: {str(match).lower()}")

    payload = {
        "command": "degrees",
        "q": q,
        "e": e,
        "d": order,
        "group_order": spec.group_order,
        "hypotheses": hyp.as_dict(),
        "degrees": list(formula.degrees),
        "multiplicities": {str(n): k for n, k in sorted(formula.multiplicities.items())},
        "orbit_count": formula.orbit_count,
        "bruteforce_agrees": None if brute is None else routes_agree,
        "orbits": None
        if orbits is None
        else [
            {
                "representative": o.representative,
                "size": o.size,
                "d_m": o.d_m,
                "members": list(o.members),
            }
            for o in orbits
        ],
        "prediction": None if prediction is None else list(prediction.degrees),
        "match": match,
    }
    rows = [[q, e, order, r.method, _join(r.degrees)] for r in (formula, brute, prediction) if r]
    return Output(payload, text, ["q", "e", "d", "method", "degrees"], rows, code)


# -- admissible / galois / mersenne / group-check --------------------------------


def cmd_admissible(q: int, e: int) -> Output:
    _check_range(q, e)
    if not is_prime(q):
        raise UsageError(f"q = {q} is not prime")
    orders = admissible_orders(q, e)
    text = [f"admissible orders for q={q} e={e}: {orders}"]
    payload = {"command": "admissible", "q": q, "e": e, "orders": orders}
    return Output(payload, text, ["q", "e", "d"], [[q, e, d] for d in orders])


def cmd_galois(q: int, e: int, order: int) -> Output:
    spec = _spec(q, e, order)
    hyp = validate_hypotheses(spec)
    rows = galois_connection_rows(spec)
    violation = None
    try:
        verify_galois_connection(spec, require=False)
    except GaloisConnectionViolation as exc:
        violation = exc
    text = [f"galois connection for q={q} e={e} d={order}", "n  |L&C|  hat_degree  equal  exception"]
    for r in rows:
        text.append(
            f"{r.n}  {r.intersection_order}  {r.hat_degree}  "
            f"{str(r.equality_holds).lower()}  {'L&C = F&C' if r.exception_case else '-'}"
        )
    if violation is not None:
        text.append(f"violation: n={violation.row.n}: {violation.reason}")
    code = EXIT_OK
    if violation is not None and hyp.main_theorem_applies:
        code = EXIT_MISMATCH
    elif violation is None:
        text.append("verified: no violations")
    payload = {
        "command": "galois",
        "q": q,
        "e": e,
        "d": order,
        "main_theorem_applies": hyp.main_theorem_applies,
        "rows": [r.as_dict() for r in rows],
        "violation": None
        if violation is None
        else {"n": violation.row.n, "reason": violation.reason},
    }
    header = ["q", "e", "d", "n", "intersection_order", "hat_degree", "equality_holds", "exception_case"]
    csv_rows = [
        [q, e, order, r.n, r.intersection_order, r.hat_degree, r.equality_holds, r.exception_case]
        for r in rows
    ]
    return Output(payload, text, header, csv_rows, code)


def cmd_mersenne(p_max: int) -> Output:
    if p_max < 2:
        raise UsageError("--p-max must be at least 2")
    if (1 << p_max) - 1 >= INT_LIMIT:
        raise UsageError(f"2^{p_max} - 1 exceeds the 127-bit range")
    rows = [(p, (1 << p) - 1, lucas_lehmer(p)) for p in range(2, p_max + 1)]
    text = [f"p={p} 2^p-1={m} {'prime' if ok else 'composite'}" for p, m, ok in rows]
    payload = {
        "command": "mersenne",
        "p_max": p_max,
        "rows": [{"p": p, "mersenne": m, "prime": ok} for p, m, ok in rows],
    }
    return Output(payload, text, ["p", "mersenne", "prime"], [list(r) for r in rows])


def _group_check_row(spec: GroupSpec) -> dict:
    report = degree_set_divisor_formula(spec)
    classes = conjugacy_class_count(spec)
    chars = report.character_count()
    order_sum = report.order_sum()
    return {
        "q": spec.q,
        "e": spec.e,
        "d": spec.d,
        "group_order": spec.group_order,
        "class_count": classes,
        "character_count": chars,
        "order_sum": order_sum,
        "ok": classes == chars and order_sum == spec.group_order,
    }


def cmd_group_check(q: int, e: int, order: int) -> Output:
    spec = _spec(q, e, order)
    if spec.group_order > GROUP_ORACLE_LIMIT:
        raise UsageError(f"|G| = {spec.group_order} exceeds the group-oracle bound {GROUP_ORACLE_LIMIT}")
    row = _group_check_row(spec)
    text = [
        f"group: q={q} e={e} d={order} |G|={row['group_order']}",
        f"conjugacy classes: {row['class_count']}",
        f"irreducible characters: {row['character_count']}",
        f"sum of squared degrees: {row['order_sum']}",
        f"consistent: {str(row['ok']).lower()}",
    ]
    header = list(row)
    return Output(
        {"command": "group-check", **row},
        text,
        header,
        [[row[k] for k in header]],
        EXIT_OK if row["ok"] else EXIT_MISMATCH,
    )


# -- verify --------------------------------------------------------------------


def _check_range(q: int, e: int) -> None:
    if q**e - 1 >= INT_LIMIT:
        raise UsageError(f"range overflow: q={q} e={e} gives q^e - 1 >= 2^127")


def verify_spec(q: int, e: int, d: int) -> dict:
    """Run every applicable check on one admissible spec."""
    spec = GroupSpec(q, e, d)
    checks: dict[str, bool] = {}
    failures: list[str] = []
    formula = degree_set_divisor_formula(spec)
    prediction = main_theorem_prediction(spec)
    checks["main_theorem"] = formula.degrees == prediction.degrees
    if spec.d <= BRUTEFORCE_LIMIT:
        brute = degree_set_bruteforce(spec)
        checks["bruteforce"] = (
            brute.degrees == formula.degrees and brute.multiplicities == formula.multiplicities
        )
        checks["no_degree_two"] = no_degree_two_witness(spec)
    try:
        verify_galois_connection(spec)
        checks["galois"] = True
    except GaloisConnectionViolation as exc:
        checks["galois"] = False
        failures.append(f"n={exc.row.n}: {exc.reason}")
    if spec.group_order <= GROUP_ORACLE_LIMIT:
        checks["group"] = _group_check_row(spec)["ok"]
    failures.extend(name for name, ok in checks.items() if not ok and name != "galois")
    return {
        "q": q,
        "e": e,
        "d": d,
        "status": "PASS" if all(checks.values()) else "FAIL",
        "degrees": list(formula.degrees),
        "prediction": list(prediction.degrees),
        "checks": checks,
        "failures": failures,
    }


def _verify_chunk(specs: list[tuple[int, int, int]]) -> list[dict]:
    return [verify_spec(*s) for s in specs]


def cmd_verify(q_list: list[int], e_max: int, parallel: int = 1) -> Output:
    if e_max < 2:
        raise UsageError("--e-max must be at least 2")
    for q in q_list:
        for e in range(2, e_max + 1, 2):
            _check_range(q, e)
        if not is_prime(q):
            raise UsageError(f"q = {q} is not prime")

    specs: list[tuple[int, int, int]] = []
    skipped: list[dict] = []
    for q in sorted(set(q_list)):
        for e in range(2, e_max + 1, 2):
            orders = admissible_orders(q, e)
            hyp = validate_hypotheses(GroupSpec(q, e, orders[0]))
            if not hyp.q_is_mersenne:
                skipped.append({"q": q, "e": e, "reason": "hypotheses not met; skipped"})
                continue
            specs.extend((q, e, d) for d in orders)

    if parallel > 1 and len(specs) > 1:
        chunks = [specs[i::parallel] for i in range(parallel)]
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = [r for part in pool.map(_verify_chunk, chunks) for r in part]
    else:
        results = _verify_chunk(specs)
    results.sort(key=lambda r: (r["q"], r["e"], r["d"]))

    all_pass = all(r["status"] == "PASS" for r in results)
    text = []
    merged = sorted(
        [(r["q"], r["e"], 0, r) for r in skipped] + [(r["q"], r["e"], r["d"], r) for r in results],
        key=lambda t: t[:3],
    )
    for q, e, d, r in merged:
        if "status" not in r:
            text.append(f"SKIP q={q} e={e}: {r['reason']} (q is not a Mersenne prime)")
            continue
        ran = ",".join(r["checks"])
        line = f"{r['status']} q={q} e={e} d={d} degrees={r['degrees']} checks={ran}"
        if r["failures"]:
            line += " failures=" + "; ".join(r["failures"])
        text.append(line)
    text.append(
        f"{len(results)} specs verified, {len(skipped)} skipped: "
        + ("all pass" if all_pass else "FAILURES")
    )
    payload = {
        "command": "verify",
        "q_list": sorted(set(q_list)),
        "e_max": e_max,
        "spec_count": len(results),
        "skipped_count": len(skipped),
        "results": results,
        "skipped": skipped,
        "all_pass": all_pass,
    }
    csv_rows = [[r["q"], r["e"], r["d"], "divisor_formula", _join(r["degrees"])] for r in results]
    csv_rows += [[r["q"], r["e"], r["d"], "main_theorem", _join(r["prediction"])] for r in results]
    csv_rows.sort(key=lambda row: (row[0], row[1], row[2], row[3]))
    return Output(
        payload,
        text,
        ["q", "e", "d", "method", "degrees"],
        csv_rows,
        EXIT_OK if all_pass else EXIT_MISMATCH,
    )


# -- argument parsing ------------------------------------------------------------


def _int_list(value: str) -> list[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chardeg",
        description="Character degrees of C x| Gal(E/F) over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, *, q=False, e=False, order=False):
        p = sub.add_parser(name, help=help)
        if q:
            p.add_argument("--q", type=_positive, required=True, help="prime order of F")
        if e:
            p.add_argument("--e", type=_positive, required=True, help="degree [E:F]")
        if order:
            p.add_argument("--order", type=_positive, required=True, help="order d of C")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        return p

    add("degrees", "degree set, multiplicities and prediction check", q=True, e=True, order=True)
    add("admissible", "orders d satisfying the subgroup hypotheses", q=True, e=True)
    add("galois", "subfield rows of the Galois connection", q=True, e=True, order=True)
    add("group-check", "class count vs character count", q=True, e=True, order=True)
    p = add("mersenne", "Lucas-Lehmer classification of 2^p - 1")
    p.add_argument("--p-max", type=_positive, required=True)
    p = add("verify", "sweep every admissible spec")
    p.add_argument("--q-list", type=_int_list, required=True, help="comma-separated primes")
    p.add_argument("--e-max", type=_positive, required=True)
    p.add_argument("--parallel", type=_positive, default=1, help="worker processes")
    return parser


def run(args: argparse.Namespace) -> Output:
    if args.command == "degrees":
        return cmd_degrees(args.q, args.e, args.order)
    if args.command == "admissible":
        return cmd_admissible(args.q, args.e)
    if args.command == "galois":
        return cmd_galois(args.q, args.e, args.order)
    if args.command == "group-check":
        return cmd_group_check(args.q, args.e, args.order)
    if args.command == "mersenne":
        return cmd_mersenne(args.p_max)
    return cmd_verify(args.q_list, args.e_max, args.parallel)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except (UsageError, RangeError, SpecError) as exc:
        print(f"chardeg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out.render(args.format))
    if out.code == EXIT_MISMATCH:
        print("chardeg: theorem mismatch", file=sys.stderr)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
