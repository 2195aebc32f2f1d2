"""Command-line runner: execute mechanisms, audit axioms, compare outcomes.

Exit codes: 0 success / all audited axioms pass; 1 an audited axiom failed;
2 usage error; 3 scenario or report validation error; 4 a payment formula hit
an unbounded critical bid; 5 the deviation space exceeded the budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import AUDITS, AuditVerdict, DeviationSpace, SpaceTooLargeError
from .market import ReportProfile, ValidationError
from .mechanisms import MECHANISMS, Outcome, UnboundedPaymentError, get_mechanism
from .scenario_io import ParseError, parse_reports, parse_scenario
from .values import value_str

EXIT_OK = 0
EXIT_AUDIT_FAIL = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_UNBOUNDED = 4
EXIT_SPACE = 5


def _outcome_dict(out: Outcome) -> dict:
    data = {
        "mechanism": out.mechanism,
        "mode": out.mode,
        "winners": sorted(out.winners),
        "allocation": {a: out.allocation[a] for a in sorted(out.allocation)},
        "payments": {a: value_str(out.payments[a]) for a in sorted(out.payments)},
        "social_welfare": value_str(out.social_welfare),
        "revenue": value_str(out.revenue),
        "trace": [
            {
                "agent": row.agent,
                "left_units": row.units_left,
                "winners_before": list(row.winners_before),
                "allocated": int(row.allocated),
                "payment": value_str(row.payment),
            }
            for row in out.trace
        ],
    }
    if out.granted is not None:
        data["granted"] = {
            a: (list(b) if b else None) for a, b in sorted(out.granted.items())
        }
    return data


def _render_trace(out: Outcome) -> str:
    lines = [
        f"mechanism: {out.mechanism}",
        "",
        "Left Units | W | (f, p)",
        "-----------+---+-------",
    ]
    for row in out.trace:
        if row.units_left == 0:
            break
        w = "{" + ",".join(row.winners_before) + "}"
        lines.append(
            f"{row.units_left:>10} | {w} | f_{row.agent}={int(row.allocated)}, "
            f"p_{row.agent}={value_str(row.payment)}"
        )
    final_w = "{" + ",".join(out.winners) + "}"
    lines.append(f"{out.units_remaining:>10} | {final_w} | Finished")
    lines.append("")
    lines.append(f"winners: {final_w}")
    lines.append(
        "payments: "
        + ", ".join(f"{a}({value_str(out.payments[a])})" for a in sorted(out.payments))
    )
    lines.append(f"SW = {value_str(out.social_welfare)}   Rev = {value_str(out.revenue)}")
    return "\n".join(lines)


def _verdict_dict(v: AuditVerdict) -> dict:
    data: dict = {
        "axiom": v.axiom.value,
        "passed": v.passed,
        "coverage": v.coverage,
        "opponent_scope": v.opponent_scope,
    }
    if v.witness is not None:
        data["witness"] = {
            "agent": v.witness.agent,
            "detail": v.witness.detail,
        }
        if v.witness.deviation is not None:
            data["witness"]["deviation_bids"] = {
                a: value_str(b) for a, b in v.witness.deviation.bids
            }
            data["witness"]["deviation_invites"] = {
                a: list(inv) for a, inv in v.witness.deviation.invites
            }
    return data


def _load(args) -> tuple:
    scenario = parse_scenario(args.scenario)
    if getattr(args, "reports", None):
        reports = parse_reports(args.reports, scenario)
    else:
        reports = ReportProfile.truthful(scenario)
    return scenario, reports


def cmd_run(args) -> int:
    scenario, reports = _load(args)
    mech = get_mechanism(args.mechanism, rank_k=args.rank_k)
    out = mech.run(scenario, reports)
    if args.format == "json":
        print(json.dumps(_outcome_dict(out), indent=2, sort_keys=True))
    else:
        print(_render_trace(out))
    return EXIT_OK


def cmd_audit(args) -> int:
    scenario, reports = _load(args)
    mech = get_mechanism(args.mechanism, rank_k=args.rank_k)
    space = DeviationSpace.default()
    if args.budget is not None:
        space = DeviationSpace(budget=args.budget)
    axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
    unknown = [a for a in axioms if a not in AUDITS]
    if unknown:
        print(f"unknown axioms: {unknown}; choose from {sorted(AUDITS)}", file=sys.stderr)
        return EXIT_USAGE
    verdicts: list[AuditVerdict] = []
    for name in axioms:
        result = AUDITS[name](mech, scenario, space)
        verdicts.extend(result if isinstance(result, list) else [result])
    payload = [_verdict_dict(v) for v in verdicts]
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_AUDIT_FAIL


def cmd_compare(args) -> int:
    scenario, reports = _load(args)
    mech_ids = [m.strip() for m in args.mechanisms.split(",") if m.strip()]
    rows = []
    for mid in mech_ids:
        out = get_mechanism(mid, rank_k=args.rank_k).run(scenario, reports)
        rows.append(out)
    if args.format == "json":
        print(json.dumps([_outcome_dict(o) for o in rows], indent=2, sort_keys=True))
        return EXIT_OK
    header = f"{'mechanism':<16} | {'SW':>6} | {'Rev':>6} | winners | payments"
    print(header)
    print("-" * len(header))
    for out in rows:
        winners = "{" + ",".join(sorted(out.winners)) + "}"
        pays = ", ".join(f"{a}({value_str(out.payments[a])})" for a in sorted(out.payments))
        print(
            f"{out.mechanism:<16} | {value_str(out.social_welfare):>6} | "
            f"{value_str(out.revenue):>6} | {winners} | {pays}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netauction",
        description="Run and audit diffusion-auction mechanisms on scenario files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="scenario JSON path")
        p.add_argument("--reports", help="reports overlay JSON path (default: truthful)")
        p.add_argument(
            "--rank-k",
            type=int,
            default=None,
            help="rank gate for exploratory-2 (default: item count)",
        )

    p_run = sub.add_parser("run", help="execute one mechanism and print the outcome")
    common(p_run)
    p_run.add_argument("--mechanism", required=True, choices=sorted(MECHANISMS))
    p_run.add_argument("--format", choices=["table", "json"], default="table")
    p_run.set_defaults(func=cmd_run)

    p_audit = sub.add_parser("audit", help="audit axioms against a mechanism")
    common(p_audit)
    p_audit.add_argument("--mechanism", required=True, choices=sorted(MECHANISMS))
    p_audit.add_argument(
        "--axioms",
        required=True,
        help="comma list: " + ",".join(sorted(AUDITS)),
    )
    p_audit.add_argument("--budget", type=int, default=None, help="deviation budget")
    p_audit.set_defaults(func=cmd_audit)

    p_cmp = sub.add_parser("compare", help="run several mechanisms side by side")
    common(p_cmp)
    p_cmp.add_argument("--mechanisms", required=True, help="comma list of mechanism ids")
    p_cmp.add_argument("--format", choices=["table", "json"], default="table")
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except UnboundedPaymentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except SpaceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPACE


if __name__ == "__main__":
    sys.exit(main())
