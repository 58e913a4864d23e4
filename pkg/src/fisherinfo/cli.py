"""Command-line interface.

Every command reads JSON documents, computes, and writes one JSON report
to stdout (the dpi command writes one JSON line per trial followed by a
summary).  Outputs are deterministic for fixed inputs and seed, except the
runtime_ms field.

Exit codes: 0 success, 2 parse/schema error, 3 dimension mismatch,
4 singular information computation, 5 data-processing violation found.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bayes as bayes_mod
from . import dpi as dpi_mod
from . import fisher as fisher_mod
from .bayes import bayes_risk, check_bcrb, parse_prior_spec
from .documents import (
    DocumentError,
    load_model_document,
    load_povm_document,
    povm_to_document,
    state_to_pairs,
)
from .errors import (
    DerivativeOffSupport,
    DimensionMismatch,
    SingularOutcome,
)
from .fisher import bayesian_information, classical_fisher, sld_solve
from .optimize import VALUE_SPREAD_TOL, ContextSpace, circumvention_report, maximize_fisher

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_SINGULAR = 4
EXIT_VIOLATION = 5


def _emit(report: dict, started: float) -> None:
    report["runtime_ms"] = (time.perf_counter() - started) * 1000.0
    print(json.dumps(report, indent=2))


def cmd_fisher(args) -> int:
    started = time.perf_counter()
    family, rho0 = load_model_document(args.model)
    povm = load_povm_document(args.povm)
    value = classical_fisher(family.build(rho0), povm, args.theta).value
    _emit({
        "command": "fisher",
        "inputs": {"model": args.model, "povm": args.povm, "theta": args.theta},
        "value": value,
        "seed": None,
        "tolerances": {"p_floor": fisher_mod.P_FLOOR, "d_floor": fisher_mod.D_FLOOR},
    }, started)
    return EXIT_OK


def cmd_qfi(args) -> int:
    started = time.perf_counter()
    family, rho0 = load_model_document(args.model)
    result = sld_solve(family.build(rho0), args.theta)
    _emit({
        "command": "qfi",
        "inputs": {"model": args.model, "theta": args.theta},
        "value": result.qfi,
        "support_rank": result.support_rank,
        "seed": None,
        "tolerances": {"eps_sld": fisher_mod.EPS_SLD, "delta_sld": fisher_mod.DELTA_SLD},
    }, started)
    return EXIT_OK


def cmd_bayes(args) -> int:
    started = time.perf_counter()
    family, rho0 = load_model_document(args.model)
    povm = load_povm_document(args.povm)
    prior = parse_prior_spec(args.prior, args.grid)
    model = family.build(rho0)
    report = check_bcrb(prior, model, povm)
    _emit({
        "command": "bayes",
        "inputs": {"model": args.model, "povm": args.povm,
                   "prior": args.prior, "grid": args.grid},
        "values": {
            "risk": report.risk,
            "bayesian_information": report.j,
            "bcrb_satisfied": report.satisfied,
            "bcrb_vacuous": report.vacuous,
        },
        "seed": None,
        "tolerances": {"weight_sum": bayes_mod.WEIGHT_SUM_ATOL,
                       "bcrb_slack": bayes_mod.BCRB_SLACK},
    }, started)
    return EXIT_OK


def cmd_optimize(args) -> int:
    started = time.perf_counter()
    family, rho0 = load_model_document(args.model)
    fixed_state = rho0 if args.fix_state else None
    fixed_povm = load_povm_document(args.fix_povm) if args.fix_povm else None
    label_bits = []
    if fixed_state is not None:
        label_bits.append("fixed state")
    if fixed_povm is not None:
        label_bits.append("fixed povm")
    space = ContextSpace(family.dim, state=fixed_state, povm=fixed_povm,
                         label=", ".join(label_bits) or "unrestricted")
    result = maximize_fisher(family, space, args.theta,
                             restarts=args.restarts, seed=args.seed)
    _emit({
        "command": "optimize",
        "inputs": {"model": args.model, "theta": args.theta,
                   "restarts": args.restarts, "seed": args.seed,
                   "fix_state": bool(args.fix_state),
                   "fix_povm": args.fix_povm},
        "value": result.best_value,
        "context": {
            "label": space.label,
            "state": state_to_pairs(result.best_state),
            "povm": povm_to_document(result.best_povm),
        },
        "seed": args.seed,
        "tolerances": {"value_spread": VALUE_SPREAD_TOL,
                       "p_floor": fisher_mod.P_FLOOR, "d_floor": fisher_mod.D_FLOOR},
    }, started)
    return EXIT_OK


def cmd_dpi(args) -> int:
    started = time.perf_counter()
    if args.mode == "classical":
        reports = dpi_mod.classical_dpi_suite(args.trials, args.seed)
    else:
        reports = dpi_mod.quantum_dpi_suite(args.trials, args.seed,
                                            dim=args.dim, kraus_count=args.kraus)
    violations = 0
    for report in reports:
        if report.violated:
            violations += 1
        print(json.dumps(report.to_dict()))
    summary = {
        "command": "dpi",
        "inputs": {"mode": args.mode, "trials": args.trials, "dim": args.dim,
                   "kraus": args.kraus, "seed": args.seed},
        "trials": args.trials,
        "violations": violations,
        "seed": args.seed,
        "tolerances": {"classical": dpi_mod.CLASSICAL_TOL, "quantum": dpi_mod.QUANTUM_TOL,
                       "sld": dpi_mod.SLD_TOL, "dual": dpi_mod.DUAL_TOL},
    }
    _emit(summary, started)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_paper_example(args) -> int:
    started = time.perf_counter()
    values = circumvention_report(args.theta)
    _emit({
        "command": "paper-example",
        "inputs": {"theta": args.theta},
        "values": values,
        "statements": {
            "base": "unrestricted context maximum; parameter-independent "
                    "post-processing can only stay at or below this",
            "multipass": "the processing itself depends on the parameter, so "
                         "the monotonicity statement does not apply",
            "restricted": "the restricted context never sees the parameter; "
                          "restriction, not processing, loses the information",
            "restricted_plus_rotation": "a fixed rotation lifts the restriction "
                                        "without raising the unrestricted maximum",
        },
        "seed": 0,
        "tolerances": {"p_floor": fisher_mod.P_FLOOR, "d_floor": fisher_mod.D_FLOOR,
                       "value_spread": VALUE_SPREAD_TOL},
    }, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fisherinfo",
        description="Fisher information of small quantum models, with "
                    "data-processing checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fisher", help="classical Fisher information of a model and POVM")
    p.add_argument("--model", required=True)
    p.add_argument("--povm", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(run=cmd_fisher)

    p = sub.add_parser("qfi", help="quantum Fisher information via the SLD")
    p.add_argument("--model", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(run=cmd_qfi)

    p = sub.add_parser("bayes", help="Bayes risk and the Bayesian bound")
    p.add_argument("--model", required=True)
    p.add_argument("--povm", required=True)
    p.add_argument("--prior", required=True,
                   help="uniform:a,b or gauss:mu,sigma,a,b")
    p.add_argument("--grid", type=int, default=bayes_mod.DEFAULT_GRID)
    p.set_defaults(run=cmd_bayes)

    p = sub.add_parser("optimize", help="maximize Fisher information over contexts")
    p.add_argument("--model", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fix-state", action="store_true",
                   help="freeze the state to the model document's initial state")
    p.add_argument("--fix-povm", default=None, metavar="FILE",
                   help="freeze the measurement to the POVM in FILE")
    p.set_defaults(run=cmd_optimize)

    p = sub.add_parser("dpi", help="randomized data-processing inequality suites")
    p.add_argument("--mode", choices=("classical", "quantum"), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--kraus", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_dpi)

    p = sub.add_parser("paper-example",
                       help="the built-in qubit scenario: base, multipass, "
                            "restricted, restricted plus rotation")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(run=cmd_paper_example)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except DocumentError as exc:
        print(f"error:{EXIT_PARSE}:{exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatch as exc:
        print(f"error:{EXIT_DIMENSION}:{exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (SingularOutcome, DerivativeOffSupport) as exc:
        print(f"error:{EXIT_SINGULAR}:{exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
