"""Command-line entry point: ``cohbound <subcommand> ...``.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import ensembles
from .coherence import PAIRING_MODES, bound_report, bounds_from_gram
from .errors import CohboundError
from .experiments import BOUND_NAMES, VALUE_MODELS, ExperimentConfig, run
from .linalg import parse_vector, read_matrix, write_matrix
from .recovery import omp_reconstruct
from .twobases import cross_profile, l0_bound_two_bases

ENSEMBLE_ALIASES = {
    "gaussian": "gaussian",
    "dft": "partial_dft",
    "partial_dft": "partial_dft",
    "partial-dft": "partial_dft",
    "dct": "partial_dct",
    "partial_dct": "partial_dct",
    "partial-dct": "partial_dct",
    "etf": "etf",
    "graph": "graph_gft",
    "graph_gft": "graph_gft",
    "graph-gft": "graph_gft",
}


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ensemble(text: str) -> str:
    try:
        return ENSEMBLE_ALIASES[text.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown ensemble {text!r}") from None


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False, allow_nan=False) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohbound", description="Coherence-index sparsity bounds and OMP checks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="sparsity bounds of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--gram", action="store_true", help="the file holds a Gram matrix")
    p.add_argument("--pairing", choices=PAIRING_MODES, default="paper")
    p.add_argument("--out")

    p = sub.add_parser("generate", help="write an ensemble matrix as CSV")
    _ensemble_args(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("recover", help="OMP reconstruction")
    p.add_argument("--matrix", required=True)
    p.add_argument("--measurements", required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")

    p = sub.add_parser("mc", help="Monte Carlo bound statistics or recovery checks")
    _ensemble_args(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--mode", choices=("bound-stats", "recovery"), required=True)
    k = p.add_mutually_exclusive_group()
    k.add_argument("--sparsity", type=int)
    k.add_argument("--k-from-bound", choices=BOUND_NAMES)
    p.add_argument("--value-model", choices=VALUE_MODELS, default="unit_random_phase")
    p.add_argument("--pairing", choices=PAIRING_MODES, default="paper")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--csv")

    p = sub.add_parser("twobases", help="l0 uniqueness bound for two orthonormal bases")
    p.add_argument("--basis-a", required=True)
    p.add_argument("--basis-b", required=True)
    p.add_argument("--out")
    return parser


def _ensemble_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ensemble", type=_ensemble, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--edge-list")
    p.add_argument("--missing", type=_int_list, default=())
    p.add_argument("--dft-rows", type=_int_list, help="explicit row indices for partial DFT/DCT")


def _spec(args) -> ensembles.EnsembleSpec:
    graph = None
    if args.ensemble == "graph_gft":
        if not args.edge_list:
            raise CohboundError("graph ensemble needs --edge-list")
        graph = ensembles.read_edge_list(args.edge_list, vertex_count=args.cols).with_missing(args.missing)
    return ensembles.EnsembleSpec(
        kind=args.ensemble,
        rows=args.rows,
        cols=args.cols,
        seed=args.seed,
        row_list=args.dft_rows,
        graph=graph,
    )


def _cmd_bounds(args) -> None:
    m = read_matrix(args.matrix)
    report = bounds_from_gram(m, pairing_mode=args.pairing) if args.gram else bound_report(m, args.pairing)
    payload = report.to_dict()
    payload["seed"] = None
    payload["config"] = {"matrix": args.matrix, "gram": args.gram}
    _emit(payload, args.out)


def _cmd_generate(args) -> None:
    write_matrix(args.out, ensembles.generate(_spec(args)))


def _cmd_recover(args) -> None:
    a = read_matrix(args.matrix)
    with open(args.measurements) as fh:
        y = parse_vector(fh.read())
    _emit(omp_reconstruct(a, y, args.sparsity, args.tol).to_dict(), args.out)


def _cmd_mc(args, parser) -> None:
    mode = "bound_stats" if args.mode == "bound-stats" else "recovery_check"
    if mode == "recovery_check" and args.sparsity is None and args.k_from_bound is None:
        parser.error("recovery mode needs --sparsity or --k-from-bound")
    config = ExperimentConfig(
        ensemble=_spec(args),
        trials=args.trials,
        master_seed=args.seed,
        mode=mode,
        sparsity=args.sparsity if mode == "recovery_check" else None,
        k_from_bound=args.k_from_bound if mode == "recovery_check" else None,
        value_model=args.value_model,
        pairing_mode=args.pairing,
    )
    summary = run(config, threads=max(args.threads, 1))
    _emit(summary.to_dict(), args.out)
    if args.csv:
        summary.write_csv(args.csv)


def _cmd_twobases(args) -> None:
    bound = l0_bound_two_bases(cross_profile(read_matrix(args.basis_a), read_matrix(args.basis_b)))
    _emit(bound.to_dict(), args.out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        if args.command == "bounds":
            _cmd_bounds(args)
        elif args.command == "generate":
            _cmd_generate(args)
        elif args.command == "recover":
            _cmd_recover(args)
        elif args.command == "mc":
            _cmd_mc(args, parser)
        elif args.command == "twobases":
            _cmd_twobases(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (CohboundError, ValueError, OSError, RuntimeError) as exc:
        print(f"cohbound: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
