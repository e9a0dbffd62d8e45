"""``spinkron`` command line: ``sweep``, ``build`` and ``check``.

Exit codes: 0 success, 1 failed self-check or I/O error, 2 spec error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from spinkron import _accel
from spinkron.spectral import ConvergenceError, NotHermitianError
from spinkron.sweep import SpecError, SweepError, format_matrix, load_spec, run_sweep, write_csv

log = logging.getLogger("spinkron")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SPEC = 2
EXIT_NUMERIC = 3


def _cmd_sweep(args) -> int:
    spec = load_spec(args.spec)
    result = run_sweep(spec, workers=args.workers)
    out = args.output or spec.output
    levels_path, events_path = write_csv(result, out)
    log.info("%d field points x %d levels -> %s", len(result.field_values), result.n_levels, levels_path)
    log.info("%d events -> %s", len(result.events), events_path)
    return EXIT_OK


def _cmd_build(args) -> int:
    spec = load_spec(args.spec)
    print(format_matrix(spec.hamiltonian(args.at_field)))
    return EXIT_OK


def _cmd_check(args) -> int:
    from spinkron.selfcheck import run_checks

    failed = 0
    for name, passed, value, tol in run_checks(seed=args.seed):
        failed += not passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}  (value={value:.3g}, tol={tol:.3g})")
    print(f"backend: {_accel.backend_name()}; {failed} failed")
    return EXIT_FAILURE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinkron", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep the field and write level/event CSV files")
    p.add_argument("--spec", required=True, help="path to the JSON sweep document")
    p.add_argument("--output", help="override the document's output path")
    p.add_argument("--workers", type=int, default=1, help="threads for grid evaluation (default 1)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("build", help="print the Hamiltonian matrix at one field value")
    p.add_argument("--spec", required=True, help="path to the JSON sweep document")
    p.add_argument("--at-field", type=float, required=True, help="field intensity B")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("check", help="run the invariant self-test suite")
    p.add_argument("--seed", type=int, default=20240101)
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (SweepError, ConvergenceError, NotHermitianError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
