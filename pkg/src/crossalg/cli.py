"""Command-line front end: ``crossalg run <file|demo>`` and ``crossalg list``.

Exit codes: 0 success, 2 invalid input (schema, values, window overflow),
3 when two independent routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ClosureExceedsWindow, CrossAlgError, InternalInvariantViolation
from .report import render_text, run
from .scenarios import demo_names, load, load_demo

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INVARIANT = 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog='crossalg',
                                description='Exact commutant, center and maximality analyses '
                                            'for crossed products A x| Z.')
    p.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = p.add_subparsers(dest='command', required=True)

    r = sub.add_parser('run', help='run a scenario file or a bundled demo')
    r.add_argument('scenario', help='path to a JSON scenario, or a demo name')
    r.add_argument('--window', type=int, default=None,
                   help='degree window (rotations: also the Laurent window)')
    r.add_argument('--json', action='store_true', help='print the JSON report')
    r.add_argument('--oracle-only', action='store_true',
                   help='skip the closed forms and use the brute-force solvers only')
    r.add_argument('--seed', type=int, default=0, help='seed for randomized sampling')
    r.add_argument('-o', '--output', default=None, help='write the report here instead of stdout')

    ls = sub.add_parser('list', help='list bundled demos')
    ls.add_argument('--json', action='store_true')

    sh = sub.add_parser('show', help='print the JSON of a bundled demo')
    sh.add_argument('name')
    return p


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    try:
        sc = load(args.scenario)
        if args.window is not None and args.window < 1:
            raise CrossAlgError('--window must be positive')
        report = run(sc, args.window, args.oracle_only, args.seed)
    except InternalInvariantViolation as exc:
        dump = {'error': 'InternalInvariantViolation', 'message': str(exc),
                'counterexample': exc.counterexample}
        sys.stderr.write(json.dumps(dump, indent=2, sort_keys=True) + '\n')
        return EXIT_INVARIANT
    except ClosureExceedsWindow as exc:
        sys.stderr.write(f'error: window overflow: {exc}\n')
        return EXIT_INVALID
    except CrossAlgError as exc:
        sys.stderr.write(f'error: {type(exc).__name__}: {exc}\n')
        return EXIT_INVALID
    text = json.dumps(report, indent=2) + '\n' if args.json else render_text(report)
    _emit(text, args.output or sc.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == 'list':
        names = demo_names()
        if args.json:
            print(json.dumps(names))
        else:
            for name in names:
                print(f'{name:14s} {load_demo(name).get("description", "")}')
        return EXIT_OK
    if args.command == 'show':
        try:
            print(json.dumps(load_demo(args.name), indent=2))
        except CrossAlgError as exc:
            sys.stderr.write(f'error: {exc}\n')
            return EXIT_INVALID
        return EXIT_OK
    return cmd_run(args)


if __name__ == '__main__':
    sys.exit(main())
