"""Command-line interface.

Exit codes: 0 success, 1 parse or usage error, 2 domain error, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import contextlib
import io as _io
import sys
from fractions import Fraction

from . import markov
from .distributions import CHAIN_CONCEPTS, response_distribution
from .errors import ConvergenceError, DomainError, GameConstructionError, ParseError
from .game import Game
from .io import parse_chain, parse_game
from .position import (
    constructive_strategy,
    export_trajectory,
    inflation_pd,
    iterated_pd,
    last_move_pd,
    simulate,
    tit_for_tat,
)
from .responses import (
    CONCEPTS,
    EQUILIBRIUM_CONCEPTS,
    RATIONALIZABLE_CONCEPTS,
    equilibria,
    rationalizable,
    response,
)

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def format_value(v) -> str:
    """``p/q`` for exact values, 17 significant digits otherwise."""
    if isinstance(v, (bool,)):
        return "1" if v else "0"
    if isinstance(v, (Fraction, int)):
        return str(Fraction(v))
    if hasattr(v, "dtype") and v.dtype == bool:
        return "1" if v else "0"
    return format(float(v), ".17g")


def profile_label(g: Game, s, players=None) -> str:
    players = range(g.player_count) if players is None else players
    return ",".join(g.move_sets[k][a] for k, a in zip(players, s))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", code="io") from None


def _load_game(path: str) -> Game:
    return parse_game(_read(path))


def _cmd_respond(args, out):
    g = _load_game(args.game)
    i = args.player
    if not 0 <= i < g.player_count:
        raise DomainError(f"player {i} out of range")
    others = [k for k in range(g.player_count) if k != i]
    if args.concept in CONCEPTS:
        rel = response(g, i, args.concept).relation
        cols, rows, values = rel.source, rel.target, rel.matrix
    else:
        mat = response_distribution(g, i, args.concept)
        cols, rows, values = mat.source, mat.target, mat.entries
    col_labels = [profile_label(g, opp, others) or "()" for opp in cols]
    row_labels = [g.move_sets[i][a] for a in rows]
    if args.format == "machine":
        for c, col in enumerate(col_labels):
            for r, row in enumerate(row_labels):
                out.write(f"entry {row} {col} {format_value(values[r, c])}\n")
    else:
        cells = [[format_value(values[r, c]) for c in range(len(cols))] for r in range(len(rows))]
        width = max(len(x) for x in col_labels + row_labels + [c for row in cells for c in row])
        out.write(" " * width + " | " + " ".join(c.rjust(width) for c in col_labels) + "\n")
        out.write("-" * (width + 3 + (width + 1) * len(cols)) + "\n")
        for row, cells_row in zip(row_labels, cells):
            out.write(row.rjust(width) + " | " + " ".join(c.rjust(width) for c in cells_row) + "\n")


def _write_profiles(g, profiles, out):
    if not profiles:
        out.write("EMPTY\n")
    for s in profiles:
        out.write(" ".join(g.profile_names(s)) + "\n")


def _cmd_equilibria(args, out):
    g = _load_game(args.game)
    _write_profiles(g, equilibria(g, args.concept), out)


def _cmd_rationalizable(args, out):
    g = _load_game(args.game)
    _write_profiles(g, rationalizable(g, args.concept), out)


def _cmd_stationary(args, out):
    g = _load_game(args.game)
    dist = markov.stationary_distribution(g, args.concept, args.tol, args.max_iter)
    for s, w in zip(dist.support, dist.weights):
        out.write(f"prob {profile_label(g, s)} {format_value(w)}\n")


def _cmd_uniform_fixpoint(args, out):
    family = parse_chain(_read(args.chain))
    fixed = markov.uniform_fixpoint(family, args.tol, args.max_iter)
    for i in range(family.m):
        for u in range(family.k):
            out.write(f"entry {u} {i} {format_value(fixed[u, i])}\n")
    out.write(f"residual {format_value(markov.fixpoint_residual(family, fixed))}\n")


BUILTINS = {"pd": last_move_pd, "iterated-pd": iterated_pd, "inflation-pd": inflation_pd}


def _parse_init(name, pg, text):
    g = pg.base
    if name == "inflation-pd":
        if text is None:
            return (Fraction(0), Fraction(0))
        parts = text.split(",")
        if len(parts) != 2:
            raise ParseError(f"--init for inflation-pd is x0,x1, got {text!r}", code="init")
        try:
            return tuple(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad position {text!r}", code="init") from None
    if text is None:
        return () if name == "iterated-pd" else (0, 0)
    parts = text.split(",")
    if len(parts) != g.player_count:
        raise ParseError(f"--init needs {g.player_count} moves, got {text!r}", code="init")
    try:
        s = tuple(g.move_sets[k].index(p) for k, p in enumerate(parts))
    except ValueError:
        raise ParseError(f"unknown move in --init {text!r}", code="init") from None
    return (s,) if name == "iterated-pd" else s


def _cmd_simulate(args, out):
    pg = BUILTINS[args.builtin]()
    init = _parse_init(args.builtin, pg, args.init)
    if args.strategy == "tit-for-tat":
        if pg.cumulative:
            raise DomainError("tit-for-tat needs a position that records moves")
        strategies = [tit_for_tat(0), tit_for_tat(1)]
    else:
        strategies = [constructive_strategy(pg, 0), constructive_strategy(pg, 1)]
    if args.rounds < 0:
        raise DomainError("--rounds must be non-negative")
    traj = simulate(pg, strategies, init, args.rounds, args.seed)
    out.write(export_trajectory(traj))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gamefix", description="Equilibria and rationality as fixed points.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("respond", help="print a response relation or distribution")
    p.add_argument("game")
    p.add_argument("--player", type=int, required=True)
    p.add_argument("--concept", required=True, choices=CONCEPTS + CHAIN_CONCEPTS)
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.set_defaults(func=_cmd_respond)

    p = sub.add_parser("equilibria", help="print equilibrium profiles")
    p.add_argument("game")
    p.add_argument("--concept", required=True, choices=tuple(EQUILIBRIUM_CONCEPTS))
    p.set_defaults(func=_cmd_equilibria)

    p = sub.add_parser("rationalizable", help="print the rationalizable profile set")
    p.add_argument("game")
    p.add_argument("--concept", required=True, choices=tuple(RATIONALIZABLE_CONCEPTS))
    p.set_defaults(func=_cmd_rationalizable)

    p = sub.add_parser("stationary", help="print the stationary distribution over profiles")
    p.add_argument("game")
    p.add_argument("--concept", required=True, choices=CHAIN_CONCEPTS)
    p.add_argument("--tol", type=float, default=markov.DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=markov.DEFAULT_MAX_ITER)
    p.set_defaults(func=_cmd_stationary)

    p = sub.add_parser("uniform-fixpoint", help="print H• for a chain file and its residual")
    p.add_argument("chain")
    p.add_argument("--tol", type=float, default=markov.DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=markov.DEFAULT_MAX_ITER)
    p.set_defaults(func=_cmd_uniform_fixpoint)

    p = sub.add_parser("simulate", help="play a built-in position game")
    p.add_argument("--builtin", required=True, choices=tuple(BUILTINS))
    p.add_argument("--strategy", required=True, choices=("tit-for-tat", "cd"))
    p.add_argument("--init")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)
    return parser


def run_cli(argv) -> tuple[int, str, str]:
    """Run the CLI on ``argv``; returns (exit code, stdout text, stderr text)."""
    out, err = _io.StringIO(), _io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out):  # --help prints to stdout and exits
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_PARSE, out.getvalue(), err.getvalue()
    except SystemExit as exc:
        return int(exc.code or 0), out.getvalue(), err.getvalue()
    try:
        args.func(args, out)
    except (ParseError, GameConstructionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE, out.getvalue(), err.getvalue()
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN, out.getvalue(), err.getvalue()
    except ConvergenceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONVERGENCE, out.getvalue(), err.getvalue()
    return EXIT_OK, out.getvalue(), err.getvalue()


def main(argv=None) -> int:
    code, stdout, stderr = run_cli(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
