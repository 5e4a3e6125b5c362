"""Command-line front end.

Commands: extend, verify, enumerate, equilibria, payoff, limits.
Exit codes: 0 success / verified, 1 verification failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .errors import EwlError
from .extensions import ClassId, ClassParams, extension_matrix, limit_check, strategy_set
from .invariance import (
    ExtendedGame,
    build_extended_game,
    verify_invariance_end_to_end,
)
from .nash import mixed_equilibria, verify_equilibrium
from .payoff import (
    Bimatrix2,
    PayoffPair,
    coefficients,
    format_scalar,
    payoff_closed_form,
    payoff_oracle,
)
from .solver import LatticeSpec, search_solutions
from .su2 import StrategyParams

ORACLE_TOL = 1e-10


class InputError(Exception):
    """User-facing configuration problem; maps to exit code 2."""


def _load_game(spec: str, mode: str) -> Bimatrix2:
    text = spec.strip()
    if not text.startswith("{"):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read game file {spec!r}: {exc}") from exc
    try:
        game = Bimatrix2.from_json(json.loads(text))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed game JSON: {exc}") from exc
    if mode == "exact" and not game.is_exact:
        raise InputError(
            "exact mode requires rational game entries; "
            "write payoffs as integers or 'p/q' strings, or pass --mode float"
        )
    return game


def _parse_strategy_list(text: str) -> List[StrategyParams]:
    try:
        data = json.loads(text)
        return [StrategyParams.from_json(item) for item in data]
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed strategy set: {exc}") from exc


def _class_params(args) -> ClassParams:
    return ClassParams.create(
        args.cls,
        theta1=args.theta1,
        alpha1=args.alpha1,
        beta1=args.beta1,
        alpha2=args.alpha2,
        beta2=args.beta2,
    )


def _resolve_strategies(args) -> List[StrategyParams]:
    if args.set:
        strategies = _parse_strategy_list(args.set)
        if not strategies:
            raise InputError("strategy set must be nonempty")
        return strategies
    if args.cls:
        return strategy_set(_class_params(args))
    raise InputError("provide --class (with parameters) or --set")


def _floatify_game(g: ExtendedGame) -> ExtendedGame:
    grid = tuple(
        tuple(PayoffPair(float(p.u1), float(p.u2)) for p in row) for row in g.payoffs
    )
    return ExtendedGame(g.labels, grid)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _oracle_check_extension(game: Bimatrix2, strategies, ext: ExtendedGame) -> None:
    for i, p in enumerate(strategies):
        for j, q in enumerate(strategies):
            ref = payoff_oracle(game, p, q)
            got = ext.payoffs[i][j]
            if (abs(float(got.u1) - ref.u1) > ORACLE_TOL
                    or abs(float(got.u2) - ref.u2) > ORACLE_TOL):
                raise InputError(
                    f"oracle mismatch at ({ext.labels[i]}, {ext.labels[j]}): "
                    f"closed form {float(got.u1)}, {float(got.u2)} vs "
                    f"statevector {ref.u1}, {ref.u2}"
                )


def _build_extension(args, game: Bimatrix2) -> ExtendedGame:
    if args.set:
        strategies = _parse_strategy_list(args.set)
        ext = build_extended_game(game, strategies, mode=args.mode)
    else:
        if not args.cls:
            raise InputError("provide --class (with parameters) or --set")
        params = _class_params(args)
        strategies = strategy_set(params)
        ext = extension_matrix(params, game)
        if args.mode == "float":
            ext = _floatify_game(ext)
    if args.oracle_check:
        _oracle_check_extension(game, strategies, ext)
    return ext


def _extension_csv(ext: ExtendedGame) -> str:
    lines = ["row,col,u1,u2"]
    for label_r, row in zip(ext.labels, ext.payoffs):
        for label_c, cell in zip(ext.labels, row):
            lines.append(
                f"{label_r},{label_c},{format_scalar(cell.u1)},{format_scalar(cell.u2)}"
            )
    return "\n".join(lines)


def cmd_extend(args) -> int:
    game = _load_game(args.game, args.mode)
    ext = _build_extension(args, game)
    if args.format == "pretty":
        _emit(args, ext.pretty())
    elif args.format == "csv":
        _emit(args, _extension_csv(ext))
    else:
        _emit(args, json.dumps(ext.to_json(), indent=2))
    return 0


def cmd_verify(args) -> int:
    game = _load_game(args.game, args.mode)
    strategies = _resolve_strategies(args)
    tol = 0.0 if args.mode == "exact" else 1e-9
    report = verify_invariance_end_to_end(game, strategies, mode=args.mode, tol=tol)
    _emit(args, json.dumps(report.to_json(), indent=2))
    return 0 if report.all_isomorphic else 1


def cmd_enumerate(args) -> int:
    spec = LatticeSpec.create(args.theta, args.step)
    mode = args.mode
    if mode == "exact" and spec.phase_step == Fraction(1, 8):
        mode = "float"
        print("note: pi/8 stress lattice runs in float mode", file=sys.stderr)
    result = search_solutions(spec, mode=mode)
    _emit(args, result.to_csv())
    counts = result.counts()
    summary = ", ".join(f"{k}={v}" for k, v in counts.items()) or "no solutions"
    print(f"tested {result.tested} tuples: {summary}", file=sys.stderr)
    return 0


def _load_any_game(spec: str) -> dict:
    text = spec.strip()
    if not text.startswith("{"):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read game file {spec!r}: {exc}") from exc
    try:
        return json.loads(text)
    except ValueError as exc:
        raise InputError(f"malformed game JSON: {exc}") from exc


def cmd_equilibria(args) -> int:
    raw = _load_any_game(args.game)
    pre_extended = "labels" in raw
    if args.extend_first:
        if pre_extended:
            raise InputError("--extend-first needs a classical 2x2 game")
        game = _load_game(json.dumps(raw), args.mode)
        ext = _build_extension(args, game)
    elif args.set or args.cls:
        raise InputError("--class/--set require --extend-first")
    elif pre_extended:
        try:
            ext = ExtendedGame.from_json(raw)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed extended game: {exc}") from exc
    else:
        game = _load_game(json.dumps(raw), args.mode)
        labels = ("s1", "s2")
        grid = tuple(tuple(game.delta[i][j] for j in range(2)) for i in range(2))
        ext = ExtendedGame(labels, grid)
    report = mixed_equilibria(ext, mode=args.mode)
    for eq in report.equilibria:
        if not verify_equilibrium(ext, eq):
            raise InputError(f"internal error: deviation check failed for {eq}")
    if report.degenerate:
        print("warning: degenerate game; equilibrium families sampled, "
              "not enumerated", file=sys.stderr)
    if args.format == "csv":
        lines = ["kind,u1,u2,p1,p2"]
        for eq in report.equilibria:
            p1 = ";".join(str(format_scalar(v)) for v in eq.profile.p1)
            p2 = ";".join(str(format_scalar(v)) for v in eq.profile.p2)
            lines.append(f"{eq.kind},{format_scalar(eq.payoff.u1)},"
                         f"{format_scalar(eq.payoff.u2)},{p1},{p2}")
        _emit(args, "\n".join(lines))
    elif args.format == "pretty":
        lines = []
        for eq in report.equilibria:
            p1 = ", ".join(f"{l}: {format_scalar(v)}"
                           for l, v in zip(ext.labels, eq.profile.p1)
                           if not _is_zero(v))
            p2 = ", ".join(f"{l}: {format_scalar(v)}"
                           for l, v in zip(ext.labels, eq.profile.p2)
                           if not _is_zero(v))
            lines.append(f"{eq.kind}: payoff ({format_scalar(eq.payoff.u1)}, "
                         f"{format_scalar(eq.payoff.u2)})  p1 = [{p1}]  p2 = [{p2}]")
        _emit(args, "\n".join(lines) if lines else "no equilibria found")
    else:
        _emit(args, json.dumps(report.to_json(labels=ext.labels), indent=2))
    return 0


def _is_zero(v) -> bool:
    return float(v) == 0.0


def cmd_payoff(args) -> int:
    game = _load_game(args.game, args.mode)
    try:
        p1 = StrategyParams.from_json(json.loads(args.p1)) if args.p1.strip().startswith(
            ("{", "[")) else _triple_from_text(args.p1)
        p2 = StrategyParams.from_json(json.loads(args.p2)) if args.p2.strip().startswith(
            ("{", "[")) else _triple_from_text(args.p2)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed strategy params: {exc}") from exc
    pay = payoff_closed_form(game, p1, p2, mode=args.mode)
    coeff = coefficients(p1, p2, mode=args.mode)
    if args.oracle_check:
        ref = payoff_oracle(game, p1, p2)
        if (abs(float(pay.u1) - ref.u1) > ORACLE_TOL
                or abs(float(pay.u2) - ref.u2) > ORACLE_TOL):
            raise InputError(
                f"oracle mismatch: closed form ({float(pay.u1)}, {float(pay.u2)}) "
                f"vs statevector ({ref.u1}, {ref.u2})"
            )
    _emit(args, json.dumps({
        "u1": format_scalar(pay.u1),
        "u2": format_scalar(pay.u2),
        "coefficients": [format_scalar(c) for c in coeff],
    }, indent=2))
    return 0


def _triple_from_text(text: str) -> StrategyParams:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InputError(
            f"strategy triple must be 'theta,alpha,beta' or JSON, got {text!r}"
        )
    return StrategyParams.from_json(parts)


def cmd_limits(args) -> int:
    game = _load_game(args.game, "float")
    thetas = [float(t) for t in args.epsilons]
    lines = ["class,direction,theta1,max_abs_diff,bound,converged"]
    all_ok = True
    for name in ("D1", "D2", "E1", "E2"):
        for direction in ("zero", "pi"):
            chk = limit_check(ClassId(name), direction, game, thetas=thetas)
            all_ok = all_ok and chk.converged
            for th, d, b in zip(chk.thetas, chk.max_abs_diff, chk.bounds):
                arrow = "theta->0" if direction == "zero" else "theta->pi"
                lines.append(
                    f"{name},{arrow},{th!r},{d!r},{b!r},{d <= b}"
                )
    _emit(args, "\n".join(lines))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewlext",
        description="Quantum extensions of 2x2 games: construction, "
                    "invariance verification, solution enumeration, equilibria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, game_required=True):
        p.add_argument("--game", required=game_required,
                       help="path to a game JSON file, or inline JSON")
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--output", help="write to file instead of stdout")

    def add_class_params(p):
        p.add_argument("--class", dest="cls",
                       choices=[c.value for c in ClassId],
                       help="extension class shortcut")
        p.add_argument("--theta1")
        p.add_argument("--alpha1")
        p.add_argument("--beta1")
        p.add_argument("--alpha2")
        p.add_argument("--beta2")
        p.add_argument("--set", help="explicit JSON list of strategy parameter triples")

    p = sub.add_parser("extend", help="materialize a 4x4 extension bimatrix")
    add_common(p)
    add_class_params(p)
    p.add_argument("--oracle-check", action="store_true",
                   help="recompute every entry via the statevector and compare")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("verify", help="check invariance under the swapped variants")
    add_common(p)
    add_class_params(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="lattice search for permissible parameters")
    p.add_argument("--theta", action="append", required=True,
                   help="theta1 value such as '1/2 pi' (repeatable)")
    p.add_argument("--step", default="1/4", choices=("1/4", "1/8"),
                   help="phase lattice step in units of pi")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--output", help="write CSV to file instead of stdout")
    p.set_defaults(func=cmd_enumerate, format="csv")

    p = sub.add_parser("equilibria", help="pure and mixed Nash equilibria")
    add_common(p)
    add_class_params(p)
    p.add_argument("--extend-first", action="store_true",
                   help="extend the classical game before solving")
    p.add_argument("--oracle-check", action="store_true")
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("payoff", help="payoff of a single strategy profile")
    add_common(p)
    p.add_argument("--p1", required=True, help="'theta,alpha,beta' or JSON triple")
    p.add_argument("--p2", required=True)
    p.add_argument("--oracle-check", action="store_true")
    p.set_defaults(func=cmd_payoff)

    p = sub.add_parser("limits", help="D/E to A convergence table (CSV)")
    add_common(p)
    p.add_argument("--epsilons", nargs="+", default=["1e-1", "1e-2", "1e-3",
                                                     "1e-4", "1e-5", "1e-6"],
                   help="offsets of theta1 from the limit point")
    p.set_defaults(func=cmd_limits)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EwlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
