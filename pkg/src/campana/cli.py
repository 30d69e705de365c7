"""Command-line front end.

Exit codes: 0 success, 1 verified failure or search exhaustion, 2 usage
error.  Rationals are written "num/den" or plain integers; the place at
infinity is "inf".  An optional config file (key=value lines, '#' comments)
supplies search caps and default sample counts; flags override it.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import formulas as fm, parametrize, places, semantics, verify
from .errors import SearchExhausted

USAGE_ERROR = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"not a rational: {text!r} ({exc})")


def _parse_place(text: str):
    text = text.strip()
    if text == "inf":
        return places.REAL_PLACE
    try:
        p = int(text)
    except ValueError:
        raise CliError(f"not a place: {text!r}")
    try:
        return places.finite(p)
    except ValueError as exc:
        raise CliError(str(exc))


def _parse_prime_list(text: str) -> List[int]:
    parts = [t for chunk in text.split(",") for t in chunk.split()] if text else []
    out = []
    for t in parts:
        try:
            out.append(int(t))
        except ValueError:
            raise CliError(f"not an integer: {t!r}")
    return out


def _load_config(path: Optional[str]) -> Dict[str, str]:
    if not path:
        return {}
    cfg: Dict[str, str] = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected key=value")
                key, value = line.split("=", 1)
                cfg[key.strip()] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}")
    return cfg


def _search_config(cfg: Dict[str, str]) -> parametrize.SearchConfig:
    sc = parametrize.SearchConfig()
    try:
        if "candidate_cap" in cfg:
            sc.candidate_cap = int(cfg["candidate_cap"])
        if "q_prime_bound" in cfg:
            sc.q_prime_bound = int(cfg["q_prime_bound"])
    except ValueError as exc:
        raise CliError(f"bad config value: {exc}")
    return sc


def cmd_hilbert(args, cfg) -> int:
    a = _parse_rational(args.a)
    b = _parse_rational(args.b)
    v = _parse_place(args.place)
    try:
        value = places.hilbert(a, b, v)
    except ValueError as exc:
        raise CliError(str(exc))
    print(f"{value:+d}")
    return 0


def cmd_construct(args, cfg) -> int:
    primes = []
    for t in args.primes:
        try:
            primes.append(int(t))
        except ValueError:
            raise CliError(f"not an integer: {t!r}")
    if len(set(primes)) != len(primes):
        raise CliError("duplicate primes in S")
    try:
        sc = _search_config(cfg)
        report = parametrize.construct_omega(primes, sc)
    except ValueError as exc:
        raise CliError(str(exc))
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report.to_dict(), sort_keys=True))
    return 0 if report.success else 1


def cmd_member(args, cfg) -> int:
    r = _parse_rational(args.r)
    kind = args.kind
    try:
        if kind == "campana":
            if args.n is None:
                raise CliError("campana needs --n")
            verdict = semantics.campana_member(_parse_prime_list(args.s or ""), args.n, r)
        elif kind == "sintegers":
            verdict = semantics.s_integer_member(_parse_prime_list(args.s or ""), r)
        else:
            if not args.abcd:
                raise CliError(f"{kind} needs --abcd a,b,c,d")
            parts = [p for chunk in args.abcd.split(",") for p in chunk.split()]
            if len(parts) != 4:
                raise CliError("--abcd needs exactly four rationals")
            a, b, c, d = (_parse_rational(p) for p in parts)
            if kind == "J":
                verdict = semantics.in_J(a, b, c, d, r)
            elif kind == "Jn":
                if args.n is None:
                    raise CliError("Jn needs --n")
                verdict = semantics.in_Jn(a, b, c, d, args.n, r)
            else:  # invJn
                if args.n is None:
                    raise CliError("invJn needs --n")
                verdict = semantics.in_inv_Jn(a, b, c, d, args.n, r)
    except ValueError as exc:
        raise CliError(str(exc))
    print("true" if verdict else "false")
    return 0


_EMIT_TARGETS = {
    "S": lambda args: fm.build_S(),
    "T": lambda args: fm.build_T(),
    "Tunit": lambda args: fm.build_T_unit(),
    "I": lambda args: fm.build_I(),
    "J": lambda args: fm.build_J(),
    "Jabcd": lambda args: fm.build_Jabcd(),
    "invJ": lambda args: fm.build_inv_J(),
    "disjoint": lambda args: fm.build_disjoint(),
    "premise": lambda args: fm.build_premise(),
    "Jn": lambda args: fm.build_Jn(_require_n(args)),
    "invJn": lambda args: fm.build_inv_Jn(_require_n(args)),
    "campana": lambda args: fm.build_campana(_require_n(args), args.real),
    "integrality": lambda args: fm.build_integrality(args.real),
}


def _require_n(args) -> int:
    if args.n is None:
        raise CliError(f"target {args.target!r} needs --n")
    return args.n


def cmd_emit(args, cfg) -> int:
    if args.target not in _EMIT_TARGETS:
        raise CliError(f"unknown target {args.target!r} "
                       f"(choose from {', '.join(sorted(_EMIT_TARGETS))})")
    try:
        formula = _EMIT_TARGETS[args.target](args)
        payload = fm.emit(formula, args.format)
    except ValueError as exc:
        raise CliError(str(exc))
    s = fm.stats(formula)
    stats_line = (f"universals={s.universals} existentials={s.existentials} "
                  f"degree<={s.degree_bound}")
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
        print(stats_line)
    else:
        sys.stdout.buffer.write(payload + b"\n")
        print(stats_line, file=sys.stderr)
    return 0


def cmd_verify(args, cfg) -> int:
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 42))
    samples = args.samples if args.samples is not None else int(cfg.get("samples", 1000))
    try:
        ok, table = verify.run(args.suite, seed=seed, samples=samples)
    except ValueError as exc:
        raise CliError(str(exc))
    print(table)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="campana",
        description="Hilbert symbols, radical place sets, and forall-exists "
                    "formula compilation for Campana points over Q.",
    )
    parser.add_argument("--config", help="key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", help="local Hilbert symbol (a,b)_v")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("place", help="a prime or 'inf'")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("construct", help="build (a,b,c,d) realizing a prime set")
    p.add_argument("primes", nargs="*", help="the target primes")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("member", help="semantic membership tests")
    p.add_argument("kind", choices=["campana", "sintegers", "J", "Jn", "invJn"])
    p.add_argument("r", help="the rational to test")
    p.add_argument("--n", type=int)
    p.add_argument("--s", help="comma/space separated primes", default=None)
    p.add_argument("--abcd", help="four rationals, comma separated")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("emit", help="serialize a compiled formula")
    p.add_argument("target")
    p.add_argument("--n", type=int)
    p.add_argument("--real", action="store_true",
                   help="sum-of-squares combiner (real-embedded variant)")
    p.add_argument("--format", choices=["json", "sexpr", "latex"], default="json")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=["all"] + sorted(verify.SUITES))
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize others
        return exc.code if exc.code in (0, 2) else USAGE_ERROR
    try:
        cfg = _load_config(args.config)
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
