"""Command-line surface: classify policies, run enforcers, verify a
policy or the whole corpus against the oracles.

Exit codes: 0 ok, 1 disagreement, 2 parse/usage error, 3 the session
proved the pair non-enforceable, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .classify import (
    Bounds,
    Equivalence,
    enforceable_exact,
    enforceable_insertion,
    enforceable_suppression,
    is_lattice_renewal,
    is_lattice_safety,
    is_liveness,
    is_renewal,
    is_safety,
)
from .enforce import EnforcementBreachError, Strategy, new_session, render_log
from .nonuniform import enforceable_exact_restricted
from .oracle import GameBudgetError, cross_check
from .policy import PolicySyntaxError, PolicyValidationError, load_policy
from .traces import FiniteTrace, TraceSyntaxError, format_trace, parse_trace

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_PARSE = 2
EXIT_NON_ENFORCEABLE = 3
EXIT_BUDGET = 4


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _load(path: str):
    try:
        return load_policy(path)
    except FileNotFoundError as exc:
        raise SystemExit(_fail(f"cannot read policy: {exc}"))
    except (PolicySyntaxError, PolicyValidationError) as exc:
        raise SystemExit(_fail(f"bad policy file: {exc}"))


def _fail(message: str) -> int:
    print(message, file=sys.stderr)
    return EXIT_PARSE


def cmd_classify(args: argparse.Namespace) -> int:
    policy = _load(args.policy)
    bounds = args.bounds
    lattice = policy.lattice
    pairs = [
        ("policy", policy.name),
        ("reasonable", _flag(policy.is_reasonable())),
        ("safety", _flag(is_safety(policy).value)),
        ("liveness", _flag(is_liveness(policy).value)),
        ("renewal", _flag(is_renewal(policy).value)),
        ("lattice-safety", _flag(is_lattice_safety(policy, lattice).value)),
        ("lattice-renewal", _flag(is_lattice_renewal(policy, lattice, bounds).value)),
    ]
    eqs = [args.eq] if args.eq else list(Equivalence)
    for eq in eqs:
        if eq is Equivalence.SYNTACTIC:
            if policy.possible is not None:
                verdict = enforceable_exact_restricted(policy, lattice, bounds)
            else:
                verdict = enforceable_exact(policy, lattice, bounds)
        elif eq is Equivalence.INSERT:
            verdict = enforceable_insertion(policy, lattice, False, bounds)
        else:
            verdict = enforceable_suppression(policy, lattice, bounds)
        value = "undecided" if not verdict.decided else _flag(verdict.value)
        pairs.append((f"enforceable-{eq.value}", value))
        if verdict.decided and not verdict.value and verdict.witness is not None:
            pairs.append((f"witness-{eq.value}", format_trace(verdict.witness)))
    if args.machine:
        print(" ".join(f"{key}={value}" for key, value in pairs))
    else:
        for key, value in pairs:
            print(f"{key} = {value}")
    return EXIT_OK


def cmd_enforce(args: argparse.Namespace) -> int:
    policy = _load(args.policy)
    strategy = Strategy(args.strategy)
    equivalence = Equivalence(args.eq.value if isinstance(args.eq, Equivalence) else args.eq)
    try:
        word = parse_trace(args.input)
    except TraceSyntaxError as exc:
        return _fail(f"bad trace literal: {exc}")
    if not isinstance(word, FiniteTrace):
        return _fail("enforcement inputs must be finite traces")
    try:
        session = new_session(policy, strategy, equivalence)
    except Exception as exc:
        return _fail(str(exc))
    try:
        for action in word.items:
            session.step(action)
    except EnforcementBreachError as exc:
        result = session.finish()
        print(format_trace(result.output))
        print(render_log(result.log))
        print(f"non-enforceable: {exc}", file=sys.stderr)
        return EXIT_NON_ENFORCEABLE
    except KeyError as exc:
        return _fail(f"unknown action: {exc}")
    result = session.finish()
    print(format_trace(result.output))
    log_text = render_log(result.log)
    if log_text:
        print(log_text)
    if args.machine:
        print(
            f"sound={_flag(result.sound)} transparent={_flag(result.transparent)} "
            f"compliant={_flag(result.compliant)}"
        )
    if result.sound and result.compliant:
        return EXIT_OK
    return EXIT_NON_ENFORCEABLE


def _spec_for(args: argparse.Namespace, policies=None):
    from .corpus import CorpusSpec, corpus_policies

    kwargs = {"bounds": args.bounds}
    if args.game_depth is not None:
        kwargs["game_depth"] = args.game_depth
        kwargs["enforcer_depth"] = args.game_depth
    if policies is not None:
        kwargs["policies"] = tuple(policies)
        kwargs["name"] = policies[0].name
    return CorpusSpec(**kwargs)


def cmd_verify(args: argparse.Namespace) -> int:
    policy = _load(args.policy)
    if args.possible:
        restriction = _load(args.possible)
        from .policy import Policy

        policy = Policy(
            policy.name,
            policy.alphabet,
            policy.lattice,
            policy.prop,
            restriction.prop,
            args.possible,
        )
    return _run_check(_spec_for(args, [policy]))


def cmd_corpus(args: argparse.Namespace) -> int:
    return _run_check(_spec_for(args))


def _run_check(spec) -> int:
    try:
        report = cross_check(spec)
    except GameBudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(report.render(), end="")
    return EXIT_OK if not report.disagreements else EXIT_DISAGREEMENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enforcekit",
        description="decide and execute runtime enforcement for finite-state policies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--bounds", type=Bounds.parse, default=Bounds(), metavar="F,S,L")
        p.add_argument("--machine", action="store_true", help="stable machine-readable output")

    p_classify = sub.add_parser("classify", help="property classes and enforceability")
    p_classify.add_argument("policy")
    p_classify.add_argument("--eq", type=Equivalence, choices=list(Equivalence), default=None)
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_enforce = sub.add_parser("enforce", help="run an enforcement session")
    p_enforce.add_argument("policy")
    p_enforce.add_argument("--strategy", choices=[s.value for s in Strategy], default="edit")
    p_enforce.add_argument(
        "--eq", type=Equivalence, choices=list(Equivalence), default=Equivalence.SYNTACTIC
    )
    p_enforce.add_argument("--input", required=True, help="trace literal")
    add_common(p_enforce)
    p_enforce.set_defaults(func=cmd_enforce)

    p_verify = sub.add_parser("verify", help="cross-check one policy against the oracles")
    p_verify.add_argument("policy")
    p_verify.add_argument("--possible", default=None, help="possible-set policy file")
    p_verify.add_argument("--game-depth", type=int, default=None)
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_corpus = sub.add_parser("corpus", help="cross-check the default corpus")
    p_corpus.add_argument("--game-depth", type=int, default=None)
    add_common(p_corpus)
    p_corpus.set_defaults(func=cmd_corpus)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
