"""The curated policy corpus and lattice patterns used for
verification runs and the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .classify import Bounds
from .policy import (
    ActionLattice,
    Capability,
    InfiniteMode,
    Policy,
    PropertyAutomaton,
)
from .traces import Action


def _actions(*names: str) -> tuple[Action, ...]:
    return tuple(Action(n) for n in names)


def _auto(
    states: tuple[str, ...],
    alphabet: tuple[Action, ...],
    initial: str,
    delta: dict[tuple[str, str], str],
    accept: set[str],
    mode: InfiniteMode,
    mode_states: set[str] = frozenset(),
) -> PropertyAutomaton:
    return PropertyAutomaton(
        states=states,
        alphabet=alphabet,
        initial=initial,
        delta=tuple((q, a, delta[(q, a)]) for q, a in delta),
        accept_finite=frozenset(accept),
        mode=mode,
        mode_states=frozenset(mode_states),
    )


def _policy(name, alphabet, auto, default_cap=Capability.C, possible=None, possible_path=None):
    return Policy(
        name=name,
        alphabet=alphabet,
        lattice=ActionLattice.uniform(alphabet, default_cap),
        prop=auto,
        possible=possible,
        possible_path=possible_path,
    )


def no_double_a() -> Policy:
    """No two a actions in a row; b is harmless."""
    alphabet = _actions("a", "b")
    delta = {
        ("q0", "a"): "q1",
        ("q0", "b"): "q0",
        ("q1", "a"): "qsink",
        ("q1", "b"): "q0",
        ("qsink", "a"): "qsink",
        ("qsink", "b"): "qsink",
    }
    auto = _auto(
        ("q0", "q1", "qsink"), alphabet, "q0", delta, {"q0", "q1"},
        InfiniteMode.BUCHI, {"q0", "q1"},
    )
    return _policy("pnaa", alphabet, auto)


def open_before_write() -> Policy:
    """Writes must follow an open of the same file, two files."""
    alphabet = _actions("o1", "o2", "w1", "w2")
    states = ("qn", "q1", "q2", "qb", "qsink")
    opened = {"qn": frozenset(), "q1": {"1"}, "q2": {"2"}, "qb": {"1", "2"}}
    by_set = {frozenset(): "qn", frozenset({"1"}): "q1", frozenset({"2"}): "q2", frozenset({"1", "2"}): "qb"}
    delta: dict[tuple[str, str], str] = {}
    for q in states:
        for a in alphabet:
            if q == "qsink":
                delta[(q, a.name)] = "qsink"
            elif a.name.startswith("o"):
                delta[(q, a.name)] = by_set[frozenset(set(opened[q]) | {a.name[1]})]
            else:
                delta[(q, a.name)] = q if a.name[1] in opened[q] else "qsink"
    auto = _auto(
        states, alphabet, "qn", delta, {"qn", "q1", "q2", "qb"},
        InfiniteMode.BUCHI, {"qn", "q1", "q2", "qb"},
    )
    return _policy("pos2", alphabet, auto)


def eventually_a() -> Policy:
    """Some a must occur; not reasonable (the empty word has none)."""
    alphabet = _actions("a", "b")
    delta = {
        ("q0", "a"): "qa",
        ("q0", "b"): "q0",
        ("qa", "a"): "qa",
        ("qa", "b"): "qa",
    }
    auto = _auto(("q0", "qa"), alphabet, "q0", delta, {"qa"}, InfiniteMode.BUCHI, {"qa"})
    return _policy("eva", alphabet, auto)


def begins_with_a() -> Policy:
    """The first action must be a; not reasonable."""
    alphabet = _actions("a", "b")
    delta = {
        ("q0", "a"): "qy",
        ("q0", "b"): "qn",
        ("qy", "a"): "qy",
        ("qy", "b"): "qy",
        ("qn", "a"): "qn",
        ("qn", "b"): "qn",
    }
    auto = _auto(("q0", "qy", "qn"), alphabet, "q0", delta, {"qy"}, InfiniteMode.BUCHI, {"qy"})
    return _policy("bwa", alphabet, auto)


def ends_with_b() -> Policy:
    """Valid finite words end with b (or are empty); infinite words
    must keep producing b."""
    alphabet = _actions("a", "b")
    delta = {
        ("qe", "a"): "qa",
        ("qe", "b"): "qb",
        ("qa", "a"): "qa",
        ("qa", "b"): "qb",
        ("qb", "a"): "qa",
        ("qb", "b"): "qb",
    }
    auto = _auto(("qe", "qa", "qb"), alphabet, "qe", delta, {"qe", "qb"}, InfiniteMode.BUCHI, {"qb"})
    return _policy("endb", alphabet, auto)


def exactly_double_a() -> Policy:
    """Only the empty word and the word aa are valid."""
    alphabet = _actions("a",)
    delta = {
        ("q0", "a"): "q1",
        ("q1", "a"): "q2",
        ("q2", "a"): "qsink",
        ("qsink", "a"): "qsink",
    }
    auto = _auto(("q0", "q1", "q2", "qsink"), alphabet, "q0", delta, {"q0", "q2"}, InfiniteMode.NONE)
    return _policy("paa", alphabet, auto)


def no_send_after_read() -> Policy:
    """Once a read happened, sends are forbidden."""
    alphabet = _actions("other", "read", "send")
    delta = {
        ("q0", "other"): "q0",
        ("q0", "read"): "qr",
        ("q0", "send"): "q0",
        ("qr", "other"): "qr",
        ("qr", "read"): "qr",
        ("qr", "send"): "qsink",
        ("qsink", "other"): "qsink",
        ("qsink", "read"): "qsink",
        ("qsink", "send"): "qsink",
    }
    auto = _auto(
        ("q0", "qr", "qsink"), alphabet, "q0", delta, {"q0", "qr"},
        InfiniteMode.BUCHI, {"q0", "qr"},
    )
    return _policy("nsar", alphabet, auto)


def everything_valid() -> Policy:
    """The inviolable policy: every execution is valid."""
    alphabet = _actions("a", "b")
    delta = {("q0", "a"): "q0", ("q0", "b"): "q0"}
    auto = _auto(("q0",), alphabet, "q0", delta, {"q0"}, InfiniteMode.ALL)
    return _policy("univ", alphabet, auto)


def only_empty_valid() -> Policy:
    """Only the empty execution is valid."""
    alphabet = _actions("a", "b")
    delta = {
        ("q0", "a"): "qd",
        ("q0", "b"): "qd",
        ("qd", "a"): "qd",
        ("qd", "b"): "qd",
    }
    auto = _auto(("q0", "qd"), alphabet, "q0", delta, {"q0"}, InfiniteMode.NONE)
    return _policy("eps", alphabet, auto)


def infinitely_often_a() -> Policy:
    """Finite words are all valid; infinite words need recurring a."""
    alphabet = _actions("a", "b")
    delta = {
        ("qb", "a"): "qa",
        ("qb", "b"): "qb",
        ("qa", "a"): "qa",
        ("qa", "b"): "qb",
    }
    auto = _auto(("qb", "qa"), alphabet, "qb", delta, {"qb", "qa"}, InfiniteMode.BUCHI, {"qa"})
    return _policy("gfa", alphabet, auto)


def eventually_always_a() -> Policy:
    """Finite words are all valid; infinite words must settle on a."""
    alphabet = _actions("a", "b")
    delta = {
        ("qb", "a"): "qa",
        ("qb", "b"): "qb",
        ("qa", "a"): "qa",
        ("qa", "b"): "qb",
    }
    auto = _auto(("qb", "qa"), alphabet, "qb", delta, {"qb", "qa"}, InfiniteMode.COBUCHI, {"qa"})
    return _policy("fga", alphabet, auto)


def double_a_restricted() -> Policy:
    """Only the empty word and aa are valid, but the target is known
    never to produce two consecutive a actions."""
    alphabet = _actions("a", "b")
    delta = {
        ("q0", "a"): "q1",
        ("q0", "b"): "qsink",
        ("q1", "a"): "q2",
        ("q1", "b"): "qsink",
        ("q2", "a"): "qsink",
        ("q2", "b"): "qsink",
        ("qsink", "a"): "qsink",
        ("qsink", "b"): "qsink",
    }
    auto = _auto(("q0", "q1", "q2", "qsink"), alphabet, "q0", delta, {"q0", "q2"}, InfiniteMode.NONE)
    possible = no_double_a().prop
    return _policy("pres", alphabet, auto, possible=possible, possible_path="pres_s.pol")


def restriction_automaton() -> Policy:
    """The possible-execution recognizer shipped next to ``pres``."""
    base = no_double_a()
    return base.with_name("pres_s")


def corpus_policies() -> tuple[Policy, ...]:
    return (
        no_double_a(),
        open_before_write(),
        eventually_a(),
        begins_with_a(),
        ends_with_b(),
        exactly_double_a(),
        no_send_after_read(),
        everything_valid(),
        only_empty_valid(),
        infinitely_often_a(),
        eventually_always_a(),
        double_a_restricted(),
    )


# -- lattice patterns --------------------------------------------------------


def uniform_pattern(cap: Capability) -> Callable[[tuple[Action, ...]], ActionLattice]:
    def build(alphabet: tuple[Action, ...]) -> ActionLattice:
        return ActionLattice.uniform(alphabet, cap)

    return build


def split_pattern(head: Capability, rest: Capability, head_count: int = 1):
    def build(alphabet: tuple[Action, ...]) -> ActionLattice:
        ordered = sorted(alphabet, key=lambda a: a.name)
        return ActionLattice.from_map(
            {a: (head if i < head_count else rest) for i, a in enumerate(ordered)}
        )

    return build


def lattice_patterns() -> tuple[tuple[str, Callable[[tuple[Action, ...]], ActionLattice]], ...]:
    """Four uniform lattices plus six mixed ones."""
    return (
        ("all-C", uniform_pattern(Capability.C)),
        ("all-I", uniform_pattern(Capability.I)),
        ("all-D", uniform_pattern(Capability.D)),
        ("all-O", uniform_pattern(Capability.O)),
        ("c-head-d-rest", split_pattern(Capability.C, Capability.D)),
        ("d-head-o-rest", split_pattern(Capability.D, Capability.O)),
        ("o-head-c-rest", split_pattern(Capability.O, Capability.C)),
        ("i-head-c-rest", split_pattern(Capability.I, Capability.C)),
        ("c-head-o-rest", split_pattern(Capability.C, Capability.O)),
        ("c-half-d-half", split_pattern(Capability.C, Capability.D, head_count=2)),
    )


@dataclass(frozen=True)
class CorpusSpec:
    """Deterministic description of one verification run."""

    name: str = "default"
    bounds: Bounds = Bounds()
    game_depth: int = 6
    enforcer_depth: int = 6
    memo_cap: int = 2_000_000
    policies: tuple[Policy, ...] = field(default_factory=corpus_policies)
    patterns: tuple = field(default_factory=lattice_patterns)

    def entries(self):
        from .classify import Equivalence

        for policy in self.policies:
            for pattern_name, build in self.patterns:
                lattice = build(policy.alphabet)
                for eq in Equivalence:
                    yield policy, pattern_name, lattice, eq


def default_corpus() -> CorpusSpec:
    return CorpusSpec()
