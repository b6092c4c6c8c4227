"""Policies as deterministic total automata plus a capability lattice.

A policy bundles an alphabet, a capability assignment for every action
(controllable / insertable / suppressible / observable), a property
automaton giving finite- and infinite-word validity, and optionally a
second automaton recognizing the possible executions of the target.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from .traces import Action, FiniteTrace, LassoWord, Word


class PolicySyntaxError(ValueError):
    """Parse failure, carrying the offending line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class PolicyValidationError(ValueError):
    """A structurally complete file that violates a well-formedness rule."""


class UnknownActionError(KeyError):
    """An action outside the policy alphabet."""


class Capability(Enum):
    """What the monitor may do with an action."""

    C = "C"  # insert and suppress
    I = "I"  # insert only
    D = "D"  # suppress only
    O = "O"  # observe only


CAP_ORDER = "CIDO"

# Cover edges of the capability diamond, lowest capability first.
LATTICE_EDGES = (
    (Capability.O, Capability.I),
    (Capability.O, Capability.D),
    (Capability.I, Capability.C),
    (Capability.D, Capability.C),
)


@dataclass(frozen=True)
class ActionLattice:
    """Total assignment of one capability class per alphabet action."""

    assignment: tuple[tuple[Action, Capability], ...]

    @staticmethod
    def from_map(mapping: dict[Action, Capability]) -> "ActionLattice":
        return ActionLattice(tuple(sorted(mapping.items(), key=lambda kv: kv[0].name)))

    @staticmethod
    def uniform(alphabet: Iterable[Action], cap: Capability) -> "ActionLattice":
        return ActionLattice.from_map({a: cap for a in alphabet})

    def as_map(self) -> dict[Action, Capability]:
        return dict(self.assignment)

    def class_of(self, a: Action) -> Capability:
        for action, cap in self.assignment:
            if action == a:
                return cap
        raise UnknownActionError(a.name)

    def actions(self) -> tuple[Action, ...]:
        return tuple(a for a, _ in self.assignment)

    def members(self, cap: Capability) -> frozenset[Action]:
        return frozenset(a for a, c in self.assignment if c is cap)

    def can_insert(self, a: Action) -> bool:
        return self.class_of(a) in (Capability.I, Capability.C)

    def can_suppress(self, a: Action) -> bool:
        return self.class_of(a) in (Capability.D, Capability.C)

    # Aborting rides on the same classes as suppression.
    can_abort_on = can_suppress

    def promote(self, a: Action, source: Capability, target: Capability) -> "ActionLattice":
        """Move one action from ``source`` to ``target``."""
        if self.class_of(a) is not source:
            raise PolicyValidationError(
                f"action {a.name} is in {self.class_of(a).value}, not {source.value}"
            )
        updated = self.as_map()
        updated[a] = target
        return ActionLattice.from_map(updated)

    def describe(self) -> str:
        parts = []
        for cap in Capability:
            members = sorted(x.name for x in self.members(cap))
            if members:
                parts.append(f"{cap.value}:{','.join(members)}")
        return ";".join(parts) if parts else "empty"


class InfiniteMode(Enum):
    BUCHI = "buchi"
    COBUCHI = "cobuchi"
    NONE = "none"
    ALL = "all"


@dataclass(frozen=True)
class PropertyAutomaton:
    """Deterministic, total automaton with finite- and infinite-word
    acceptance.

    Finite words are valid when the run ends in ``accept_finite``.
    Infinite words are judged on the set of states visited infinitely
    often, per ``mode``.
    """

    states: tuple[str, ...]
    alphabet: tuple[Action, ...]
    initial: str
    delta: tuple[tuple[str, str, str], ...]  # (state, action name, state)
    accept_finite: frozenset[str]
    mode: InfiniteMode
    mode_states: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        names = set(self.states)
        if len(names) != len(self.states):
            raise PolicyValidationError("duplicate state declaration")
        if self.initial not in names:
            raise PolicyValidationError(f"initial state {self.initial} not declared")
        bad = self.accept_finite - names
        if bad:
            raise PolicyValidationError(f"unknown accepting state(s): {sorted(bad)}")
        if self.mode in (InfiniteMode.BUCHI, InfiniteMode.COBUCHI):
            bad = self.mode_states - names
            if bad:
                raise PolicyValidationError(f"unknown acceptance state(s): {sorted(bad)}")
        letters = {a.name for a in self.alphabet}
        seen = set()
        for src, letter, dst in self.delta:
            if src not in names or dst not in names:
                raise PolicyValidationError(f"transition uses undeclared state: {src} {letter} {dst}")
            if letter not in letters:
                raise PolicyValidationError(f"transition uses unknown action: {letter}")
            if (src, letter) in seen:
                raise PolicyValidationError(f"nondeterministic transition from {src} on {letter}")
            seen.add((src, letter))
        missing = [
            (q, a.name) for q in self.states for a in self.alphabet if (q, a.name) not in seen
        ]
        if missing:
            q, letter = missing[0]
            raise PolicyValidationError(f"delta is not total: no transition from {q} on {letter}")

    @property
    def transition(self) -> dict[tuple[str, str], str]:
        return _transition_table(self)

    def step(self, state: str, a: Action) -> str:
        try:
            return self.transition[(state, a.name)]
        except KeyError:
            raise UnknownActionError(a.name) from None

    def run(self, tau: FiniteTrace, start: Optional[str] = None) -> str:
        state = self.initial if start is None else start
        table = self.transition
        for a in tau.items:
            try:
                state = table[(state, a.name)]
            except KeyError:
                raise UnknownActionError(a.name) from None
        return state

    def residual_state(self, tau: FiniteTrace) -> str:
        return self.run(tau)

    def evaluate_finite(self, tau: FiniteTrace) -> bool:
        return self.run(tau) in self.accept_finite

    def accepts_state(self, state: str) -> bool:
        return state in self.accept_finite

    def is_reasonable(self) -> bool:
        return self.initial in self.accept_finite

    def evaluate_infinite(self, w: LassoWord) -> bool:
        return self.cycle_accepts(self.infinity_set(w))

    def infinity_set(self, w: LassoWord, start: Optional[str] = None) -> frozenset[str]:
        """States visited infinitely often on the run over ``w``."""
        state = self.run(w.stem, start)
        seen = {state: 0}
        visited: list[list[str]] = []
        while True:
            states_in_pass = []
            for a in w.loop.items:
                state = self.step(state, a)
                states_in_pass.append(state)
            visited.append(states_in_pass)
            if state in seen:
                recurring: set[str] = set()
                for states in visited[seen[state] :]:
                    recurring.update(states)
                return frozenset(recurring)
            seen[state] = len(visited)

    def cycle_accepts(self, cycle_states: frozenset[str]) -> bool:
        if self.mode is InfiniteMode.ALL:
            return True
        if self.mode is InfiniteMode.NONE:
            return False
        if self.mode is InfiniteMode.BUCHI:
            return bool(cycle_states & self.mode_states)
        return cycle_states <= self.mode_states

    def evaluate(self, word: Word) -> bool:
        if isinstance(word, FiniteTrace):
            return self.evaluate_finite(word)
        return self.evaluate_infinite(word)

    # -- graph analyses ------------------------------------------------

    def reachable_states(self) -> frozenset[str]:
        return _reachable(self)

    def doomed_states(self) -> frozenset[str]:
        """States from which no valid finite word and no accepted cycle
        is reachable."""
        return _doomed(self)

    def cycle_sets(self) -> tuple[frozenset[str], ...]:
        """All state sets of reachable closed walks."""
        return _cycle_sets(self)

    def reaches(self, source: str) -> frozenset[str]:
        return _reach_from(self)[source]

    def lasso_into_cycle(self, cycle: frozenset[str]) -> LassoWord:
        """A concrete lasso whose infinity set is exactly ``cycle``."""
        stem = _path_words(self)[min(cycle, key=self.states.index)]
        loop = _closed_walk_word(self, cycle)
        return LassoWord(stem, loop)


@lru_cache(maxsize=None)
def _transition_table(auto: PropertyAutomaton) -> dict[tuple[str, str], str]:
    return {(src, letter): dst for src, letter, dst in auto.delta}


@lru_cache(maxsize=None)
def _reachable(auto: PropertyAutomaton) -> frozenset[str]:
    return _reach_from(auto)[auto.initial]


@lru_cache(maxsize=None)
def _reach_from(auto: PropertyAutomaton) -> dict[str, frozenset[str]]:
    out: dict[str, frozenset[str]] = {}
    for start in auto.states:
        seen = {start}
        frontier = [start]
        while frontier:
            q = frontier.pop()
            for a in auto.alphabet:
                nxt = auto.transition[(q, a.name)]
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        out[start] = frozenset(seen)
    return out


@lru_cache(maxsize=None)
def _sccs(auto: PropertyAutomaton) -> tuple[frozenset[str], ...]:
    reach = _reach_from(auto)
    remaining = set(auto.states)
    out = []
    while remaining:
        q = remaining.pop()
        component = {p for p in auto.states if p in reach[q] and q in reach[p]}
        remaining -= component
        out.append(frozenset(component))
    return tuple(out)


@lru_cache(maxsize=None)
def _path_words(auto: PropertyAutomaton) -> dict[str, FiniteTrace]:
    """A shortest input word reaching each reachable state."""
    words = {auto.initial: FiniteTrace()}
    frontier = [auto.initial]
    while frontier:
        nxt_frontier = []
        for q in frontier:
            for a in auto.alphabet:
                dst = auto.transition[(q, a.name)]
                if dst not in words:
                    words[dst] = FiniteTrace(words[q].items + (a,))
                    nxt_frontier.append(dst)
        frontier = nxt_frontier
    return words


@lru_cache(maxsize=None)
def _doomed(auto: PropertyAutomaton) -> frozenset[str]:
    alive: set[str] = set()
    reach = _reach_from(auto)
    accepted_cycles = [c for c in _all_cycle_sets(auto) if auto.cycle_accepts(c)]
    for q in auto.states:
        if reach[q] & auto.accept_finite:
            alive.add(q)
            continue
        if any(reach[q] & c for c in accepted_cycles):
            alive.add(q)
    return frozenset(set(auto.states) - alive)


@lru_cache(maxsize=None)
def _all_cycle_sets(auto: PropertyAutomaton) -> tuple[frozenset[str], ...]:
    """State sets of closed walks: subsets of an SCC whose induced
    subgraph is strongly connected."""
    sccs = _sccs(auto)
    found: list[frozenset[str]] = []
    for scc in sccs:
        members = sorted(scc, key=auto.states.index)
        for mask in range(1, 1 << len(members)):
            subset = frozenset(members[i] for i in range(len(members)) if mask >> i & 1)
            if _induced_strongly_connected(auto, subset):
                found.append(subset)
    return tuple(found)


@lru_cache(maxsize=None)
def _cycle_sets(auto: PropertyAutomaton) -> tuple[frozenset[str], ...]:
    reachable = _reachable(auto)
    return tuple(c for c in _all_cycle_sets(auto) if c & reachable)


def _induced_edges(auto: PropertyAutomaton, subset: frozenset[str]) -> dict[str, set[str]]:
    edges: dict[str, set[str]] = {q: set() for q in subset}
    for q in subset:
        for a in auto.alphabet:
            dst = auto.transition[(q, a.name)]
            if dst in subset:
                edges[q].add(dst)
    return edges


def _induced_strongly_connected(auto: PropertyAutomaton, subset: frozenset[str]) -> bool:
    edges = _induced_edges(auto, subset)
    if any(not outs for outs in edges.values()) and len(subset) > 1:
        return False
    if len(subset) == 1:
        q = next(iter(subset))
        return q in edges[q]
    for start in subset:
        seen = {start}
        frontier = [start]
        while frontier:
            q = frontier.pop()
            for dst in edges[q]:
                if dst not in seen:
                    seen.add(dst)
                    frontier.append(dst)
        if seen != subset:
            return False
    return True


def _closed_walk_word(auto: PropertyAutomaton, cycle: frozenset[str]) -> FiniteTrace:
    """A non-empty loop word visiting every state of ``cycle`` exactly
    and returning to its anchor."""
    anchor = min(cycle, key=auto.states.index)
    word: list[Action] = []
    state = anchor
    visited = {anchor}
    while visited != set(cycle):
        target = min(set(cycle) - visited, key=auto.states.index)
        seg = _word_between(auto, state, target, cycle)
        for a in seg.items:
            state = auto.transition[(state, a.name)]
            visited.add(state)
        word.extend(seg.items)
    if state != anchor or not word:
        back = _nonempty_walk(auto, state, anchor, cycle)
        word.extend(back.items)
    return FiniteTrace(tuple(word))


def _word_between(
    auto: PropertyAutomaton, source: str, target: str, inside: frozenset[str]
) -> FiniteTrace:
    """Shortest path word from source to target staying inside the set."""
    if source == target:
        return FiniteTrace()
    paths: dict[str, tuple[Action, ...]] = {source: ()}
    frontier = [source]
    while frontier:
        nxt = []
        for q in frontier:
            for a in auto.alphabet:
                dst = auto.transition[(q, a.name)]
                if dst in inside and dst not in paths:
                    paths[dst] = paths[q] + (a,)
                    if dst == target:
                        return FiniteTrace(paths[dst])
                    nxt.append(dst)
        frontier = nxt
    raise PolicyValidationError(f"no path from {source} to {target} inside the cycle")


def _nonempty_walk(
    auto: PropertyAutomaton, source: str, target: str, inside: frozenset[str]
) -> FiniteTrace:
    if source != target:
        return _word_between(auto, source, target, inside)
    best: Optional[tuple[Action, ...]] = None
    for a in auto.alphabet:
        dst = auto.transition[(source, a.name)]
        if dst not in inside:
            continue
        if dst == source:
            return FiniteTrace((a,))
        cand = (a,) + _word_between(auto, dst, source, inside).items
        if best is None or len(cand) < len(best):
            best = cand
    if best is None:
        raise PolicyValidationError("cycle set has no internal successor")
    return FiniteTrace(best)


@dataclass(frozen=True)
class Policy:
    """Alphabet, capability lattice, property automaton, optional model
    of the possible executions."""

    name: str
    alphabet: tuple[Action, ...]
    lattice: ActionLattice
    prop: PropertyAutomaton
    possible: Optional[PropertyAutomaton] = None
    possible_path: Optional[str] = None

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PolicyValidationError("duplicate alphabet action")
        lattice_actions = set(self.lattice.actions())
        alpha = set(self.alphabet)
        missing = alpha - lattice_actions
        if missing:
            raise PolicyValidationError(
                f"action(s) without a lattice class: {sorted(a.name for a in missing)}"
            )
        extra = lattice_actions - alpha
        if extra:
            raise PolicyValidationError(
                f"lattice assigns actions outside the alphabet: {sorted(a.name for a in extra)}"
            )
        if tuple(self.prop.alphabet) != tuple(self.alphabet):
            raise PolicyValidationError("automaton alphabet differs from policy alphabet")
        if self.possible is not None and tuple(self.possible.alphabet) != tuple(self.alphabet):
            raise PolicyValidationError("possible-set alphabet differs from policy alphabet")

    def with_lattice(self, lattice: ActionLattice) -> "Policy":
        return Policy(self.name, self.alphabet, lattice, self.prop, self.possible, self.possible_path)

    def with_name(self, name: str) -> "Policy":
        return Policy(name, self.alphabet, self.lattice, self.prop, self.possible, self.possible_path)

    def evaluate(self, word: Word) -> bool:
        return self.prop.evaluate(word)

    def is_reasonable(self) -> bool:
        return self.prop.is_reasonable()

    def check_word(self, word: Word) -> None:
        from .traces import acts

        unknown = {a.name for a in acts(word)} - {a.name for a in self.alphabet}
        if unknown:
            raise UnknownActionError(sorted(unknown)[0])


# -- text format -----------------------------------------------------------


def parse_policy(text: str, name: str = "policy", base_dir: Optional[str] = None) -> Policy:
    """Parse the line-oriented policy format; see ``serialize_policy``."""
    alphabet: Optional[list[Action]] = None
    lattice_lines: list[tuple[int, Capability, list[Action]]] = []
    states: Optional[list[str]] = None
    initial: Optional[str] = None
    accept_finite: Optional[list[str]] = None
    mode: Optional[InfiniteMode] = None
    mode_states: list[str] = []
    deltas: list[tuple[int, str, str, str]] = []
    possible_path: Optional[str] = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        rest = tokens[1:]
        if keyword == "alphabet":
            if alphabet is not None:
                raise PolicySyntaxError(line_no, "duplicate alphabet line")
            try:
                alphabet = [Action(t) for t in rest]
            except ValueError as exc:
                raise PolicySyntaxError(line_no, str(exc)) from exc
        elif keyword == "lattice":
            if not rest or not rest[0].endswith(":"):
                raise PolicySyntaxError(line_no, "expected 'lattice <CLASS>: <actions>'")
            cap_token = rest[0][:-1]
            try:
                cap = Capability(cap_token)
            except ValueError:
                raise PolicySyntaxError(line_no, f"unknown capability class {cap_token!r}") from None
            try:
                lattice_lines.append((line_no, cap, [Action(t) for t in rest[1:]]))
            except ValueError as exc:
                raise PolicySyntaxError(line_no, str(exc)) from exc
        elif keyword == "states":
            if states is not None:
                raise PolicySyntaxError(line_no, "duplicate states line")
            states = rest
        elif keyword == "initial":
            if len(rest) != 1:
                raise PolicySyntaxError(line_no, "initial takes exactly one state")
            initial = rest[0]
        elif keyword == "accept-finite":
            if accept_finite is not None:
                raise PolicySyntaxError(line_no, "duplicate accept-finite line")
            accept_finite = rest
        elif keyword == "accept-infinite":
            if mode is not None:
                raise PolicySyntaxError(line_no, "duplicate accept-infinite line")
            if not rest:
                raise PolicySyntaxError(line_no, "accept-infinite needs a mode")
            try:
                mode = InfiniteMode(rest[0])
            except ValueError:
                raise PolicySyntaxError(line_no, f"unknown mode {rest[0]!r}") from None
            mode_states = rest[1:]
            if mode in (InfiniteMode.NONE, InfiniteMode.ALL) and mode_states:
                raise PolicySyntaxError(line_no, f"mode {mode.value} takes no states")
        elif keyword == "delta":
            if len(rest) != 3:
                raise PolicySyntaxError(line_no, "expected 'delta <state> <action> <state>'")
            deltas.append((line_no, rest[0], rest[1], rest[2]))
        elif keyword == "possible":
            if len(rest) != 1:
                raise PolicySyntaxError(line_no, "possible takes exactly one path")
            possible_path = rest[0]
        else:
            raise PolicySyntaxError(line_no, f"unknown keyword {keyword!r}")

    if alphabet is None:
        raise PolicyValidationError("missing alphabet line")
    if states is None:
        raise PolicyValidationError("missing states line")
    if initial is None:
        raise PolicyValidationError("missing initial line")
    if accept_finite is None:
        raise PolicyValidationError("missing accept-finite line")
    if mode is None:
        raise PolicyValidationError("missing accept-infinite line")

    seen_delta = set()
    for line_no, src, letter, dst in deltas:
        if (src, letter) in seen_delta:
            raise PolicySyntaxError(line_no, f"nondeterministic transition from {src} on {letter}")
        seen_delta.add((src, letter))

    assignment: dict[Action, Capability] = {}
    for line_no, cap, actions in lattice_lines:
        for a in actions:
            if a in assignment:
                raise PolicySyntaxError(line_no, f"action {a.name} assigned twice in the lattice")
            assignment[a] = cap

    auto = PropertyAutomaton(
        states=tuple(states),
        alphabet=tuple(alphabet),
        initial=initial,
        delta=tuple((src, letter, dst) for _, src, letter, dst in deltas),
        accept_finite=frozenset(accept_finite),
        mode=mode,
        mode_states=frozenset(mode_states),
    )

    possible = None
    if possible_path is not None:
        resolved = possible_path
        if base_dir is not None:
            resolved = os.path.join(base_dir, possible_path)
        possible = load_policy(resolved).prop

    return Policy(
        name=name,
        alphabet=tuple(alphabet),
        lattice=ActionLattice.from_map(assignment),
        prop=auto,
        possible=possible,
        possible_path=possible_path,
    )


def load_policy(path: str) -> Policy:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_policy(text, name=name, base_dir=os.path.dirname(path))


def serialize_policy(policy: Policy) -> str:
    """Emit the canonical text form; parse . serialize is the identity
    on files produced here."""
    auto = policy.prop
    lines = ["alphabet " + " ".join(a.name for a in policy.alphabet)]
    for cap_letter in CAP_ORDER:
        cap = Capability(cap_letter)
        members = [a.name for a in policy.alphabet if policy.lattice.class_of(a) is cap]
        if members:
            lines.append(f"lattice {cap.value}: " + " ".join(members))
    lines.append("states " + " ".join(auto.states))
    lines.append("initial " + auto.initial)
    accept = [q for q in auto.states if q in auto.accept_finite]
    lines.append(("accept-finite " + " ".join(accept)).rstrip())
    if auto.mode in (InfiniteMode.NONE, InfiniteMode.ALL):
        lines.append("accept-infinite " + auto.mode.value)
    else:
        chosen = [q for q in auto.states if q in auto.mode_states]
        lines.append(("accept-infinite " + auto.mode.value + " " + " ".join(chosen)).rstrip())
    table = auto.transition
    for q in auto.states:
        for a in policy.alphabet:
            lines.append(f"delta {q} {a.name} {table[(q, a.name)]}")
    if policy.possible_path is not None:
        lines.append("possible " + policy.possible_path)
    return "\n".join(lines) + "\n"
