"""Executable enforcers: delaying editor, truncation, insertion and
suppression sessions producing an output trace plus an auditable log.

Every session is a mutable state machine over one input stream.  A
session never silently mis-enforces: when the capability lattice makes
the required reaction illegal, the step raises, proving the pair
non-enforceable with a concrete stuck state.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from .classify import (
    Equivalence,
    _insert_closure,
    _lattice_key,
    _sound_survival_set,
    suppression_fixed_point,
)
from .policy import ActionLattice, Capability, Policy, PropertyAutomaton
from .traces import Action, FiniteTrace, is_subword


class Strategy(Enum):
    EDIT = "edit"
    TRUNCATE = "truncate"
    INSERT = "insert"
    SUPPRESS = "suppress"


COMPATIBLE_EQUIVALENCE = {
    Strategy.EDIT: Equivalence.SYNTACTIC,
    Strategy.TRUNCATE: Equivalence.SYNTACTIC,
    Strategy.INSERT: Equivalence.INSERT,
    Strategy.SUPPRESS: Equivalence.SUPPRESS,
}


class EventKind(Enum):
    EMIT = "EMIT"
    SUPPRESS_HOLD = "HOLD"
    INSERT = "INSERT"
    ABORT = "ABORT"
    PASS = "PASS"


@dataclass(frozen=True)
class EditEvent:
    kind: EventKind
    action: Optional[Action]
    justification: str = ""

    def render(self) -> str:
        if self.kind is EventKind.ABORT:
            return f"ABORT on {self.action.name}"
        return f"{self.kind.value} {self.action.name}"


class EnforcementBreachError(RuntimeError):
    """The session reached a state it cannot handle within its
    capabilities; the input so far is a non-enforceability witness."""

    def __init__(self, message: str, consumed: FiniteTrace) -> None:
        super().__init__(message)
        self.consumed = consumed


class SessionSetupError(ValueError):
    """Strategy/equivalence mismatch or an unusable policy."""


@dataclass(frozen=True)
class EnforcementResult:
    output: FiniteTrace
    log: tuple[EditEvent, ...]
    sound: bool
    transparent: bool
    compliant: bool
    breach: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.sound and self.transparent and self.compliant and self.breach is None


def render_log(log: tuple[EditEvent, ...]) -> str:
    return "\n".join(event.render() for event in log)


def audit_log(log: tuple[EditEvent, ...], lattice: ActionLattice) -> bool:
    """Independent capability audit: insertions stay insertable, aborts
    stay stoppable, held actions that are re-emitted were delayable and
    held actions that vanish were suppressible."""
    held: list[Action] = []
    emitted_delayed: list[Action] = []
    for event in log:
        if event.kind is EventKind.INSERT:
            if not lattice.can_insert(event.action):
                return False
        elif event.kind is EventKind.ABORT:
            if not lattice.can_abort_on(event.action):
                return False
        elif event.kind is EventKind.SUPPRESS_HOLD:
            held.append(event.action)
        elif event.kind is EventKind.EMIT and event.justification == "delayed":
            emitted_delayed.append(event.action)
    for action in emitted_delayed:
        if action not in held:
            return False
        held.remove(action)
        if lattice.class_of(action) is not Capability.C:
            return False
    return all(lattice.can_suppress(action) for action in held)


@lru_cache(maxsize=None)
def _insert_paths(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...]
) -> dict[str, tuple[tuple[str, tuple[str, ...]], ...]]:
    """Per state: (reachable state, shortest-lex insert word) pairs in
    shortlex discovery order."""
    insertable = sorted(name for name, cap in lattice_key if cap in ("I", "C"))
    out = {}
    for start in auto.states:
        best: dict[str, tuple[str, ...]] = {start: ()}
        order = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for q in frontier:
                for name in insertable:
                    dst = auto.transition[(q, name)]
                    if dst not in best:
                        best[dst] = best[q] + (name,)
                        order.append(dst)
                        nxt.append(dst)
            frontier = nxt
        out[start] = tuple((q, best[q]) for q in order)
    return out


def _insert_word_into(
    auto: PropertyAutomaton,
    lattice: ActionLattice,
    start: str,
    targets: frozenset[str],
) -> Optional[tuple[str, ...]]:
    for state, word in _insert_paths(auto, _lattice_key(lattice))[start]:
        if state in targets:
            return word
    return None


class EnforcerSession:
    """Running enforcement state: output so far, held suffix, log."""

    def __init__(self, policy: Policy, strategy: Strategy, equivalence: Equivalence) -> None:
        if COMPATIBLE_EQUIVALENCE[strategy] is not equivalence:
            raise SessionSetupError(
                f"strategy {strategy.value} requires equivalence "
                f"{COMPATIBLE_EQUIVALENCE[strategy].value}, got {equivalence.value}"
            )
        if strategy is Strategy.EDIT and not policy.is_reasonable():
            raise SessionSetupError("the delaying editor needs the empty word to be valid")
        self.policy = policy
        self.lattice = policy.lattice
        self.strategy = strategy
        self.equivalence = equivalence
        self.auto = policy.prop
        self.output: list[Action] = []
        self.held: list[Action] = []
        self.consumed: list[Action] = []
        self.ahead: list[Action] = []  # committed emissions not yet requested
        self.aborted = False
        self.sound_only = False
        self.log: list[EditEvent] = []
        self._out_state = self.auto.initial

    # -- helpers -------------------------------------------------------

    @property
    def output_so_far(self) -> FiniteTrace:
        return FiniteTrace(tuple(self.output))

    @property
    def suppressed(self) -> FiniteTrace:
        return FiniteTrace(tuple(self.held))

    def _emit(self, action: Action, kind: EventKind, justification: str = "") -> None:
        self.output.append(action)
        self._out_state = self.auto.step(self._out_state, action)
        self.log.append(EditEvent(kind, action, justification))

    def _breach(self, message: str) -> EnforcementBreachError:
        return EnforcementBreachError(message, FiniteTrace(tuple(self.consumed)))

    # -- stepping ------------------------------------------------------

    def step(self, action: Action) -> list[EditEvent]:
        """Process one target action; returns the events it produced."""
        if action not in self.policy.alphabet:
            from .policy import UnknownActionError

            raise UnknownActionError(action.name)
        mark = len(self.log)
        self.consumed.append(action)
        if self.aborted:
            return []
        if self.strategy is Strategy.EDIT:
            self._step_edit(action)
        elif self.strategy is Strategy.TRUNCATE:
            self._step_truncate(action)
        elif self.strategy is Strategy.INSERT:
            self._step_insert(action)
        else:
            self._step_suppress(action)
        return self.log[mark:]

    def _step_edit(self, action: Action) -> None:
        from .classify import unique_completion_tail

        lattice = self.lattice
        if self.sound_only:
            if self.ahead and self.ahead[0] == action:
                # already emitted as part of the committed completion
                self.ahead.pop(0)
                return
            self.ahead = []
            if lattice.can_suppress(action):
                self.log.append(EditEvent(EventKind.SUPPRESS_HOLD, action, "sound-only"))
            else:
                self._absorb_unavoidable(action)
            return
        candidate = FiniteTrace(tuple(self.output) + tuple(self.held) + (action,))
        if self.auto.evaluate_finite(candidate):
            for held_action in self.held:
                self._emit(held_action, EventKind.EMIT, "delayed")
            self.held = []
            self._emit(action, EventKind.EMIT, "pass")
            return
        tail = unique_completion_tail(self.policy, lattice, candidate)
        if tail is not None and lattice.can_abort_on(action):
            for held_action in self.held:
                self._emit(held_action, EventKind.EMIT, "delayed")
            self.held = []
            self._emit(action, EventKind.EMIT, "pass")
            for extra in tail.items:
                self._emit(extra, EventKind.INSERT, "completion")
            self.ahead = list(tail.items)
            self.sound_only = True
            return
        cap = lattice.class_of(action)
        if cap is Capability.C:
            self.held.append(action)
            self.log.append(EditEvent(EventKind.SUPPRESS_HOLD, action, "await validity"))
            return
        if cap is Capability.D:
            self.log.append(EditEvent(EventKind.ABORT, action, "invalid and undelayable"))
            self.aborted = True
            return
        # unavoidable letter while the input is invalid
        if self._enter_sound_only(action):
            return
        raise self._breach(
            f"action {action.name} is {cap.value}-class, the input is invalid, and "
            "no sound continuation absorbs it"
        )

    def _enter_sound_only(self, action: Action) -> bool:
        key = _lattice_key(self.lattice)
        survival = _sound_survival_set(self.auto, key)
        closure = _insert_closure(self.auto, key)
        plan = None
        for q1, pad in _insert_paths(self.auto, key)[self._out_state]:
            landing = self.auto.transition[(q1, action.name)]
            if closure[landing] & survival:
                tail = _insert_word_into(self.auto, self.lattice, landing, survival)
                plan = (pad, tail if tail is not None else ())
                break
        if plan is None:
            return False
        pad, tail = plan
        if self.held:
            # held letters can no longer be re-emitted in input order
            self.held = []
        for name in pad:
            self._emit(Action(name), EventKind.INSERT, "sound-only padding")
        self._emit(action, EventKind.EMIT, "pass")
        for name in tail:
            self._emit(Action(name), EventKind.INSERT, "sound-only padding")
        self.sound_only = True
        return True

    def _absorb_unavoidable(self, action: Action) -> None:
        key = _lattice_key(self.lattice)
        survival = _sound_survival_set(self.auto, key)
        closure = _insert_closure(self.auto, key)
        for q1, pad in _insert_paths(self.auto, key)[self._out_state]:
            landing = self.auto.transition[(q1, action.name)]
            if closure[landing] & survival:
                tail = _insert_word_into(self.auto, self.lattice, landing, survival) or ()
                for name in pad:
                    self._emit(Action(name), EventKind.INSERT, "sound-only padding")
                self._emit(action, EventKind.EMIT, "pass")
                for name in tail:
                    self._emit(Action(name), EventKind.INSERT, "sound-only padding")
                return
        raise self._breach(
            f"sound-only mode cannot absorb unavoidable action {action.name}"
        )

    def _step_truncate(self, action: Action) -> None:
        nxt = self.auto.step(self._out_state, action)
        if nxt in self.auto.accept_finite:
            self._emit(action, EventKind.PASS, "valid")
            return
        if self.lattice.can_abort_on(action):
            self.log.append(EditEvent(EventKind.ABORT, action, "would invalidate"))
            self.aborted = True
            return
        raise self._breach(f"cannot truncate on unstoppable action {action.name}")

    def _step_insert(self, action: Action) -> None:
        plan = _insertion_plan(self.auto, self.lattice)[self._out_state].get(action.name)
        if plan is not None:
            before, after = plan
            for name in before:
                self._emit(Action(name), EventKind.INSERT, "corrective")
            self._emit(action, EventKind.PASS, "target action")
            for name in after:
                self._emit(Action(name), EventKind.INSERT, "corrective")
            return
        if self.lattice.can_abort_on(action):
            self.log.append(EditEvent(EventKind.ABORT, action, "no corrective insertion"))
            self.aborted = True
            return
        raise self._breach(f"no corrective insertion absorbs action {action.name}")

    def _step_suppress(self, action: Action) -> None:
        safe = suppression_fixed_point(self.policy, self.lattice)
        nxt = self.auto.step(self._out_state, action)
        if nxt in safe:
            self._emit(action, EventKind.PASS, "stays safe")
            return
        if self.lattice.can_suppress(action):
            self.log.append(EditEvent(EventKind.SUPPRESS_HOLD, action, "suppressed"))
            self.held.append(action)
            return
        raise self._breach(f"unsuppressible action {action.name} leaves the safe region")

    # -- finishing -----------------------------------------------------

    def finish(self) -> EnforcementResult:
        """Close the input; held actions are discarded, flags computed
        against the full input."""
        output = self.output_so_far
        full_input = FiniteTrace(tuple(self.consumed))
        sound = self.auto.evaluate_finite(output)
        if self.auto.evaluate_finite(full_input):
            if self.equivalence is Equivalence.SYNTACTIC:
                transparent = output.items == full_input.items
            elif self.equivalence is Equivalence.INSERT:
                transparent = is_subword(full_input, output)
            else:
                transparent = is_subword(output, full_input)
        else:
            transparent = True
        compliant = audit_log(tuple(self.log), self.lattice)
        return EnforcementResult(
            output=output,
            log=tuple(self.log),
            sound=sound,
            transparent=transparent,
            compliant=compliant,
        )


@lru_cache(maxsize=None)
def _insertion_plan(
    auto: PropertyAutomaton, lattice: ActionLattice
) -> dict[str, dict[str, tuple[tuple[str, ...], tuple[str, ...]]]]:
    """Per state and letter: the chosen (before, after) corrective
    insertion words landing in the insertion fixed point; shortest
    total, then latest-possible insertion, then lexicographic."""
    key = _lattice_key(lattice)
    fixed = _insertion_fixed_point_raw(auto, key)
    paths = _insert_paths(auto, key)
    into_fixed: dict[str, Optional[tuple[str, ...]]] = {}
    for q in auto.states:
        into_fixed[q] = None
        for state, word in paths[q]:
            if state in fixed:
                into_fixed[q] = word
                break
    plans: dict[str, dict[str, tuple[tuple[str, ...], tuple[str, ...]]]] = {}
    for q in auto.states:
        plans[q] = {}
        for a in auto.alphabet:
            best = None
            for q1, before in paths[q]:
                landing = auto.transition[(q1, a.name)]
                after = into_fixed[landing]
                if after is None:
                    continue
                score = (len(before) + len(after), len(before), before, after)
                if best is None or score < best[0]:
                    best = (score, (before, after))
            if best is not None:
                plans[q][a.name] = best[1]
    return plans


def _insertion_fixed_point_raw(auto, lattice_key):
    from .classify import _insertion_fixed_point

    return _insertion_fixed_point(auto, lattice_key, False)


def new_session(policy: Policy, strategy: Strategy, equivalence: Equivalence) -> EnforcerSession:
    return EnforcerSession(policy, strategy, equivalence)


def run(
    policy: Policy,
    strategy: Strategy,
    equivalence: Equivalence,
    input_trace: FiniteTrace,
) -> EnforcementResult:
    """Batch wrapper: feed the whole input, then finish.  A capability
    breach is reported in the result rather than raised."""
    session = new_session(policy, strategy, equivalence)
    try:
        for action in input_trace.items:
            session.step(action)
    except EnforcementBreachError as exc:
        partial = session.finish()
        return EnforcementResult(
            output=partial.output,
            log=partial.log,
            sound=partial.sound,
            transparent=partial.transparent,
            compliant=False,
            breach=str(exc),
        )
    return session.finish()
