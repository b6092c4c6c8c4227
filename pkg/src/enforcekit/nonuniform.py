"""Enforceability when the monitor knows the set of possible
executions.

The characterization is the uniform one with every quantified sequence
filtered by membership in the possible-execution recognizer: legality
is only demanded at possible prefixes, dooming and forced completions
range over continuations that are both valid and possible.  Joint
analyses run on the product of the two automata, with infinite-word
sides checked over the bounded lasso corpus.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .classify import (
    Bounds,
    ExactSweep,
    Verdict,
    BOUNDED,
    _absorb_landing_states,
    _lattice_key,
    _post_commit_survives,
    _run_of,
    Capability,
)
from .policy import ActionLattice, Policy, PropertyAutomaton
from .traces import FiniteTrace, Word


@lru_cache(maxsize=None)
def _joint_finite_completions(
    auto: PropertyAutomaton, possible: PropertyAutomaton, horizon: int
) -> dict[tuple[str, str], Optional[FiniteTrace]]:
    """Per product state: the single bounded continuation that is valid
    and possible, when no other (and no such lasso) exists."""
    from .oracle import enumerate_finite, enumerate_lassos

    words = list(enumerate_finite(auto.alphabet, horizon))
    lassos = list(enumerate_lassos(auto.alphabet, max(1, horizon // 2), max(1, horizon // 2)))
    out: dict[tuple[str, str], Optional[FiniteTrace]] = {}
    for p in auto.states:
        for s in possible.states:
            found: list[FiniteTrace] = []
            for word in words:
                if len(found) > 1:
                    break
                if (
                    auto.run(word, start=p) in auto.accept_finite
                    and possible.run(word, start=s) in possible.accept_finite
                ):
                    found.append(word)
            has_lasso = any(
                auto.cycle_accepts(auto.infinity_set(w, start=p))
                and possible.cycle_accepts(possible.infinity_set(w, start=s))
                for w in lassos
            )
            out[(p, s)] = found[0] if len(found) == 1 and not has_lasso else None
    return out


def _joint_doomed(
    auto: PropertyAutomaton,
    possible: PropertyAutomaton,
    pair: tuple[str, str],
    horizon: int,
) -> bool:
    from .oracle import _joint_distance

    dist = _joint_distance(auto, possible)[pair]
    if dist is not None:
        return False
    from .oracle import enumerate_lassos

    return not any(
        auto.cycle_accepts(auto.infinity_set(w, start=pair[0]))
        and possible.cycle_accepts(possible.infinity_set(w, start=pair[1]))
        for w in enumerate_lassos(auto.alphabet, max(1, horizon // 2), max(1, horizon // 2))
    )


@lru_cache(maxsize=None)
def _restricted_dead_wins(
    auto: PropertyAutomaton,
    possible: PropertyAutomaton,
    lattice_key: tuple[tuple[str, str], ...],
    horizon: int,
) -> frozenset[tuple[str, str, str]]:
    """Greatest set of (input state, possible-set state, output state)
    triples at which a transparency-free monitor survives: the output
    is valid whenever the input may end, the input is invalid at every
    possible end, and each possible letter is dropped, absorbed, or met
    by an abort once no valid possible continuation remains."""
    from .classify import ActionLattice as _AL
    from .oracle import _distance_to_acceptance
    from .traces import Action as _Action

    lattice = _AL(tuple((_Action(n), Capability(c)) for n, c in lattice_key))
    s_dist = _distance_to_acceptance(possible)

    def stop_ok(p: str, s: str, q: str) -> bool:
        if s not in possible.accept_finite:
            return True
        return q in auto.accept_finite and p not in auto.accept_finite

    current = {
        (p, s, q)
        for p in auto.states
        for s in possible.states
        for q in auto.states
        if stop_ok(p, s, q)
    }
    while True:
        keep = set()
        for p, s, q in current:
            ok = True
            for a in auto.alphabet:
                s_next = possible.transition[(s, a.name)]
                if s_dist[s_next] is None:
                    continue  # this letter can no longer occur
                p_next = auto.transition[(p, a.name)]
                choice = False
                if lattice.can_suppress(a) and (p_next, s_next, q) in current:
                    choice = True
                if not choice:
                    choice = any(
                        (p_next, s_next, landing) in current
                        for landing in _absorb_landing_states(auto, lattice_key, q, a)
                    )
                if not choice and lattice.can_abort_on(a):
                    choice = q in auto.accept_finite and _joint_doomed(
                        auto, possible, (p_next, s_next), horizon
                    )
                if not choice:
                    ok = False
                    break
            if ok:
                keep.add((p, s, q))
        if keep == current:
            return frozenset(keep)
        current = keep


def _restricted_on(policy: Policy, lattice: ActionLattice, word: Word, bounds: Bounds) -> bool:
    """Per-sequence check relative to the possible-execution set."""
    auto = policy.prop
    possible = policy.possible
    assert possible is not None
    run = _run_of(policy, word)
    s_states = [possible.initial]
    for a in run.letters:
        s_states.append(possible.step(s_states[-1], a))
    s_member = [q in possible.accept_finite for q in s_states]

    horizon = bounds.max_finite_len
    completions = _joint_finite_completions(auto, possible, horizon)

    def violation_index() -> int:
        for i in range(1, run.search + 1):
            if (
                not run.valid[i]
                and s_member[i]
                and lattice.class_of(run.letters[i - 1]) is not Capability.C
            ):
                return i
        return run.search + 1

    violation = violation_index()

    if isinstance(word, FiniteTrace):
        renewal = run.word_valid and violation > len(run.letters)
    else:
        renewal = all(
            any(run.valid[k] and violation > k for k in range(i, run.search + 1))
            for i in range(run.horizon + 1)
        )

    def forced() -> bool:
        # joint unique completions are finite words, so only finite
        # sequences can be the committed target
        if not isinstance(word, FiniteTrace):
            return False
        for m in range(1, run.horizon + 1):
            if m >= violation:
                break
            if not lattice.can_abort_on(run.letters[m - 1]):
                continue
            tail = completions[(run.states[m], s_states[m])]
            if tail is None or not all(lattice.can_insert(a) for a in tail.items):
                continue
            if run.letters[m:] == tail.items:
                return True
        return False

    rhs = renewal or forced()
    if run.word_valid != rhs:
        return False

    # canonical-monitor survival with possibility-aware exemptions
    flush_state = auto.initial
    for i in range(1, run.horizon + 1):
        if run.valid[i]:
            flush_state = run.states[i]
            continue
        if not s_member[i]:
            continue  # the input cannot end here; no reaction is forced
        letter = run.letters[i - 1]
        cap = lattice.class_of(letter)
        tail = completions[(run.states[i], s_states[i])]
        if (
            tail is not None
            and len(tail) > 0
            and all(lattice.can_insert(a) for a in tail.items)
            and lattice.can_abort_on(letter)
        ):
            return _post_commit_survives(policy, lattice, run, i, tail)
        if cap is Capability.C:
            continue
        if run.word_valid:
            return False
        if cap is Capability.D:
            return True
        wins = _restricted_dead_wins(auto, possible, _lattice_key(lattice), horizon)
        return any(
            (run.states[i], s_states[i], landing) in wins
            for landing in _absorb_landing_states(auto, _lattice_key(lattice), flush_state, letter)
        )
    return True


def restricted_exact_sweep(policy: Policy, lattice: ActionLattice, bounds: Bounds) -> ExactSweep:
    possible = policy.possible
    if possible is None:
        from .classify import exact_sweep

        return exact_sweep(policy, lattice, bounds)
    empty_possible = possible.initial in possible.accept_finite
    if empty_possible and not policy.is_reasonable():
        # an empty input can occur, and its output must already be valid
        return ExactSweep(False, False, FiniteTrace(), False)
    from .oracle import enumerate_finite, enumerate_lassos

    finite_ok, lasso_ok, witness = True, True, None
    for word in enumerate_finite(policy.alphabet, bounds.max_finite_len):
        if not possible.evaluate_finite(word):
            continue
        if not _restricted_on(policy, lattice, word, bounds):
            finite_ok, witness = False, word
            break
    if finite_ok:
        for word in enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len):
            if not possible.evaluate_infinite(word):
                continue
            if not _restricted_on(policy, lattice, word, bounds):
                lasso_ok, witness = False, word
                break
    return ExactSweep(finite_ok, lasso_ok, witness, True)


def enforceable_exact_restricted(
    policy: Policy, lattice: ActionLattice, bounds: Bounds
) -> Verdict:
    """Bounded decision of enforceability in a nonuniform context."""
    sweep = restricted_exact_sweep(policy, lattice, bounds)
    if sweep.value:
        return Verdict(True, True, None, BOUNDED)
    reason = "restricted sweep found a witness" if sweep.reasonable else "the empty input is possible but invalid"
    return Verdict(True, False, sweep.witness, BOUNDED, reason)
