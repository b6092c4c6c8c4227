"""Decision procedures for property classes and enforceability.

Structural analyses (safety, liveness, renewal, capability-aware
variants) work directly on the policy automaton.  Enforceability under
syntactic equality is decided by sweeping a bounded corpus of finite
words and lasso words through a per-sequence characterization; the
insertion and suppression regimes are decided by greatest fixed points
over automaton states.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional

from .policy import ActionLattice, Capability, Policy, PropertyAutomaton
from .traces import Action, FiniteTrace, LassoWord, Word, concat


class Equivalence(Enum):
    """How the output must relate to a valid input."""

    SYNTACTIC = "syntactic"
    INSERT = "insert"  # input must stay a subword of the output
    SUPPRESS = "suppress"  # output must stay a subword of the input


STRUCTURAL = "structural"
BOUNDED = "bounded"


@dataclass(frozen=True)
class Bounds:
    """Quantifier bounds for the bounded sweeps."""

    max_finite_len: int = 7
    max_stem_len: int = 3
    max_loop_len: int = 3

    def __post_init__(self) -> None:
        if self.max_finite_len < 0 or self.max_stem_len < 0:
            raise ValueError("bounds must be >= 0")
        if self.max_loop_len < 1:
            raise ValueError("lasso loop bound must be >= 1")

    @staticmethod
    def parse(text: str) -> "Bounds":
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError("bounds must be 'F,S,L'")
        f, s, l = (int(p) for p in parts)
        return Bounds(f, s, l)

    def describe(self) -> str:
        return f"{self.max_finite_len},{self.max_stem_len},{self.max_loop_len}"


@dataclass(frozen=True)
class Verdict:
    decided: bool
    value: bool
    witness: Optional[Word] = None
    method: str = STRUCTURAL
    reason: str = ""

    def __bool__(self) -> bool:
        return self.decided and self.value


def _true(method: str = STRUCTURAL, reason: str = "") -> Verdict:
    return Verdict(True, True, None, method, reason)


def _false(witness: Optional[Word], method: str = STRUCTURAL, reason: str = "") -> Verdict:
    return Verdict(True, False, witness, method, reason)


UNDECIDED = Verdict(False, False, None, STRUCTURAL, "outside the decided fragment")


# -- plain property classes -------------------------------------------------


def is_safety(policy: Policy) -> Verdict:
    """Every invalid word has a prefix from which validity is
    unreachable."""
    auto = policy.prop
    doomed = auto.doomed_states()
    for q in sorted(auto.reachable_states(), key=auto.states.index):
        if q not in auto.accept_finite and q not in doomed:
            from .policy import _path_words

            return _false(_path_words(auto)[q], reason=f"invalid but recoverable at state {q}")
    for cycle in auto.cycle_sets():
        if not auto.cycle_accepts(cycle) and not cycle <= doomed:
            return _false(
                auto.lasso_into_cycle(cycle),
                reason="rejected cycle never enters a doomed region",
            )
    return _true()


def is_liveness(policy: Policy) -> Verdict:
    """Every reachable state still has some valid extension."""
    auto = policy.prop
    doomed = auto.doomed_states()
    stuck = sorted(auto.reachable_states() & doomed, key=auto.states.index)
    if stuck:
        from .policy import _path_words

        return _false(_path_words(auto)[stuck[0]], reason=f"state {stuck[0]} has no valid extension")
    return _true()


def is_renewal(policy: Policy) -> Verdict:
    """Infinite validity coincides with recurring finite validity: a
    reachable cycle is accepted exactly when it contains a
    finitely-accepting state."""
    auto = policy.prop
    for cycle in auto.cycle_sets():
        accepts = auto.cycle_accepts(cycle)
        recurs = bool(cycle & auto.accept_finite)
        if accepts != recurs:
            return _false(
                auto.lasso_into_cycle(cycle),
                reason=f"cycle {sorted(cycle)} accepted={accepts} but recurring validity={recurs}",
            )
    return _true()


def is_lattice_safety(policy: Policy, lattice: ActionLattice) -> Verdict:
    """Safety whose violations are flagged at a stoppable boundary: the
    first doomed step leaves a valid state on a suppressible or
    controllable action."""
    auto = policy.prop
    if not auto.is_reasonable():
        return _false(FiniteTrace(), reason="the empty word is invalid and has no boundary")
    base = is_safety(policy)
    if not base.value:
        return base
    doomed = auto.doomed_states()
    from .policy import _path_words

    for q in sorted(auto.reachable_states(), key=auto.states.index):
        if q in doomed:
            continue
        for a in policy.alphabet:
            nxt = auto.transition[(q, a.name)]
            if nxt not in doomed:
                continue
            if q not in auto.accept_finite:
                return _false(
                    concat(_path_words(auto)[q], FiniteTrace((a,))),
                    reason=f"doom entered from invalid state {q}",
                )
            if not lattice.can_abort_on(a):
                return _false(
                    concat(_path_words(auto)[q], FiniteTrace((a,))),
                    reason=f"doom entered on unstoppable action {a.name}",
                )
    return _true()


def is_lattice_renewal(policy: Policy, lattice: ActionLattice, bounds: Bounds) -> Verdict:
    """Bounded check: a word is valid exactly when every prefix reaches
    a valid checkpoint through controllable letters only."""
    for word in _sweep_words(policy, bounds):
        if not _lattice_renewal_holds(policy, lattice, word, bounds):
            return _false(word, method=BOUNDED)
    return _true(method=BOUNDED)


def _lattice_renewal_holds(
    policy: Policy, lattice: ActionLattice, word: Word, bounds: Bounds
) -> bool:
    auto = policy.prop
    controllable = lattice.members(Capability.C)
    if isinstance(word, FiniteTrace):
        letters = word.items
        horizon = search = len(letters)
        valid_word = auto.evaluate_finite(word)
    else:
        n = len(auto.states)
        horizon = len(word.stem) + len(word.loop) * (n + 1)
        search = horizon + len(word.loop) * (n + 1)
        letters = word.unroll(search).items
        valid_word = auto.evaluate_infinite(word)

    state = auto.initial
    valid_at = [state in auto.accept_finite]
    for a in letters:
        state = auto.step(state, a)
        valid_at.append(state in auto.accept_finite)

    def checkpoint_reachable(i: int) -> bool:
        # a valid prefix at or beyond i, every step to it controllable
        k = i
        while True:
            if valid_at[k]:
                return True
            if k >= search or letters[k] not in controllable:
                return False
            k += 1

    rhs = all(checkpoint_reachable(i) for i in range(horizon + 1))
    return valid_word == rhs


# -- per-state analyses ------------------------------------------------------


@lru_cache(maxsize=None)
def _accepting_cycle_states(auto: PropertyAutomaton) -> frozenset[str]:
    """States lying on some accepted cycle."""
    out: set[str] = set()
    from .policy import _all_cycle_sets

    for cycle in _all_cycle_sets(auto):
        if auto.cycle_accepts(cycle):
            out.update(cycle)
    return frozenset(out)


@lru_cache(maxsize=None)
def _alive_infinite(auto: PropertyAutomaton) -> frozenset[str]:
    """States from which some accepted cycle is reachable."""
    targets = _accepting_cycle_states(auto)
    from .policy import _reach_from

    reach = _reach_from(auto)
    return frozenset(q for q in auto.states if reach[q] & targets)


@lru_cache(maxsize=None)
def _unique_finite_completion(auto: PropertyAutomaton) -> dict[str, Optional[FiniteTrace]]:
    """Per state: the single finite word leading to validity, when the
    valid continuations are exactly one finite word and no infinite
    one."""
    from .policy import _reach_from

    reach = _reach_from(auto)
    alive_inf = _alive_infinite(auto)
    out: dict[str, Optional[FiniteTrace]] = {}
    for q in auto.states:
        if q in alive_inf:
            out[q] = None
            continue
        useful = frozenset(
            p for p in reach[q] if reach[p] & auto.accept_finite
        )
        if not useful:
            out[q] = None
            continue
        # a cycle inside the useful region means infinitely many words
        if _has_internal_cycle(auto, useful):
            out[q] = None
            continue
        words = _words_to_acceptance(auto, q, useful)
        out[q] = words[0] if len(words) == 1 else None
    return out


def _has_internal_cycle(auto: PropertyAutomaton, region: frozenset[str]) -> bool:
    color: dict[str, int] = {}

    def visit(q: str) -> bool:
        color[q] = 1
        for a in auto.alphabet:
            dst = auto.transition[(q, a.name)]
            if dst not in region:
                continue
            if color.get(dst) == 1:
                return True
            if dst not in color and visit(dst):
                return True
        color[q] = 2
        return False

    return any(visit(q) for q in region if q not in color)


def _words_to_acceptance(
    auto: PropertyAutomaton, start: str, region: frozenset[str], cap: int = 2
) -> list[FiniteTrace]:
    """Up to ``cap`` words over the acyclic region from start into
    finite acceptance."""
    found: list[FiniteTrace] = []

    def walk(q: str, word: tuple[Action, ...]) -> None:
        if len(found) >= cap:
            return
        if q in auto.accept_finite:
            found.append(FiniteTrace(word))
            if len(found) >= cap:
                return
        for a in auto.alphabet:
            dst = auto.transition[(q, a.name)]
            if dst in region:
                walk(dst, word + (a,))

    walk(start, ())
    return found


@lru_cache(maxsize=None)
def _unique_lasso_completion(auto: PropertyAutomaton) -> dict[str, Optional[LassoWord]]:
    """Per state: the single infinite continuation that is valid, when
    no finite continuation is valid and exactly one infinite one is."""
    from .policy import _reach_from

    reach = _reach_from(auto)
    alive_inf = _alive_infinite(auto)
    out: dict[str, Optional[LassoWord]] = {}
    for q in auto.states:
        if reach[q] & auto.accept_finite or q not in alive_inf:
            out[q] = None
            continue
        path: list[Action] = []
        seen: dict[str, int] = {q: 0}
        state = q
        result: Optional[LassoWord] = None
        while True:
            options = [a for a in auto.alphabet if auto.transition[(state, a.name)] in alive_inf]
            if len(options) != 1:
                break
            a = options[0]
            state = auto.transition[(state, a.name)]
            path.append(a)
            if state in seen:
                knee = seen[state]
                candidate = LassoWord(
                    FiniteTrace(tuple(path[:knee])), FiniteTrace(tuple(path[knee:]))
                )
                if _accepts_from(auto, q, candidate):
                    result = candidate
                break
            seen[state] = len(path)
        out[q] = result
    return out


def _accepts_from(auto: PropertyAutomaton, start: str, w: LassoWord) -> bool:
    return auto.cycle_accepts(auto.infinity_set(w, start=start))


def unique_completion_tail(
    policy: Policy, lattice: ActionLattice, prefix: FiniteTrace
) -> Optional[FiniteTrace]:
    """The forced finite completion after ``prefix``: defined when the
    valid continuations are exactly one finite word whose letters can
    all be inserted by the monitor."""
    auto = policy.prop
    state = auto.run(prefix)
    tail = _unique_finite_completion(auto).get(state)
    if tail is None or len(tail) == 0:
        return None
    if not all(lattice.can_insert(a) for a in tail.items):
        return None
    return tail


def unique_completion(
    policy: Policy, lattice: ActionLattice, prefix: FiniteTrace
) -> Optional[Action]:
    """First action of the forced completion, if any (the executable
    form of the single-valid-extension detector)."""
    tail = unique_completion_tail(policy, lattice, prefix)
    return tail.items[0] if tail is not None else None


def is_forced_completion_case(policy: Policy, lattice: ActionLattice, word: Word) -> bool:
    """The sequence is valid and owns a stoppable prefix whose only
    valid continuation is the sequence itself, over insertable letters."""
    auto = policy.prop
    if isinstance(word, FiniteTrace):
        if not auto.evaluate_finite(word):
            return False
        state = auto.initial
        completions = _unique_finite_completion(auto)
        for m in range(1, len(word) + 1):
            a = word.items[m - 1]
            state = auto.step(state, a)
            if not lattice.can_abort_on(a):
                continue
            tail = completions.get(state)
            if tail is None:
                continue
            if word.items[m:] == tail.items and all(lattice.can_insert(x) for x in tail.items):
                return True
        return False
    if not auto.evaluate_infinite(word):
        return False
    completions_inf = _unique_lasso_completion(auto)
    n = len(auto.states)
    horizon = len(word.stem) + len(word.loop) * (n + 1)
    state = auto.initial
    for m in range(1, horizon + 1):
        a = word.letter(m - 1)
        state = auto.step(state, a)
        if not lattice.can_abort_on(a):
            continue
        tail = completions_inf.get(state)
        if tail is None:
            continue
        if _suffix_lasso(word, m) == tail and all(
            lattice.can_insert(x) for x in tail.stem.items + tail.loop.items
        ):
            return True
    return False


# -- capability fixed points -------------------------------------------------


def _lattice_key(lattice: ActionLattice) -> tuple[tuple[str, str], ...]:
    return tuple((a.name, c.value) for a, c in lattice.assignment)


@lru_cache(maxsize=None)
def _insert_closure(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...]
) -> dict[str, frozenset[str]]:
    insertable = {name for name, cap in lattice_key if cap in ("I", "C")}
    out: dict[str, frozenset[str]] = {}
    for q in auto.states:
        seen = {q}
        frontier = [q]
        while frontier:
            p = frontier.pop()
            for a in auto.alphabet:
                if a.name not in insertable:
                    continue
                dst = auto.transition[(p, a.name)]
                if dst not in seen:
                    seen.add(dst)
                    frontier.append(dst)
        out[q] = frozenset(seen)
    return out


def insert_closure(auto: PropertyAutomaton, lattice: ActionLattice) -> dict[str, frozenset[str]]:
    return _insert_closure(auto, _lattice_key(lattice))


@lru_cache(maxsize=None)
def _sound_survival_set(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...]
) -> frozenset[str]:
    """Greatest set of valid states in which the monitor can absorb any
    unavoidable letter, padding with insertable letters as needed."""
    closure = _insert_closure(auto, lattice_key)
    forced = {name for name, cap in lattice_key if cap in ("O", "I")}
    current = set(auto.accept_finite)
    while True:
        keep = set()
        for q in current:
            ok = True
            for name in forced:
                landings = {auto.transition[(p, name)] for p in closure[q]}
                if not any(closure[l] & current for l in landings):
                    ok = False
                    break
            if ok:
                keep.add(q)
        if keep == current:
            return frozenset(keep)
        current = keep


def sound_survival_set(policy: Policy, lattice: ActionLattice) -> frozenset[str]:
    return _sound_survival_set(policy.prop, _lattice_key(lattice))


def _sound_escape(
    auto: PropertyAutomaton, lattice: ActionLattice, state: str, letter: Action
) -> bool:
    """Can the monitor emit insertable padding, then the unavoidable
    letter, and land in the sound-survival region?"""
    key = _lattice_key(lattice)
    closure = _insert_closure(auto, key)
    survival = _sound_survival_set(auto, key)
    landings = {auto.transition[(p, letter.name)] for p in closure[state]}
    return any(closure[l] & survival for l in landings)


def _absorb_landing_states(
    auto: PropertyAutomaton, lattice_key, out_state: str, letter: Action
) -> frozenset[str]:
    closure = _insert_closure(auto, lattice_key)
    landings: set[str] = set()
    for q in closure[out_state]:
        landings.update(closure[auto.transition[(q, letter.name)]])
    return frozenset(landings)


@lru_cache(maxsize=None)
def _dead_mode_wins(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...]
) -> frozenset[tuple[str, str]]:
    """Greatest set of (input state, output state) pairs from which a
    monitor that has given up transparency survives every future: the
    output stays valid at stops, the input never re-validates, and each
    arriving letter is dropped, absorbed with insertable padding, or
    met by an abort once the input is beyond repair."""
    lattice = ActionLattice(tuple((Action(n), Capability(c)) for n, c in lattice_key))
    from .oracle import _distance_to_acceptance

    dist = _distance_to_acceptance(auto)
    pairs = {(p, q) for p in auto.states for q in auto.states}
    current = {
        (p, q) for (p, q) in pairs if q in auto.accept_finite and p not in auto.accept_finite
    }
    while True:
        keep = set()
        for p, q in current:
            ok = True
            for a in auto.alphabet:
                p_next = auto.transition[(p, a.name)]
                choice = False
                if lattice.can_suppress(a) and (p_next, q) in current:
                    choice = True
                if not choice:
                    choice = any(
                        (p_next, landing) in current
                        for landing in _absorb_landing_states(auto, lattice_key, q, a)
                    )
                if not choice and lattice.can_abort_on(a):
                    choice = q in auto.accept_finite and dist[p_next] is None
                if not choice:
                    ok = False
                    break
            if ok:
                keep.add((p, q))
        if keep == current:
            return frozenset(keep)
        current = keep


def _dead_mode_entry(
    auto: PropertyAutomaton,
    lattice: ActionLattice,
    in_state: str,
    out_state: str,
    letter: Action,
) -> bool:
    """Absorb an unavoidable letter, giving up transparency for good."""
    key = _lattice_key(lattice)
    wins = _dead_mode_wins(auto, key)
    p_next = auto.transition[(in_state, letter.name)]
    return any(
        (p_next, landing) in wins
        for landing in _absorb_landing_states(auto, key, out_state, letter)
    )


@lru_cache(maxsize=None)
def _insertion_fixed_point(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...], stationary: bool
) -> frozenset[str]:
    """Valid states from which every next action can be accommodated by
    insertions (after it only, when stationary; around it otherwise)."""
    closure = _insert_closure(auto, lattice_key)
    current = set(auto.accept_finite)
    while True:
        keep = set()
        for q in current:
            ok = True
            for a in auto.alphabet:
                if stationary:
                    landing = auto.transition[(q, a.name)]
                    reached = closure[landing]
                else:
                    reached = set()
                    for p in closure[q]:
                        reached |= closure[auto.transition[(p, a.name)]]
                if not (reached & current):
                    ok = False
                    break
            if ok:
                keep.add(q)
        if keep == current:
            return frozenset(keep)
        current = keep


def insertion_fixed_point(
    policy: Policy, lattice: ActionLattice, stationary: bool
) -> frozenset[str]:
    return _insertion_fixed_point(policy.prop, _lattice_key(lattice), stationary)


@lru_cache(maxsize=None)
def _suppression_fixed_point(
    auto: PropertyAutomaton, lattice_key: tuple[tuple[str, str], ...]
) -> frozenset[str]:
    """Valid states closed under every unsuppressible letter."""
    forced = {name for name, cap in lattice_key if cap in ("O", "I")}
    current = set(auto.accept_finite)
    while True:
        keep = {
            q
            for q in current
            if all(auto.transition[(q, name)] in current for name in forced)
        }
        if keep == current:
            return frozenset(keep)
        current = keep


def suppression_fixed_point(policy: Policy, lattice: ActionLattice) -> frozenset[str]:
    return _suppression_fixed_point(policy.prop, _lattice_key(lattice))


# -- per-sequence enforceability (syntactic equality) ------------------------


@dataclass(frozen=True)
class _Run:
    letters: tuple[Action, ...]
    states: tuple[str, ...]  # states[i] after i letters
    valid: tuple[bool, ...]
    horizon: int  # prefixes examined as monitoring points
    search: int  # prefixes available as checkpoints
    word_valid: bool


def _run_of(policy: Policy, word: Word) -> _Run:
    auto = policy.prop
    if isinstance(word, FiniteTrace):
        letters = word.items
        horizon = search = len(letters)
        word_valid = auto.evaluate_finite(word)
    else:
        n = len(auto.states)
        horizon = len(word.stem) + len(word.loop) * (n + 1)
        search = horizon + len(word.loop) * (n + 1)
        letters = word.unroll(search).items
        word_valid = auto.evaluate_infinite(word)
    states = [auto.initial]
    for a in letters:
        states.append(auto.step(states[-1], a))
    valid = tuple(q in auto.accept_finite for q in states)
    return _Run(tuple(letters), tuple(states), valid, horizon, search, word_valid)


def _first_illegality(run: _Run, lattice: ActionLattice) -> int:
    """First prefix length whose invalid endpoint ends on a
    non-controllable letter, or one past the search bound."""
    for i in range(1, run.search + 1):
        if not run.valid[i] and lattice.class_of(run.letters[i - 1]) is not Capability.C:
            return i
    return run.search + 1


def _renewal_side(run: _Run, lattice: ActionLattice, word: Word) -> bool:
    violation = _first_illegality(run, lattice)
    if isinstance(word, FiniteTrace):
        return run.word_valid and violation > len(run.letters)
    for i in range(run.horizon + 1):
        if not any(run.valid[k] and violation > k for k in range(i, run.search + 1)):
            return False
    return True


def _suffix_lasso(word: LassoWord, m: int) -> LassoWord:
    """The remainder of the lasso after its first m letters."""
    if m <= len(word.stem):
        return LassoWord(word.stem[m:], word.loop)
    offset = (m - len(word.stem)) % len(word.loop)
    rotated = FiniteTrace(word.loop.items[offset:] + word.loop.items[:offset])
    return LassoWord(FiniteTrace(), rotated)


def _completion_matches(policy: Policy, lattice: ActionLattice, run: _Run, word: Word, m: int) -> bool:
    auto = policy.prop
    state = run.states[m]
    if isinstance(word, FiniteTrace):
        tail = _unique_finite_completion(auto).get(state)
        if tail is None or not all(lattice.can_insert(a) for a in tail.items):
            return False
        return run.letters[m:] == tail.items
    tail_inf = _unique_lasso_completion(auto).get(state)
    if tail_inf is None:
        return False
    if not all(lattice.can_insert(a) for a in tail_inf.stem.items + tail_inf.loop.items):
        return False
    return _suffix_lasso(word, m) == tail_inf


def _forced_side(policy: Policy, lattice: ActionLattice, run: _Run, word: Word) -> bool:
    violation = _first_illegality(run, lattice)
    for m in range(1, run.horizon + 1):
        if m >= violation:
            break
        if not lattice.can_abort_on(run.letters[m - 1]):
            continue
        if _completion_matches(policy, lattice, run, word, m):
            return True
    return False


def _post_commit_survives(
    policy: Policy, lattice: ActionLattice, run: _Run, i: int, tail: FiniteTrace
) -> bool:
    """After predictively emitting the forced completion, the remaining
    input letters must be consumable: matching letters were already
    emitted, suppressible ones are dropped, and the first unavoidable
    divergent letter must be absorbable soundly."""
    auto = policy.prop
    state = run.states[i]
    for a in tail.items:
        state = auto.step(state, a)
    j, ahead = i, list(tail.items)
    while j < len(run.letters) and ahead and run.letters[j] == ahead[0]:
        ahead.pop(0)
        j += 1
    for k in range(j, run.search):
        letter = run.letters[k]
        if lattice.can_suppress(letter):
            continue
        return _sound_escape(auto, lattice, state, letter)
    return True


def _handleable(policy: Policy, lattice: ActionLattice, run: _Run, word: Word) -> bool:
    """Does the canonical monitor survive this input: hold through
    controllable invalidity, flush at valid points, commit forced
    completions, abort on suppressible letters, fall back to sound-only
    output when an unavoidable letter arrives on a dead input."""
    auto = policy.prop
    completions = _unique_finite_completion(auto)
    flush_state = auto.initial
    for i in range(1, run.horizon + 1):
        if run.valid[i]:
            flush_state = run.states[i]
            continue
        letter = run.letters[i - 1]
        cap = lattice.class_of(letter)
        tail = completions.get(run.states[i])
        commit_ready = (
            tail is not None
            and len(tail) > 0
            and all(lattice.can_insert(a) for a in tail.items)
        )
        if commit_ready and lattice.can_abort_on(letter):
            return _post_commit_survives(policy, lattice, run, i, tail)
        if cap is Capability.C:
            continue
        if run.word_valid:
            return False
        if cap is Capability.D:
            return True
        return _dead_mode_entry(auto, lattice, run.states[i - 1], flush_state, letter)
    return True


def enforceable_on(policy: Policy, lattice: ActionLattice, word: Word) -> bool:
    """Per-sequence enforceability characterization under syntactic
    equality: validity must coincide with reachability of valid
    checkpoints through controllable stretches or a forced completion,
    and the canonical monitor must survive the sequence."""
    policy.check_word(word)
    run = _run_of(policy, word)
    rhs = _renewal_side(run, lattice, word) or _forced_side(policy, lattice, run, word)
    if run.word_valid != rhs:
        return False
    return _handleable(policy, lattice, run, word)


# -- bounded sweeps ----------------------------------------------------------


def _sweep_words(policy: Policy, bounds: Bounds) -> Iterable[Word]:
    from .oracle import enumerate_finite, enumerate_lassos

    yield from enumerate_finite(policy.alphabet, bounds.max_finite_len)
    yield from enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len)


@dataclass(frozen=True)
class ExactSweep:
    finite_ok: bool
    lasso_ok: bool
    witness: Optional[Word]
    reasonable: bool

    @property
    def value(self) -> bool:
        return self.reasonable and self.finite_ok and self.lasso_ok


def exact_sweep(policy: Policy, lattice: ActionLattice, bounds: Bounds) -> ExactSweep:
    if not policy.is_reasonable():
        return ExactSweep(False, False, FiniteTrace(), False)
    finite_ok, lasso_ok, witness = True, True, None
    from .oracle import enumerate_finite, enumerate_lassos

    for word in enumerate_finite(policy.alphabet, bounds.max_finite_len):
        if not enforceable_on(policy, lattice, word):
            finite_ok, witness = False, word
            break
    if finite_ok:
        for word in enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len):
            if not enforceable_on(policy, lattice, word):
                lasso_ok, witness = False, word
                break
    return ExactSweep(finite_ok, lasso_ok, witness, True)


def enforceable_exact(policy: Policy, lattice: ActionLattice, bounds: Bounds) -> Verdict:
    """Bounded decision of enforceability with syntactic transparency."""
    sweep = exact_sweep(policy, lattice, bounds)
    if not sweep.reasonable:
        return _false(FiniteTrace(), method=BOUNDED, reason="the empty word is invalid")
    if sweep.value:
        return _true(method=BOUNDED)
    return _false(sweep.witness, method=BOUNDED)


def enforceable_insertion(
    policy: Policy, lattice: ActionLattice, stationary: bool, bounds: Bounds
) -> Verdict:
    """Enforceability when transparency only demands the input stay a
    subword of the output."""
    auto = policy.prop
    if not auto.is_reasonable():
        return _false(FiniteTrace(), reason="the empty word is invalid")
    caps = {lattice.class_of(a) for a in policy.alphabet}
    if caps == {Capability.D}:
        base = is_safety(policy)
        reason = "suppression-only monitor: decided by the safety class"
        return Verdict(True, base.value, base.witness, base.method, reason)
    if caps == {Capability.I}:
        fixed = insertion_fixed_point(policy, lattice, stationary)
        if auto.initial in fixed:
            return _true(reason="initial state inside the insertion fixed point")
        return _false(None, reason="initial state outside the insertion fixed point")
    return UNDECIDED


def enforceable_suppression(policy: Policy, lattice: ActionLattice, bounds: Bounds) -> Verdict:
    """Enforceability when transparency only demands the output stay a
    subword of the input."""
    auto = policy.prop
    if not auto.is_reasonable():
        return _false(FiniteTrace(), reason="the empty word is invalid")
    caps = {lattice.class_of(a) for a in policy.alphabet}
    if caps <= {Capability.D, Capability.C}:
        return _true(reason="every action is suppressible; the empty output is always sound")
    if caps <= {Capability.D, Capability.O}:
        fixed = suppression_fixed_point(policy, lattice)
        if auto.initial in fixed:
            return _true(reason="initial state inside the suppression fixed point")
        return _false(None, reason="an unsuppressible path breaks validity")
    return UNDECIDED
