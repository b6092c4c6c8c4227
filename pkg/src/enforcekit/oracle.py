"""Independent ground truth: exhaustive enumeration, direct evaluation
of the property-class definitions, and a monitor-vs-adversary game that
decides bounded enforceability without the classifier's analyses.

The game explores finite inputs only; infinite-word obligations are the
classifier's bounded lasso sweep.  Its verdicts are cross-checked
against the classifier and against executed enforcement sessions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional

from .classify import (
    Bounds,
    Equivalence,
    Verdict,
    BOUNDED,
    _insert_closure,
    _lattice_key,
    _sound_survival_set,
    _unique_finite_completion,
)
from .policy import ActionLattice, Capability, Policy, PropertyAutomaton
from .traces import Action, FiniteTrace, LassoWord, Word


class GameBudgetError(RuntimeError):
    """The game memo table outgrew its configured cap."""


def enumerate_finite(alphabet: Iterable[Action], n: int) -> Iterator[FiniteTrace]:
    """All words of length <= n in shortlex order."""
    letters = tuple(sorted(set(alphabet), key=lambda a: a.name))
    if n < 0:
        raise ValueError("length bound must be >= 0")
    layer: list[tuple[Action, ...]] = [()]
    for _ in range(n + 1):
        for word in layer:
            yield FiniteTrace(word)
        layer = [word + (a,) for word in layer for a in letters]
        if not letters:
            break


def enumerate_lassos(alphabet: Iterable[Action], p: int, q: int) -> Iterator[LassoWord]:
    """All lasso words with stem <= p and loop <= q, deduplicated up to
    semantic equality, in (stem, loop) shortlex order."""
    if q < 1:
        raise ValueError("loop bound must be >= 1")
    letters = tuple(sorted(set(alphabet), key=lambda a: a.name))
    if not letters:
        return
    seen: set[LassoWord] = set()
    for stem in enumerate_finite(letters, p):
        for loop in enumerate_finite(letters, q):
            if len(loop) == 0:
                continue
            lasso = LassoWord(stem, loop)
            canonical = lasso.canonical()
            if canonical in seen:
                continue
            seen.add(canonical)
            yield lasso


SAFETY = "safety"
LIVENESS = "liveness"
RENEWAL = "renewal"


def _bounded_extensions(
    policy: Policy, prefix: FiniteTrace, bounds: Bounds
) -> Iterator[Word]:
    """All enumerated words extending the prefix, the prefix included."""
    for rest in enumerate_finite(policy.alphabet, bounds.max_finite_len):
        yield FiniteTrace(prefix.items + rest.items)
    for rest in enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len):
        yield LassoWord(FiniteTrace(prefix.items + rest.stem.items), rest.loop)


def brute_classify(policy: Policy, which: str, bounds: Bounds) -> Verdict:
    """Evaluate a class definition with every quantifier bounded."""
    if which == SAFETY:
        return _brute_safety(policy, bounds)
    if which == LIVENESS:
        return _brute_liveness(policy, bounds)
    if which == RENEWAL:
        return _brute_renewal(policy, bounds)
    raise ValueError(f"unknown class {which!r}")


def _sweep(policy: Policy, bounds: Bounds) -> Iterator[Word]:
    yield from enumerate_finite(policy.alphabet, bounds.max_finite_len)
    yield from enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len)


def _brute_safety(policy: Policy, bounds: Bounds) -> Verdict:
    for word in _sweep(policy, bounds):
        if policy.evaluate(word):
            continue
        doomed_prefix = False
        for prefix in _prefixes(word, bounds):
            if all(
                not policy.evaluate(ext)
                for ext in _bounded_extensions(policy, prefix, bounds)
            ):
                doomed_prefix = True
                break
        if not doomed_prefix:
            return Verdict(True, False, word, BOUNDED, "invalid word with no doomed prefix")
    return Verdict(True, True, None, BOUNDED)


def _brute_liveness(policy: Policy, bounds: Bounds) -> Verdict:
    for word in enumerate_finite(policy.alphabet, bounds.max_finite_len):
        if not any(
            policy.evaluate(ext) for ext in _bounded_extensions(policy, word, bounds)
        ):
            return Verdict(True, False, word, BOUNDED, "finite word with no valid extension")
    return Verdict(True, True, None, BOUNDED)


def _brute_renewal(policy: Policy, bounds: Bounds) -> Verdict:
    auto = policy.prop
    for lasso in enumerate_lassos(policy.alphabet, bounds.max_stem_len, bounds.max_loop_len):
        valid = auto.evaluate_infinite(lasso)
        if valid != _has_recurring_valid_prefixes(auto, lasso):
            return Verdict(True, False, lasso, BOUNDED, "validity and recurring prefixes differ")
    return Verdict(True, True, None, BOUNDED)


def _has_recurring_valid_prefixes(auto: PropertyAutomaton, lasso: LassoWord) -> bool:
    """Infinitely many valid prefixes: some valid prefix length in the
    recurring part of the run."""
    state = auto.run(lasso.stem)
    seen = {}
    boundary_states = [state]
    while state not in seen:
        seen[state] = len(boundary_states) - 1
        for a in lasso.loop.items:
            state = auto.step(state, a)
        boundary_states.append(state)
    start = seen[state]
    state = boundary_states[start]
    for _ in range(start, len(boundary_states) - 1):
        if state in auto.accept_finite:
            return True
        for a in lasso.loop.items:
            state = auto.step(state, a)
            if state in auto.accept_finite:
                return True
    return state in auto.accept_finite


def _prefixes(word: Word, bounds: Bounds) -> list[FiniteTrace]:
    if isinstance(word, FiniteTrace):
        return [word[:k] for k in range(len(word) + 1)]
    top = len(word.stem) + len(word.loop) * 2
    full = word.unroll(top)
    return [full[:k] for k in range(top + 1)]


# -- the enforcement game ----------------------------------------------------


@dataclass
class _GameContext:
    policy: Policy
    lattice: ActionLattice
    possible: Optional[PropertyAutomaton]
    memo_cap: int
    memo: dict = field(default_factory=dict)

    def charge(self) -> None:
        if len(self.memo) > self.memo_cap:
            raise GameBudgetError(f"game memo exceeded {self.memo_cap} entries")


@lru_cache(maxsize=None)
def _distance_to_acceptance(auto: PropertyAutomaton) -> dict[str, Optional[int]]:
    """Shortest word length from each state into finite acceptance."""
    dist: dict[str, Optional[int]] = {
        q: (0 if q in auto.accept_finite else None) for q in auto.states
    }
    changed = True
    while changed:
        changed = False
        for q in auto.states:
            for a in auto.alphabet:
                d = dist[auto.transition[(q, a.name)]]
                if d is not None and (dist[q] is None or dist[q] > d + 1):
                    dist[q] = d + 1
                    changed = True
    return dist


@lru_cache(maxsize=None)
def _joint_distance(
    auto: PropertyAutomaton, possible: PropertyAutomaton
) -> dict[tuple[str, str], Optional[int]]:
    """Shortest length of a continuation that is valid and possible."""
    pairs = [(p, s) for p in auto.states for s in possible.states]
    dist: dict[tuple[str, str], Optional[int]] = {pair: None for pair in pairs}
    for pair in pairs:
        if pair[0] in auto.accept_finite and pair[1] in possible.accept_finite:
            dist[pair] = 0
    step = 0
    changed = True
    while changed:
        step += 1
        changed = False
        for pair in pairs:
            if dist[pair] is not None:
                continue
            for a in auto.alphabet:
                nxt = (
                    auto.transition[(pair[0], a.name)],
                    possible.transition[(pair[1], a.name)],
                )
                if dist[nxt] == step - 1:
                    dist[pair] = step
                    changed = True
                    break
    return dist


def game_enforceable(
    policy: Policy,
    lattice: ActionLattice,
    equivalence: Equivalence,
    n: int,
    memo_cap: int = 2_000_000,
) -> Verdict:
    """Backward-induction search: the adversary chooses input letters or
    ends the input; the monitor chooses legal reactions.  True iff the
    monitor wins every play of length <= n."""
    ctx = _GameContext(policy, lattice, policy.possible, memo_cap)
    if equivalence is Equivalence.SYNTACTIC:
        value = _syntactic_game(ctx, n)
    elif equivalence is Equivalence.INSERT:
        value = _insert_game(ctx, n)
    else:
        value = _suppress_game(ctx, n)
    if value:
        return Verdict(True, True, None, BOUNDED)
    witness = _syntactic_witness(ctx, n) if equivalence is Equivalence.SYNTACTIC else None
    return Verdict(True, False, witness, BOUNDED, "adversary wins within the bound")


# syntactic equality ---------------------------------------------------------


def _syntactic_game(ctx: _GameContext, n: int) -> bool:
    auto = ctx.policy.prop
    start_in = (auto.initial, ctx.possible.initial if ctx.possible else None)
    return _syn_adversary(ctx, start_in, auto.initial, (), False, n)


def _syn_stop_ok(ctx: _GameContext, in_state, out_state, pending, dead) -> bool:
    auto = ctx.policy.prop
    p_state, s_state = in_state
    if ctx.possible is not None and s_state not in ctx.possible.accept_finite:
        return True  # the input cannot end here
    sound = out_state in auto.accept_finite
    if not sound:
        return False
    if p_state in auto.accept_finite:
        return not dead and not pending
    return True


def _syn_adversary(ctx: _GameContext, in_state, out_state, pending, dead, depth) -> bool:
    key = ("syn", in_state, out_state, pending, dead, depth)
    if key in ctx.memo:
        return ctx.memo[key]
    ctx.charge()
    auto = ctx.policy.prop
    value = _syn_stop_ok(ctx, in_state, out_state, pending, dead)
    if value and depth > 0:
        for a in sorted(ctx.policy.alphabet, key=lambda x: x.name):
            if not _adversary_letter_viable(ctx, in_state, a, depth):
                continue
            if not _syn_monitor(ctx, in_state, out_state, pending, dead, depth, a):
                value = False
                break
    ctx.memo[key] = value
    return value


def _adversary_letter_viable(ctx: _GameContext, in_state, a: Action, depth: int) -> bool:
    if ctx.possible is None:
        return True
    s_state = ctx.possible.transition[(in_state[1], a.name)]
    dist = _distance_to_acceptance(ctx.possible)[s_state]
    return dist is not None and dist <= depth - 1


def _no_realizable_valid_continuation(ctx: _GameContext, in_state, depth: int) -> bool:
    """No input completion within the horizon is both valid and
    possible (the committed output can never be contradicted)."""
    auto = ctx.policy.prop
    if ctx.possible is None:
        dist = _distance_to_acceptance(auto)[in_state[0]]
    else:
        dist = _joint_distance(auto, ctx.possible)[(in_state[0], in_state[1])]
    return dist is None or dist > depth


def _step_in(ctx: _GameContext, in_state, a: Action):
    auto = ctx.policy.prop
    p_state = auto.transition[(in_state[0], a.name)]
    s_state = (
        ctx.possible.transition[(in_state[1], a.name)] if ctx.possible is not None else None
    )
    return (p_state, s_state)


def _syn_monitor(ctx: _GameContext, in_state, out_state, pending, dead, depth, a) -> bool:
    auto = ctx.policy.prop
    lattice = ctx.lattice
    key = _lattice_key(lattice)
    in_next = _step_in(ctx, in_state, a)
    cap = lattice.class_of(a)

    if dead:
        # transparency is lost; only soundness remains
        if lattice.can_suppress(a):
            if _syn_adversary(ctx, in_next, out_state, (), True, depth - 1):
                return True
        if lattice.can_abort_on(a):
            if out_state in auto.accept_finite and _no_realizable_valid_continuation(
                ctx, in_next, depth - 1
            ):
                return True
        for landing in _absorb_landings(auto, key, out_state, a):
            if _syn_adversary(ctx, in_next, landing, (), True, depth - 1):
                return True
        return False

    # emit everything held plus the letter
    flushed = out_state
    for name in pending:
        flushed = auto.transition[(flushed, name)]
    flushed = auto.transition[(flushed, a.name)]
    if _syn_adversary(ctx, in_next, flushed, (), False, depth - 1):
        return True
    # delay the letter
    if cap is Capability.C and _syn_adversary(
        ctx, in_next, out_state, pending + (a.name,), False, depth - 1
    ):
        return True
    if lattice.can_abort_on(a):
        # cut the target before the letter runs
        if out_state in auto.accept_finite and _no_realizable_valid_continuation(
            ctx, in_next, depth - 1
        ):
            return True
        # predictively emit the single valid completion
        tail = _unique_finite_completion(auto).get(in_next[0])
        if tail is not None and all(lattice.can_insert(x) for x in tail.items):
            u_state = flushed
            for x in tail.items:
                u_state = auto.transition[(u_state, x.name)]
            if u_state in _sound_survival_set(auto, key):
                return True
    # give up transparency, keep the output sound
    if lattice.can_suppress(a):
        if _syn_adversary(ctx, in_next, out_state, (), True, depth - 1):
            return True
    for landing in _absorb_landings(auto, key, out_state, a):
        if _syn_adversary(ctx, in_next, landing, (), True, depth - 1):
            return True
    return False


def _absorb_landings(auto: PropertyAutomaton, lattice_key, out_state, a: Action):
    """Output states reachable by padding with insertable letters around
    the unavoidable letter."""
    closure = _insert_closure(auto, lattice_key)
    landings = set()
    for q1 in closure[out_state]:
        mid = auto.transition[(q1, a.name)]
        landings.update(closure[mid])
    return sorted(landings)


def _syntactic_witness(ctx: _GameContext, n: int) -> Optional[FiniteTrace]:
    """A single re-checkable losing input, when the loss is not purely
    strategic: the first word failing the per-sequence check."""
    from .classify import enforceable_on

    for word in enumerate_finite(ctx.policy.alphabet, n):
        if ctx.possible is not None and not ctx.possible.evaluate_finite(word):
            continue
        try:
            if not enforceable_on(ctx.policy, ctx.lattice, word):
                return word
        except Exception:
            return None
    return None


# insertion equivalence ------------------------------------------------------


def _insert_game(ctx: _GameContext, n: int) -> bool:
    auto = ctx.policy.prop
    return _ins_adversary(ctx, auto.initial, auto.initial, (), n)


def _ins_stop_ok(ctx: _GameContext, in_state, out_state, buffer) -> bool:
    auto = ctx.policy.prop
    if out_state not in auto.accept_finite:
        return False
    if in_state in auto.accept_finite:
        mode, word = buffer if buffer else ("deficit", ())
        return not (mode == "deficit" and word)
    return True


def _ins_adversary(ctx: _GameContext, in_state, out_state, buffer, depth) -> bool:
    key = ("ins", in_state, out_state, buffer, depth)
    if key in ctx.memo:
        return ctx.memo[key]
    ctx.charge()
    value = _ins_stop_ok(ctx, in_state, out_state, buffer)
    if value and depth > 0:
        for a in sorted(ctx.policy.alphabet, key=lambda x: x.name):
            if not _ins_monitor(ctx, in_state, out_state, buffer, depth, a):
                value = False
                break
    ctx.memo[key] = value
    return value


def _buffer_consume_input(buffer, name: str):
    mode, word = buffer if buffer else ("deficit", ())
    if mode == "surplus":
        if name in word:
            idx = word.index(name)
            rest = word[idx + 1 :]
            return ("surplus", rest) if rest else ("deficit", ())
        return ("deficit", (name,))
    return ("deficit", word + (name,))


def _buffer_emit(buffer, name: str):
    mode, word = buffer if buffer else ("deficit", ())
    if mode == "deficit" and word:
        if word[0] == name:
            return ("deficit", word[1:])
        return ("deficit", word)
    if mode == "deficit":
        return ("surplus", (name,))
    return ("surplus", word + (name,))


def _ins_monitor(ctx: _GameContext, in_state, out_state, buffer, depth, a) -> bool:
    auto = ctx.policy.prop
    lattice = ctx.lattice
    key = _lattice_key(lattice)
    in_next = auto.transition[(in_state, a.name)]
    paths = _insert_paths_cached(auto, key)

    consumed = _buffer_consume_input(buffer, a.name)
    # pass, with optional insertions before and after
    for q1, before in paths[out_state]:
        mid = auto.transition[(q1, a.name)]
        buf_mid = consumed
        for name in before:
            buf_mid = _buffer_emit(buf_mid, name)
        buf_mid = _buffer_emit(buf_mid, a.name)
        for q2, after in paths[mid]:
            buf_out = buf_mid
            for name in after:
                buf_out = _buffer_emit(buf_out, name)
            if _ins_adversary(ctx, in_next, q2, _norm_buffer(buf_out), depth - 1):
                return True
    # drop the letter
    if lattice.can_suppress(a):
        if _ins_adversary(ctx, in_next, out_state, _norm_buffer(consumed), depth - 1):
            return True
    # cut the target
    if lattice.can_abort_on(a):
        if out_state in auto.accept_finite and _ins_abort_ok(ctx, in_next, buffer, depth - 1):
            return True
    return False


def _ins_abort_ok(ctx: _GameContext, in_next, buffer, depth) -> bool:
    # frozen output: every valid continuation must already be a
    # subword of it; conservatively require none to exist
    auto = ctx.policy.prop
    mode, word = buffer if buffer else ("deficit", ())
    if mode == "deficit" and word:
        dist = _distance_to_acceptance(auto)[in_next]
        return dist is None or dist > depth
    # remaining surplus may still absorb a short valid continuation;
    # handled conservatively the same way
    dist = _distance_to_acceptance(auto)[in_next]
    return dist is None or dist > depth


def _norm_buffer(buffer):
    mode, word = buffer
    if not word:
        return ("deficit", ())
    return (mode, tuple(word))


@lru_cache(maxsize=None)
def _insert_paths_cached(auto: PropertyAutomaton, lattice_key):
    from .enforce import _insert_paths

    return _insert_paths(auto, lattice_key)


# suppression equivalence ----------------------------------------------------


def _suppress_game(ctx: _GameContext, n: int) -> bool:
    auto = ctx.policy.prop
    return _sup_adversary(ctx, auto.initial, n)


def _sup_adversary(ctx: _GameContext, out_state, depth) -> bool:
    # passes and drops keep the output a subword of the input, so
    # transparency always holds; only soundness is at stake
    key = ("sup", out_state, depth)
    if key in ctx.memo:
        return ctx.memo[key]
    ctx.charge()
    auto = ctx.policy.prop
    value = out_state in auto.accept_finite
    if value and depth > 0:
        for a in sorted(ctx.policy.alphabet, key=lambda x: x.name):
            ok = False
            if ctx.lattice.can_suppress(a):
                ok = _sup_adversary(ctx, out_state, depth - 1)
            if not ok:
                nxt = auto.transition[(out_state, a.name)]
                ok = _sup_adversary(ctx, nxt, depth - 1)
            if not ok and ctx.lattice.can_abort_on(a):
                ok = out_state in auto.accept_finite
            if not ok:
                value = False
                break
    ctx.memo[key] = value
    return value


# -- triple cross-check ------------------------------------------------------


@dataclass(frozen=True)
class CheckEntry:
    policy: str
    lattice: str
    equivalence: str
    classifier: bool
    game: bool
    enforcer: Optional[bool]
    agree: bool
    witness: Optional[str] = None

    def render(self) -> str:
        enf = "n/a" if self.enforcer is None else ("t" if self.enforcer else "f")
        return (
            f"policy={self.policy} lattice={self.lattice} eq={self.equivalence} "
            f"classifier={'t' if self.classifier else 'f'} "
            f"game={'t' if self.game else 'f'} enforcer={enf} "
            f"agree={'t' if self.agree else 'f'}"
        )


@dataclass(frozen=True)
class CheckReport:
    header: str
    entries: tuple[CheckEntry, ...]

    @property
    def disagreements(self) -> tuple[CheckEntry, ...]:
        return tuple(e for e in self.entries if not e.agree)

    def render(self) -> str:
        lines = [self.header]
        lines.extend(entry.render() for entry in self.entries)
        for entry in self.disagreements:
            lines.append(
                f"witness policy={entry.policy} lattice={entry.lattice} "
                f"eq={entry.equivalence}: {entry.witness or '(strategic, no single-word witness)'}"
            )
        return "\n".join(lines) + "\n"


def _finite_prefix_closed(policy: Policy) -> bool:
    """Every valid finite word has only valid prefixes (reachability
    with an invalid-prefix taint)."""
    auto = policy.prop
    seen = {(auto.initial, auto.initial not in auto.accept_finite)}
    frontier = list(seen)
    while frontier:
        state, tainted = frontier.pop()
        if state in auto.accept_finite and tainted:
            return False
        for a in auto.alphabet:
            nxt = auto.transition[(state, a.name)]
            item = (nxt, tainted or nxt not in auto.accept_finite)
            if item not in seen:
                seen.add(item)
                frontier.append(item)
    return True


def _classifier_leg(
    policy: Policy, lattice: ActionLattice, eq: Equivalence, spec
) -> Optional[tuple[bool, Optional[str]]]:
    """The classifier verdict on the part of the question the game can
    see (finite inputs); None when the fragment is undecided."""
    from . import classify
    from .traces import format_trace

    if eq is Equivalence.SYNTACTIC:
        game_bounds = Bounds(spec.game_depth, spec.bounds.max_stem_len, spec.bounds.max_loop_len)
        if policy.possible is not None:
            from .nonuniform import restricted_exact_sweep

            sweep = restricted_exact_sweep(policy, lattice, game_bounds)
        else:
            sweep = classify.exact_sweep(policy, lattice, game_bounds)
        value = sweep.reasonable and sweep.finite_ok
        witness = None
        if sweep.witness is not None and not isinstance(sweep.witness, LassoWord):
            witness = format_trace(sweep.witness)
        return value, witness
    if eq is Equivalence.INSERT:
        caps = {lattice.class_of(a) for a in policy.alphabet}
        if caps == {Capability.D}:
            return policy.is_reasonable() and _finite_prefix_closed(policy), None
        if caps == {Capability.I}:
            verdict = classify.enforceable_insertion(policy, lattice, False, spec.bounds)
            return bool(verdict), None
        return None
    caps = {lattice.class_of(a) for a in policy.alphabet}
    if caps <= {Capability.D, Capability.C} or caps <= {Capability.D, Capability.O}:
        verdict = classify.enforceable_suppression(policy, lattice, spec.bounds)
        return bool(verdict), None
    return None


def _enforcer_leg(
    policy: Policy, lattice: ActionLattice, eq: Equivalence, spec
) -> Optional[bool]:
    """Run the matching executable enforcer over every input up to the
    bound; None when no strategy is the canonical executable for the
    combination."""
    from .enforce import Strategy, run

    concrete = policy.with_lattice(lattice)
    caps = {lattice.class_of(a) for a in policy.alphabet}
    if eq is Equivalence.SYNTACTIC:
        if policy.possible is not None:
            return None
        if not policy.is_reasonable():
            return False
        strategy = Strategy.EDIT
    elif eq is Equivalence.INSERT:
        if caps != {Capability.I}:
            return None
        strategy = Strategy.INSERT
    else:
        if not (caps <= {Capability.D, Capability.C} or caps <= {Capability.D, Capability.O}):
            return None
        if not policy.is_reasonable():
            return False
        strategy = Strategy.SUPPRESS
    for word in enumerate_finite(policy.alphabet, spec.enforcer_depth):
        result = run(concrete, strategy, eq, word)
        if not result.ok:
            return False
    return True


def cross_check(spec, classifier_fn: Optional[Callable] = None) -> CheckReport:
    """Compare classifier, game, and executed enforcer on every corpus
    entry; report one line per decided entry plus witness blocks."""
    entries = []
    for policy, pattern_name, lattice, eq in spec.entries():
        if classifier_fn is not None:
            leg = classifier_fn(policy, lattice, eq, spec)
        else:
            leg = _classifier_leg(policy, lattice, eq, spec)
        if leg is None:
            continue
        classifier_value, witness = leg
        game = game_enforceable(
            policy.with_lattice(lattice), lattice, eq, spec.game_depth, spec.memo_cap
        )
        enforcer_value = _enforcer_leg(policy, lattice, eq, spec)
        agree = classifier_value == game.value and (
            enforcer_value is None or enforcer_value == classifier_value
        )
        if witness is None and game.witness is not None:
            from .traces import format_trace

            witness = format_trace(game.witness)
        entries.append(
            CheckEntry(
                policy=policy.name,
                lattice=pattern_name,
                equivalence=eq.value,
                classifier=classifier_value,
                game=game.value,
                enforcer=enforcer_value,
                agree=agree,
                witness=witness,
            )
        )
    header = (
        f"corpus={spec.name} bounds={spec.bounds.describe()} "
        f"game-depth={spec.game_depth} enforcer-depth={spec.enforcer_depth}"
    )
    return CheckReport(header, tuple(entries))
