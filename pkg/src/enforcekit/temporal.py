"""Temporal rendition of the enforceability characterization.

The check evaluates, over the prefix positions of a sequence, the
formula

    G(C W valid)  or  ( C W valid  or  X((D or C) and (G not-valid or cc)) )

where the atoms at position i describe the length-i prefix: ``valid``
is policy validity, ``cc`` flags a forced-completion prefix, and ``C``
/ ``D`` classify the last action.  Weak until and G use end-of-trace
semantics on finite words and period-aware semantics on lassos.

The formula is implemented exactly as stated.  Where its verdict
differs from the per-sequence characterization, the divergence is
reported, not patched; the acceptance suite pins the divergence log.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .classify import _unique_finite_completion
from .policy import ActionLattice, Capability, Policy
from .traces import FiniteTrace, LassoWord, Word


@dataclass(frozen=True)
class _AtomWord:
    """Atom vectors per prefix position, finite or ultimately periodic."""

    head: tuple[tuple[bool, bool, bool, bool], ...]  # (valid, isC, isD, cc)
    loop: tuple[tuple[bool, bool, bool, bool], ...]  # empty for finite words

    def at(self, i: int) -> tuple[bool, bool, bool, bool]:
        if i < len(self.head):
            return self.head[i]
        if not self.loop:
            raise IndexError(i)
        return self.loop[(i - len(self.head)) % len(self.loop)]

    @property
    def last(self) -> Optional[int]:
        return len(self.head) - 1 if not self.loop else None

    def scan_limit(self, i: int) -> int:
        if self.loop:
            return max(i, len(self.head)) + len(self.loop)
        return len(self.head)


def _always(atoms: _AtomWord, pred: Callable[[int], bool], i: int) -> bool:
    return all(pred(j) for j in range(i, atoms.scan_limit(i)))


def _weak_until(
    atoms: _AtomWord, phi: Callable[[int], bool], psi: Callable[[int], bool], i: int
) -> bool:
    for j in range(i, atoms.scan_limit(i)):
        if psi(j):
            return True
        if not phi(j):
            return False
    return True


def _atoms_for(policy: Policy, lattice: ActionLattice, word: Word) -> _AtomWord:
    auto = policy.prop
    completions = _unique_finite_completion(auto)
    max_tail = max((len(t) for t in completions.values() if t is not None), default=0)

    if isinstance(word, FiniteTrace):
        length = len(word)
        letters = word.items
    else:
        n = len(auto.states)
        length = len(word.stem) + len(word.loop) * (2 * n + 3) + max_tail
        letters = word.unroll(length).items

    states = [auto.initial]
    for a in letters:
        states.append(auto.step(states[-1], a))
    valid = [q in auto.accept_finite for q in states]

    def forced_prefix(i: int) -> bool:
        if not valid[i]:
            return False
        low = max(1, i - max_tail)
        for m in range(low, i + 1):
            a = letters[m - 1]
            if not lattice.can_abort_on(a):
                continue
            tail = completions.get(states[m])
            if tail is None or len(tail) != i - m:
                continue
            if tuple(letters[m:i]) == tail.items and all(
                lattice.can_insert(x) for x in tail.items
            ):
                return True
        return False

    rows = []
    for i in range(length + 1):
        is_c = i > 0 and lattice.class_of(letters[i - 1]) is Capability.C
        is_d = i > 0 and lattice.class_of(letters[i - 1]) is Capability.D
        rows.append((valid[i], is_c, is_d, forced_prefix(i)))

    if isinstance(word, FiniteTrace):
        return _AtomWord(tuple(rows), ())

    # fold the ultimately periodic tail of the atom sequence
    stem_len = len(word.stem)
    loop_len = len(word.loop)
    seen: dict[tuple[str, int], int] = {}
    start = period = None
    for i in range(stem_len, length + 1):
        key = (states[i], (i - stem_len) % loop_len)
        if key in seen:
            start, period = seen[key], i - seen[key]
            break
        seen[key] = i
    if start is None or period is None:
        raise AssertionError("periodic structure not found within the unrolling")
    # atoms may stabilize later than the state does (forced-completion
    # lookback); push the fold point forward until rows repeat
    fold = start
    while any(rows[i] != rows[i + period] for i in range(fold, length - period + 1)):
        fold += 1
        if fold + period > length:
            raise AssertionError("atom sequence did not stabilize within the unrolling")
    return _AtomWord(tuple(rows[:fold]), tuple(rows[fold : fold + period]))


def temporal_check(policy: Policy, lattice: ActionLattice, word: Word) -> bool:
    """Evaluate the temporal formula at position zero."""
    policy.check_word(word)
    atoms = _atoms_for(policy, lattice, word)

    def valid(i: int) -> bool:
        return atoms.at(i)[0]

    def is_c(i: int) -> bool:
        return atoms.at(i)[1]

    def is_d(i: int) -> bool:
        return atoms.at(i)[2]

    def forced(i: int) -> bool:
        return atoms.at(i)[3]

    def hold_until_valid(i: int) -> bool:
        return _weak_until(atoms, is_c, valid, i)

    always_holdable = _always(atoms, hold_until_valid, 0)
    head_holdable = hold_until_valid(0)

    last = atoms.last
    if last is not None and last < 1:
        next_clause = False
    else:
        never_valid = _always(atoms, lambda j: not valid(j), 1)
        next_clause = (is_d(1) or is_c(1)) and (never_valid or forced(1))

    return always_holdable or head_holdable or next_clause
