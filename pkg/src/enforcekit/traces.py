"""Finite and ultimately periodic action sequences with their algebra.

Finite traces are immutable tuples of actions.  Infinite executions are
represented as lasso words ``stem . loop^w`` (the loop repeats forever);
equality between lassos is semantic, via a canonical form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Union

_TOKEN = re.compile(r"[A-Za-z0-9_]+\Z")

EMPTY_LITERAL = "-"
LOOP_SEPARATOR = "~"


class EmptyTraceError(ValueError):
    """Raised when an operation needs a non-empty trace."""


class TraceSyntaxError(ValueError):
    """Raised on a malformed trace literal."""


@dataclass(frozen=True)
class Action:
    """A single atomic action, identified by its token."""

    name: str

    def __post_init__(self) -> None:
        if not _TOKEN.match(self.name):
            raise ValueError(f"invalid action token: {self.name!r}")

    def __repr__(self) -> str:
        return f"Action({self.name!r})"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FiniteTrace:
    """An ordered, possibly empty, finite sequence of actions."""

    items: tuple[Action, ...] = ()

    @staticmethod
    def of(*names: str) -> "FiniteTrace":
        return FiniteTrace(tuple(Action(n) for n in names))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Action]:
        return iter(self.items)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return FiniteTrace(self.items[index])
        return self.items[index]

    def __bool__(self) -> bool:
        return bool(self.items)

    def __str__(self) -> str:
        return format_trace(self)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.items)


EPSILON = FiniteTrace()


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``stem . loop^w``; the loop must be non-empty."""

    stem: FiniteTrace
    loop: FiniteTrace

    def __post_init__(self) -> None:
        if len(self.loop) == 0:
            raise ValueError("lasso loop must be non-empty")

    @staticmethod
    def of(stem: Iterable[str], loop: Iterable[str]) -> "LassoWord":
        return LassoWord(FiniteTrace.of(*stem), FiniteTrace.of(*loop))

    def unroll(self, n: int) -> FiniteTrace:
        """The first ``n`` actions of the infinite unrolling."""
        if n <= len(self.stem):
            return self.stem[:n]
        out = list(self.stem.items)
        loop = self.loop.items
        while len(out) < n:
            out.extend(loop)
        return FiniteTrace(tuple(out[:n]))

    def letter(self, i: int) -> Action:
        if i < len(self.stem):
            return self.stem.items[i]
        return self.loop.items[(i - len(self.stem)) % len(self.loop)]

    def canonical(self) -> "LassoWord":
        """Unique representation: primitive loop, shortest stem."""
        loop = _primitive(self.loop)
        stem = list(self.stem.items)
        cycle = list(loop.items)
        while stem and stem[-1] == cycle[-1]:
            stem.pop()
            cycle = [cycle[-1]] + cycle[:-1]
        return LassoWord(FiniteTrace(tuple(stem)), FiniteTrace(tuple(cycle)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LassoWord):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.stem.items == b.stem.items and a.loop.items == b.loop.items

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.stem.items, c.loop.items))

    def __str__(self) -> str:
        return format_trace(self)


Word = Union[FiniteTrace, LassoWord]


def _primitive(loop: FiniteTrace) -> FiniteTrace:
    n = len(loop)
    for p in range(1, n + 1):
        if n % p == 0 and loop.items == loop.items[:p] * (n // p):
            return loop[:p]
    return loop


def concat(tau: FiniteTrace, sigma: Word) -> Word:
    """``tau`` followed by ``sigma``; a lasso keeps its loop."""
    if isinstance(sigma, FiniteTrace):
        return FiniteTrace(tau.items + sigma.items)
    return LassoWord(FiniteTrace(tau.items + sigma.stem.items), sigma.loop)


def is_prefix(tau: FiniteTrace, sigma: Word) -> bool:
    if isinstance(sigma, FiniteTrace):
        return sigma.items[: len(tau)] == tau.items
    return sigma.unroll(len(tau)).items == tau.items


def left_cancel_action(tau: FiniteTrace, a: Action) -> FiniteTrace:
    """Remove the first occurrence of ``a`` from ``tau``, if any."""
    try:
        i = tau.items.index(a)
    except ValueError:
        return tau
    return FiniteTrace(tau.items[:i] + tau.items[i + 1 :])


def left_cancel_word(tau: FiniteTrace, tau2: FiniteTrace) -> FiniteTrace:
    return reduce(left_cancel_action, tau2.items, tau)


def is_subword(tau: FiniteTrace, sigma: Word) -> bool:
    """True iff the letters of ``tau`` occur in ``sigma`` in order."""
    if isinstance(sigma, LassoWord):
        # One loop traversal per remaining letter always suffices.
        bound = len(sigma.stem) + len(sigma.loop) * (len(tau) + 1)
        sigma = sigma.unroll(bound)
    it = iter(sigma.items)
    return all(any(x == a for x in it) for a in tau.items)


def longest_common_subword(tau: FiniteTrace, sigma: FiniteTrace) -> FiniteTrace:
    """A maximum-length common subword of both arguments.

    Ties are broken toward the lexicographically first position
    sequence in ``tau``, which makes the result deterministic.
    """
    a, b = tau.items, sigma.items
    n, m = len(a), len(b)
    # length[i][j] = longest common subword of a[i:], b[j:]
    length = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            best = max(length[i + 1][j], length[i][j + 1])
            if a[i] == b[j]:
                best = max(best, 1 + length[i + 1][j + 1])
            length[i][j] = best
    out: list[Action] = []
    i = j = 0
    remaining = length[0][0]
    while remaining:
        match = next(
            (k for k in range(j, m) if b[k] == a[i] and 1 + length[i + 1][k + 1] >= remaining),
            None,
        )
        if match is None:
            i += 1
            continue
        out.append(a[i])
        i, j, remaining = i + 1, match + 1, remaining - 1
    return FiniteTrace(tuple(out))


def acts(sigma: Word) -> frozenset[Action]:
    if isinstance(sigma, FiniteTrace):
        return frozenset(sigma.items)
    return frozenset(sigma.stem.items) | frozenset(sigma.loop.items)


def last(tau: FiniteTrace) -> Action:
    if not tau.items:
        raise EmptyTraceError("the empty trace has no last action")
    return tau.items[-1]


def prefixes_upto(sigma: Word, n: int) -> list[FiniteTrace]:
    """All prefixes of length <= n (every length 0..n for a lasso)."""
    if n < 0:
        raise ValueError("prefix bound must be >= 0")
    if isinstance(sigma, FiniteTrace):
        top = min(n, len(sigma))
        return [sigma[:k] for k in range(top + 1)]
    full = sigma.unroll(n)
    return [full[:k] for k in range(n + 1)]


def lassos_semantically_equal(a: LassoWord, b: LassoWord) -> bool:
    """Positionwise comparison up to the combined-period bound."""
    bound = len(a.stem) + len(b.stem) + math.lcm(len(a.loop), len(b.loop))
    return a.unroll(bound).items == b.unroll(bound).items


def parse_trace(text: str) -> Word:
    """Parse a trace literal: tokens, ``~`` before the loop, ``-`` for the
    empty trace."""
    text = text.strip()
    if text == EMPTY_LITERAL:
        return EPSILON
    if not text:
        raise TraceSyntaxError("empty trace literal (use '-' for the empty trace)")
    if LOOP_SEPARATOR in text:
        head, _, tail = text.partition(LOOP_SEPARATOR)
        stem_tokens = head.split()
        if stem_tokens == [EMPTY_LITERAL]:
            stem_tokens = []
        loop_tokens = tail.split()
        if LOOP_SEPARATOR in tail:
            raise TraceSyntaxError("more than one loop separator")
        if not loop_tokens:
            raise TraceSyntaxError("lasso loop must be non-empty")
        try:
            return LassoWord(FiniteTrace.of(*stem_tokens), FiniteTrace.of(*loop_tokens))
        except ValueError as exc:
            raise TraceSyntaxError(str(exc)) from exc
    try:
        return FiniteTrace.of(*text.split())
    except ValueError as exc:
        raise TraceSyntaxError(str(exc)) from exc


def format_trace(word: Word) -> str:
    if isinstance(word, FiniteTrace):
        return " ".join(word.names) if word.items else EMPTY_LITERAL
    stem = " ".join(word.stem.names)
    loop = " ".join(word.loop.names)
    return f"{stem} {LOOP_SEPARATOR} {loop}".strip()
