"""Matching engines for generalized patterns.

A pattern P of length k matches a text T of length n when some strictly
increasing tuple of text positions carries values ordered exactly like P,
and every adjacency block of P lands on consecutive text positions.

Two independent engines answer decide/count/enumerate queries:

* ``match_bruteforce`` filters every strictly increasing k-tuple of text
  positions.  It is the oracle and refuses to run past a candidate budget.
* ``match_backtracking`` collapses each adjacency block into a single
  placement unit, lays units down left to right and checks order
  consistency incrementally.  It is the workhorse and carries no budget.

Both engines return identical results in every mode, including the
lexicographic order of enumerated embeddings.  ``match_dispatch`` adds a
longest-increasing-subsequence fast path for deciding classical identity
patterns and routes everything else to the backtracking engine.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .core import (
    BudgetExceededError,
    Embedding,
    GeneralizedPattern,
    Permutation,
)

__all__ = [
    "DEFAULT_BUDGET",
    "Mode",
    "MatchRequest",
    "is_valid_embedding",
    "match_bruteforce",
    "match_backtracking",
    "match_dispatch",
    "first_embedding",
    "lis_length",
]

DEFAULT_BUDGET = 10**8


class Mode(enum.Enum):
    DECIDE = "decide"
    COUNT = "count"
    ENUMERATE_ALL = "enumerate"


@dataclass(frozen=True)
class MatchRequest:
    """One matching query.  k > n is a legal request that simply never matches."""

    pattern: GeneralizedPattern
    text: Permutation
    mode: Mode = Mode.DECIDE


def _adjacent_indices(pattern: GeneralizedPattern) -> tuple[int, ...]:
    """0-based indices i such that pattern positions i+1 and i+2 share a block."""
    out: list[int] = []
    for a, b in pattern.blocks:
        out.extend(range(a - 1, b - 1))
    return tuple(out)


def _order_pairs(pattern: GeneralizedPattern) -> tuple[tuple[int, int, bool], ...]:
    """All 0-based index pairs (i, j), i < j, with the expected value order."""
    pv = pattern.values
    k = len(pv)
    return tuple(
        (i, j, pv[i] < pv[j]) for i in range(k) for j in range(i + 1, k)
    )


def _units(pattern: GeneralizedPattern) -> tuple[tuple[int, int], ...]:
    """Placement units as (0-based start, length): blocks stay whole, free
    positions are singletons."""
    units: list[tuple[int, int]] = []
    i = 1
    starts = {a: b for a, b in pattern.blocks}
    while i <= pattern.k:
        if i in starts:
            units.append((i - 1, starts[i] - i + 1))
            i = starts[i] + 1
        else:
            units.append((i - 1, 1))
            i += 1
    return tuple(units)


def is_valid_embedding(p: GeneralizedPattern, t: Permutation, e: Embedding) -> bool:
    """True iff e realizes a matching of p into t: order-isomorphism on all
    position pairs plus text adjacency inside every block."""
    if len(e.positions) != p.k:
        raise ValueError(f"embedding length {len(e.positions)} != pattern length {p.k}")
    if e.positions[-1] > t.n:
        raise ValueError(f"embedding position {e.positions[-1]} exceeds text length {t.n}")
    pos = e.positions
    for i in _adjacent_indices(p):
        if pos[i + 1] - pos[i] != 1:
            return False
    tv = t.values
    for i, j, less in _order_pairs(p):
        if (tv[pos[i] - 1] < tv[pos[j] - 1]) != less:
            return False
    return True


def _iter_bruteforce(pattern: GeneralizedPattern, text: Permutation) -> Iterator[tuple[int, ...]]:
    """All valid embeddings as 0-based position tuples, lexicographic."""
    tv = text.values
    k, n = pattern.k, text.n
    if k > n:
        return
    adj = _adjacent_indices(pattern)
    pairs = _order_pairs(pattern)
    for combo in combinations(range(n), k):
        for i in adj:
            if combo[i + 1] - combo[i] != 1:
                break
        else:
            for i, j, less in pairs:
                if (tv[combo[i]] < tv[combo[j]]) != less:
                    break
            else:
                yield combo


def _iter_backtracking(pattern: GeneralizedPattern, text: Permutation) -> Iterator[tuple[int, ...]]:
    """All valid embeddings as 0-based position tuples, lexicographic."""
    pv = pattern.values
    tv = text.values
    k, n = len(pv), len(tv)
    if k > n:
        return
    units = _units(pattern)
    nu = len(units)
    suffix = [0] * (nu + 1)
    for idx in range(nu - 1, -1, -1):
        suffix[idx] = suffix[idx + 1] + units[idx][1]
    pos = [0] * k

    def place(u: int, prev_end: int) -> Iterator[tuple[int, ...]]:
        if u == nu:
            yield tuple(pos)
            return
        pstart, length = units[u]
        for s in range(prev_end + 1, n - suffix[u] + 1):
            ok = True
            for d in range(length):
                pi = pstart + d
                pvi = pv[pi]
                tvi = tv[s + d]
                for q in range(pi):
                    if (pv[q] < pvi) != (tv[pos[q]] < tvi):
                        ok = False
                        break
                if not ok:
                    break
                pos[pi] = s + d
            if ok:
                yield from place(u + 1, s + length - 1)

    yield from place(0, -1)


def _run(gen: Iterator[tuple[int, ...]], mode: Mode) -> bool | int | list[Embedding]:
    if mode is Mode.DECIDE:
        return next(gen, None) is not None
    if mode is Mode.COUNT:
        return sum(1 for _ in gen)
    return [Embedding(tuple(p + 1 for p in combo)) for combo in gen]


def match_bruteforce(
    req: MatchRequest, budget: int = DEFAULT_BUDGET
) -> bool | int | list[Embedding]:
    """Exhaustive filter over all C(n, k) position tuples.

    Refuses (BudgetExceededError) when the candidate count exceeds the
    budget; this engine exists as an oracle, not a workhorse.
    """
    candidates = math.comb(req.text.n, req.pattern.k)
    if candidates > budget:
        raise BudgetExceededError(
            f"C({req.text.n}, {req.pattern.k}) = {candidates} exceeds budget {budget}"
        )
    return _run(_iter_bruteforce(req.pattern, req.text), req.mode)


def match_backtracking(req: MatchRequest) -> bool | int | list[Embedding]:
    """Placement-unit backtracking; observably identical to match_bruteforce."""
    return _run(_iter_backtracking(req.pattern, req.text), req.mode)


def lis_length(t: Permutation) -> int:
    """Length of the longest increasing subsequence, in O(n log n)."""
    tails: list[int] = []
    for v in t.values:
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def _is_identity_pattern(p: GeneralizedPattern) -> bool:
    return p.is_classical and p.values == tuple(range(1, p.k + 1))


def match_dispatch(req: MatchRequest) -> bool | int | list[Embedding]:
    """Default engine selection: decide classical identity patterns via
    lis_length, run everything else through the backtracking engine."""
    if req.mode is Mode.DECIDE and _is_identity_pattern(req.pattern):
        return lis_length(req.text) >= req.pattern.k
    return match_backtracking(req)


def first_embedding(
    p: GeneralizedPattern,
    t: Permutation,
    engine: str = "backtrack",
    budget: int = DEFAULT_BUDGET,
) -> Embedding | None:
    """The lexicographically least embedding of p into t, or None.

    engine is "backtrack" or "brute"; the brute engine honours the budget.
    """
    if engine == "brute":
        candidates = math.comb(t.n, p.k)
        if candidates > budget:
            raise BudgetExceededError(
                f"C({t.n}, {p.k}) = {candidates} exceeds budget {budget}"
            )
        gen = _iter_bruteforce(p, t)
    elif engine == "backtrack":
        gen = _iter_backtracking(p, t)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    combo = next(gen, None)
    if combo is None:
        return None
    return Embedding(tuple(q + 1 for q in combo))
