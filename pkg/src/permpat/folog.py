"""Existential first-order encoding of matching instances, plus a naive
model checker used as an independent cross-check of the matching engines.

A text becomes a finite structure over positions 1..n carrying two binary
relations: text_less(x, y) holds when the value at position x is smaller
than the value at position y, and succ(x, y) holds when y = x + 1.  A
pattern becomes an existential conjunction over variables x_1 < ... < x_k:
one text_less or negated text_less literal per position pair, plus one
succ literal per adjacent pair inside a block.  The chain x_1 < ... < x_k
is implicit in the formula object and in the search.

The model checker shares no code with the matching engines; agreement
between the two is a meaningful consistency check, not a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import GeneralizedPattern, Permutation, ValidationError
from .textio import ParseError

__all__ = [
    "FoStructure",
    "FoFormula",
    "encode_structure",
    "encode_formula",
    "model_check",
    "export_instance",
    "parse_instance",
]


@dataclass(frozen=True)
class FoStructure:
    """Relational view of a text: domain 1..n, text_less and succ."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        Permutation(self.values)  # borrow the bijection check
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    def text_less(self, x: int, y: int) -> bool:
        return self.values[x - 1] < self.values[y - 1]

    def succ(self, x: int, y: int) -> bool:
        return x + 1 == y

    def text_less_pairs(self) -> tuple[tuple[int, int], ...]:
        """The materialized relation, sorted; always n(n-1)/2 pairs."""
        n = self.n
        return tuple(
            (x, y)
            for x in range(1, n + 1)
            for y in range(1, n + 1)
            if x != y and self.values[x - 1] < self.values[y - 1]
        )

    def succ_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, x + 1) for x in range(1, self.n))


@dataclass(frozen=True)
class FoFormula:
    """Conjunction shape: implicit chain x_1 < ... < x_k, one (possibly
    negated) text_less literal per pair, succ literals for adjacency."""

    var_count: int
    pos_literals: frozenset[tuple[int, int]]
    neg_literals: frozenset[tuple[int, int]]
    adj_literals: frozenset[int]

    def __post_init__(self) -> None:
        k = self.var_count
        if not isinstance(k, int) or k < 1:
            raise ValidationError(f"variable count must be a positive integer, got {k!r}")
        pos = frozenset(tuple(p) for p in self.pos_literals)
        neg = frozenset(tuple(p) for p in self.neg_literals)
        adj = frozenset(self.adj_literals)
        all_pairs = {(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)}
        for i, j in pos | neg:
            if not (1 <= i < j <= k):
                raise ValidationError(f"literal ({i}, {j}) is not an ordered pair in 1..{k}")
        if pos & neg:
            raise ValidationError("a pair occurs as both a positive and a negative literal")
        if pos | neg != all_pairs:
            raise ValidationError("literals must cover every position pair exactly once")
        for i in adj:
            if not 1 <= i <= k - 1:
                raise ValidationError(f"adjacency literal {i} outside 1..{k - 1}")
        object.__setattr__(self, "pos_literals", pos)
        object.__setattr__(self, "neg_literals", neg)
        object.__setattr__(self, "adj_literals", adj)


def encode_structure(t: Permutation) -> FoStructure:
    return FoStructure(t.values)


def encode_formula(p: GeneralizedPattern) -> FoFormula:
    pv = p.values
    k = p.k
    pos = set()
    neg = set()
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if pv[i - 1] < pv[j - 1]:
                pos.add((i, j))
            else:
                neg.add((i, j))
    adj = set()
    for a, b in p.blocks:
        adj.update(range(a, b))
    return FoFormula(k, frozenset(pos), frozenset(neg), frozenset(adj))


def model_check(s: FoStructure, f: FoFormula) -> tuple[int, ...] | None:
    """The lexicographically least satisfying assignment, or None.

    Plain backtracking along the implicit chain: candidates for x_j are
    tried in increasing order above x_{j-1}, each checked against every
    literal whose variables are all assigned.
    """
    n = s.n
    k = f.var_count
    values = s.values
    pos_by_j: list[list[int]] = [[] for _ in range(k + 1)]
    neg_by_j: list[list[int]] = [[] for _ in range(k + 1)]
    for i, j in f.pos_literals:
        pos_by_j[j].append(i)
    for i, j in f.neg_literals:
        neg_by_j[j].append(i)
    adj = f.adj_literals
    assignment = [0] * (k + 1)

    def extend(j: int) -> tuple[int, ...] | None:
        if j > k:
            return tuple(assignment[1:])
        if j > 1 and (j - 1) in adj:
            candidates: Iterator[int] = iter((assignment[j - 1] + 1,))
        else:
            low = assignment[j - 1] + 1 if j > 1 else 1
            candidates = iter(range(low, n - (k - j) + 1))
        for x in candidates:
            if x > n:
                break
            vx = values[x - 1]
            ok = all(values[assignment[i] - 1] < vx for i in pos_by_j[j]) and not any(
                values[assignment[i] - 1] < vx for i in neg_by_j[j]
            )
            if ok:
                assignment[j] = x
                found = extend(j + 1)
                if found is not None:
                    return found
        return None

    if k > n:
        return None
    return extend(1)


def export_instance(s: FoStructure, f: FoFormula) -> str:
    """Deterministic line format: "fo <n> <k>" then one line per relation
    tuple and per literal.  parse_instance inverts this losslessly."""
    lines = [f"fo {s.n} {f.var_count}"]
    lines.extend(f"tl {x} {y}" for x, y in s.text_less_pairs())
    lines.extend(f"s {x} {y}" for x, y in s.succ_pairs())
    lines.extend(f"pos {i} {j}" for i, j in sorted(f.pos_literals))
    lines.extend(f"neg {i} {j}" for i, j in sorted(f.neg_literals))
    lines.extend(f"adj {i}" for i in sorted(f.adj_literals))
    return "\n".join(lines)


def parse_instance(text: str) -> tuple[FoStructure, FoFormula]:
    """Inverse of export_instance, with consistency checks on the relations."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty instance")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "fo" or not (head[1].isdigit() and head[2].isdigit()):
        raise ParseError("expected header 'fo <n> <k>'", line=1)
    n, k = int(head[1]), int(head[2])
    tl: set[tuple[int, int]] = set()
    succ: set[tuple[int, int]] = set()
    pos: set[tuple[int, int]] = set()
    neg: set[tuple[int, int]] = set()
    adj: set[int] = set()
    kinds = {"tl": (tl, 2), "s": (succ, 2), "pos": (pos, 2), "neg": (neg, 2), "adj": (adj, 1)}
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if fields[0] not in kinds:
            raise ParseError(f"unknown line kind {fields[0]!r}", line=lineno)
        target, arity = kinds[fields[0]]
        args = fields[1:]
        if len(args) != arity or not all(a.isdigit() for a in args):
            raise ParseError(f"malformed {fields[0]!r} line", line=lineno)
        target.add(tuple(int(a) for a in args) if arity == 2 else int(args[0]))
    values = [0] * n
    for x in range(1, n + 1):
        values[x - 1] = 1 + sum(1 for (a, b) in tl if b == x)
    try:
        structure = FoStructure(tuple(values))
    except ValidationError as exc:
        raise ParseError(f"text_less relation is not induced by a permutation: {exc}")
    if set(structure.text_less_pairs()) != tl:
        raise ParseError("text_less relation is not induced by a permutation")
    if set(structure.succ_pairs()) != succ:
        raise ParseError(f"succ relation must be exactly the {n - 1} consecutive pairs")
    try:
        formula = FoFormula(k, frozenset(pos), frozenset(neg), frozenset(adj))
    except ValidationError as exc:
        raise ParseError(str(exc))
    return structure, formula
