"""Text grammars for permutations, generalized patterns and graphs.

Permutations are whitespace- or comma-separated positive integers
("5 3 1 4 2"); a single unseparated run of digits is read one value per
digit ("53142").

Patterns come in two syntaxes.  Bracket syntax, the canonical output form,
separates integer tokens with whitespace and encloses each adjacency block
in square brackets: "[3 1] 2".  Unicode angle brackets are accepted as
input aliases.  Dash syntax uses single-digit values with dashes between
groups; every group of two or more digits is an adjacency block, so
"31-2" has one block and "3-1-2" is classical.  Dash syntax is limited to
single-digit values; larger patterns must use bracket syntax.

Graphs are line-oriented: a header "p <l> <m>", an optional "k <k>" line,
then m lines "<u> <v>".  Lines starting with '#' are comments; blank lines
are ignored; LF and CRLF both work.
"""

from __future__ import annotations

import enum
import re

from .core import Graph, GeneralizedPattern, Permutation

__all__ = [
    "ParseError",
    "PatternSyntax",
    "parse_permutation",
    "parse_pattern",
    "serialize_pattern",
    "serialize_permutation",
    "parse_graph",
    "serialize_graph",
]

_OPEN = "[⟨"   # '[' or U+27E8 mathematical left angle bracket
_CLOSE = "]⟩"

_TOKEN_RE = re.compile(r"[^\s,]+")


class ParseError(ValueError):
    """Malformed textual input; carries the byte offset or line when known."""

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        if offset is not None:
            message = f"{message} (byte {offset})"
        elif line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


class PatternSyntax(enum.Enum):
    BRACKET = "bracket"
    DASH = "dash"


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8"))


def _int_tokens(text: str) -> list[int]:
    """Whitespace/comma separated integers, or one compact run of digits."""
    tokens = list(_TOKEN_RE.finditer(text))
    if not tokens:
        raise ParseError("empty input", offset=0)
    for match in tokens:
        if not match.group().isdigit():
            raise ParseError(
                f"expected an integer, got {match.group()!r}",
                offset=_byte_offset(text, match.start()),
            )
    if len(tokens) == 1 and len(tokens[0].group()) > 1:
        return [int(c) for c in tokens[0].group()]
    return [int(match.group()) for match in tokens]


def parse_permutation(text: str) -> Permutation:
    """Parse one-line notation; validation errors propagate from core.

    >>> parse_permutation("5 3 1 4 2").values
    (5, 3, 1, 4, 2)
    >>> parse_permutation("53142").values
    (5, 3, 1, 4, 2)
    """
    return Permutation(tuple(_int_tokens(text)))


def _parse_bracket(text: str) -> GeneralizedPattern:
    values: list[int] = []
    blocks: list[tuple[int, int]] = []
    open_start: int | None = None
    open_offset = 0
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _OPEN:
            if open_start is not None:
                raise ParseError("nested brackets", offset=_byte_offset(text, i))
            open_start = len(values) + 1
            open_offset = i
            i += 1
        elif c in _CLOSE:
            if open_start is None:
                raise ParseError("unbalanced brackets: ']' without '['",
                                 offset=_byte_offset(text, i))
            if len(values) < open_start:
                raise ParseError("empty brackets", offset=_byte_offset(text, i))
            blocks.append((open_start, len(values)))
            open_start = None
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            values.append(int(text[i:j]))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r} in bracket syntax",
                             offset=_byte_offset(text, i))
    if open_start is not None:
        raise ParseError("unbalanced brackets: '[' never closed",
                         offset=_byte_offset(text, open_offset))
    return GeneralizedPattern(tuple(values), tuple(blocks))


def _parse_dash(text: str) -> GeneralizedPattern:
    values: list[int] = []
    blocks: list[tuple[int, int]] = []
    group_len = 0
    saw_dash_at: int | None = None
    for i, c in enumerate(text):
        if c.isspace():
            continue
        if c.isdigit():
            values.append(int(c))
            group_len += 1
            saw_dash_at = None
        elif c == "-":
            if group_len == 0:
                raise ParseError("empty group before dash", offset=_byte_offset(text, i))
            if group_len >= 2:
                blocks.append((len(values) - group_len + 1, len(values)))
            group_len = 0
            saw_dash_at = i
        else:
            raise ParseError(f"unexpected character {c!r} in dash syntax",
                             offset=_byte_offset(text, i))
    if saw_dash_at is not None:
        raise ParseError("empty group after dash", offset=_byte_offset(text, saw_dash_at))
    if group_len == 0:
        raise ParseError("empty input", offset=0)
    if group_len >= 2:
        blocks.append((len(values) - group_len + 1, len(values)))
    return GeneralizedPattern(tuple(values), tuple(blocks))


def parse_pattern(text: str, syntax: PatternSyntax | None = None) -> GeneralizedPattern:
    """Parse a generalized pattern.

    With syntax=None the syntax is detected: a bracket selects bracket
    form, a dash selects dash form, and plain input is read as a classical
    pattern using the permutation grammar.  Note the detection matters:
    "312" is classical when auto-detected but a single three-element block
    under explicit dash syntax.
    """
    has_bracket = any(c in text for c in _OPEN + _CLOSE)
    has_dash = "-" in text
    if has_bracket and has_dash:
        raise ParseError("mixed bracket and dash syntaxes")
    if syntax is None:
        if has_bracket:
            syntax = PatternSyntax.BRACKET
        elif has_dash:
            syntax = PatternSyntax.DASH
        else:
            return GeneralizedPattern(tuple(_int_tokens(text)), ())
    if syntax is PatternSyntax.BRACKET:
        return _parse_bracket(text)
    return _parse_dash(text)


def serialize_pattern(p: GeneralizedPattern) -> str:
    """Canonical bracket form; parse_pattern inverts this exactly."""
    starts = {a: b for a, b in p.blocks}
    out: list[str] = []
    i = 1
    while i <= p.k:
        if i in starts:
            b = starts[i]
            out.append("[" + " ".join(str(v) for v in p.values[i - 1:b]) + "]")
            i = b + 1
        else:
            out.append(str(p.values[i - 1]))
            i += 1
    return " ".join(out)


def serialize_permutation(t: Permutation) -> str:
    return " ".join(str(v) for v in t.values)


def _int_fields(fields: list[str], lineno: int, what: str) -> list[int]:
    out = []
    for f in fields:
        if not f.isdigit():
            raise ParseError(f"{what}: expected an integer, got {f!r}", line=lineno)
        out.append(int(f))
    return out


def parse_graph(text: str) -> tuple[Graph, int | None]:
    """Parse the line-oriented graph format; returns the graph and the
    optional subset size carried by a "k" line."""
    header: tuple[int, int] | None = None
    k: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "p" or len(fields) != 3:
                raise ParseError("expected header 'p <l> <m>'", line=lineno)
            l, m = _int_fields(fields[1:], lineno, "header")
            header = (l, m)
            continue
        if fields[0] == "k" and not edges and k is None:
            if len(fields) != 2:
                raise ParseError("k line: expected 'k <k>'", line=lineno)
            (value,) = _int_fields(fields[1:], lineno, "k line")
            if value < 1:
                raise ParseError(f"k must be positive, got {value}", line=lineno)
            k = value
            continue
        if len(fields) != 2:
            raise ParseError("edge: expected '<u> <v>'", line=lineno)
        l = header[0]
        u, v = _int_fields(fields, lineno, "edge")
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=lineno)
        if not (1 <= u <= l and 1 <= v <= l):
            raise ParseError(f"edge ({u}, {v}) out of range 1..{l}", line=lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(f"duplicate edge ({key[0]}, {key[1]})", line=lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("missing header 'p <l> <m>'")
    l, m = header
    if len(edges) != m:
        raise ParseError(f"wrong edge count: header says {m}, found {len(edges)}")
    return Graph(l, frozenset(edges)), k


def serialize_graph(g: Graph, k: int | None = None) -> str:
    lines = [f"p {g.l} {g.m}"]
    if k is not None:
        lines.append(f"k {k}")
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"
