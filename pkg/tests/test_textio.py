import pytest
from hypothesis import given, settings, strategies as st

from permpat.core import Graph, ValidationError
from permpat.textio import (
    ParseError,
    PatternSyntax,
    parse_graph,
    parse_pattern,
    parse_permutation,
    serialize_graph,
    serialize_pattern,
    serialize_permutation,
)
from permpat.verify import all_patterns

SIX_VERTEX_GRAPH_TEXT = "p 6 7\nk 3\n1 3\n1 4\n1 5\n2 6\n3 4\n3 6\n5 6"


def test_parse_permutation_forms():
    assert parse_permutation("5 3 1 4 2").values == (5, 3, 1, 4, 2)
    assert parse_permutation("53142").values == (5, 3, 1, 4, 2)
    assert parse_permutation("5,3,1,4,2").values == (5, 3, 1, 4, 2)
    assert parse_permutation("10 9 8 7 6 5 4 3 2 1").n == 10
    assert parse_permutation("1").values == (1,)


def test_parse_permutation_propagates_validation():
    with pytest.raises(ValidationError, match="duplicate 6"):
        parse_permutation("5,3,1,4,2,6,6")


def test_parse_permutation_reports_byte_offset():
    with pytest.raises(ParseError) as err:
        parse_permutation("5 3 x 4")
    assert err.value.offset == 4
    with pytest.raises(ParseError, match="empty input"):
        parse_permutation("   ")


def test_parse_pattern_bracket():
    p = parse_pattern("[3 1] 2")
    assert p.values == (3, 1, 2)
    assert p.blocks == ((1, 2),)
    assert parse_pattern("[3 1 2]").blocks == ((1, 3),)
    assert parse_pattern("3 1 2").blocks == ()


def test_parse_pattern_accepts_angle_bracket_aliases():
    assert parse_pattern("⟨3 1⟩ 2") == parse_pattern("[3 1] 2")


def test_parse_pattern_dash():
    assert parse_pattern("31-2") == parse_pattern("[3 1] 2")
    assert parse_pattern("3-1-2") == parse_pattern("3 1 2")
    # without any dash, auto mode reads a classical pattern
    assert parse_pattern("312").blocks == ()
    # explicit dash syntax turns the single group into one block
    assert parse_pattern("312", PatternSyntax.DASH).blocks == ((1, 3),)


def test_parse_pattern_errors():
    with pytest.raises(ParseError, match="nested"):
        parse_pattern("[3 [1 2]]")
    with pytest.raises(ParseError, match="unbalanced"):
        parse_pattern("[3 1 2")
    with pytest.raises(ParseError, match="unbalanced"):
        parse_pattern("3 1] 2")
    with pytest.raises(ParseError, match="empty brackets"):
        parse_pattern("[] 1 2")
    with pytest.raises(ParseError, match="mixed"):
        parse_pattern("[3 1]-2")
    with pytest.raises(ParseError, match="empty group"):
        parse_pattern("31--2")
    with pytest.raises(ParseError, match="empty group"):
        parse_pattern("31-2-")
    with pytest.raises(ValidationError):
        parse_pattern("[3 1] 5")
    with pytest.raises(ValidationError, match="length < 2"):
        parse_pattern("[3] 1 2")


def test_serialize_pattern_canonical_forms():
    assert serialize_pattern(parse_pattern("[3 1] 2")) == "[3 1] 2"
    assert serialize_pattern(parse_pattern("3 1 2")) == "3 1 2"
    assert serialize_pattern(parse_pattern("[3 1 2]")) == "[3 1 2]"


def test_parse_graph_six_vertex_example():
    g, k = parse_graph(SIX_VERTEX_GRAPH_TEXT)
    assert g.l == 6
    assert g.m == 7
    assert k == 3
    assert g.has_edge(5, 6) and not g.has_edge(1, 2)


def test_parse_graph_small_and_errors():
    g, k = parse_graph("p 1 0")
    assert (g.l, g.m, k) == (1, 0, None)
    with pytest.raises(ParseError, match="self-loop"):
        parse_graph("p 3 1\n2 2")
    with pytest.raises(ParseError, match="out of range"):
        parse_graph("p 3 1\n2 4")
    with pytest.raises(ParseError, match="duplicate edge"):
        parse_graph("p 3 2\n1 2\n2 1")
    with pytest.raises(ParseError, match="wrong edge count"):
        parse_graph("p 3 2\n1 2")
    with pytest.raises(ParseError, match="wrong edge count"):
        parse_graph("p 3 0\n1 2")
    with pytest.raises(ParseError, match="header"):
        parse_graph("1 2\n2 3")
    with pytest.raises(ParseError, match="k must be positive"):
        parse_graph("p 2 0\nk 0")


def test_parse_graph_comments_and_crlf():
    g, k = parse_graph("# a comment\r\np 2 1\r\n# another\r\n1 2\r\n")
    assert g.m == 1 and k is None


def test_dash_and_bracket_forms_agree_exhaustively_up_to_k4():
    for p in (p for k in range(1, 5) for p in all_patterns(k)):
        dash = _dash_form(p)
        assert parse_pattern(dash, PatternSyntax.DASH) == p
        assert parse_pattern(serialize_pattern(p)) == p


def _dash_form(p):
    starts = {a: b for a, b in p.blocks}
    groups = []
    i = 1
    while i <= p.k:
        b = starts.get(i, i)
        groups.append("".join(str(v) for v in p.values[i - 1:b]))
        i = b + 1
    return "-".join(groups)


@st.composite
def permutations_(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    return parse_permutation(" ".join(str(v) for v in draw(st.permutations(list(range(1, n + 1))))))


@st.composite
def patterns_(draw, max_k=8):
    from permpat.verify import all_block_configs

    k = draw(st.integers(1, max_k))
    values = draw(st.permutations(list(range(1, k + 1))))
    config = draw(st.sampled_from(all_block_configs(k)))
    from permpat.core import GeneralizedPattern

    return GeneralizedPattern(tuple(values), config)


@given(permutations_())
def test_permutation_roundtrip(t):
    assert parse_permutation(serialize_permutation(t)) == t


@given(patterns_())
def test_pattern_roundtrip(p):
    assert parse_pattern(serialize_pattern(p)) == p


@st.composite
def graphs_(draw, max_l=8):
    from itertools import combinations

    l = draw(st.integers(0, max_l))
    pairs = list(combinations(range(1, l + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(l, frozenset(chosen))


@settings(max_examples=60)
@given(graphs_(), st.one_of(st.none(), st.integers(1, 8)))
def test_graph_roundtrip(g, k):
    g2, k2 = parse_graph(serialize_graph(g, k))
    assert g2 == g
    assert k2 == k
