import random
from itertools import combinations

import pytest

from permpat.core import Graph, MultisetHalves, ValidationError
from permpat.matcher import MatchRequest, Mode, match_backtracking, match_dispatch
from permpat.reduction import (
    KRangeError,
    attach_separator,
    build_multiset_instance,
    deduplicate,
    deduplicate_with_reals,
    find_independent_set,
    format_trace,
    independent_set_oracle,
    matched_vertices,
    reduce,
    simultaneous_multiset_match,
    simultaneous_multiset_witness,
)
from permpat.textio import parse_graph, parse_pattern, serialize_pattern
from permpat.verify import random_graph

REFERENCE_GRAPH = Graph(6, frozenset([(1, 3), (1, 4), (1, 5), (2, 6), (3, 4), (3, 6), (5, 6)]))

K3 = Graph(3, frozenset([(1, 2), (1, 3), (2, 3)]))


def test_stage1_pattern_and_text_for_the_worked_example():
    pattern, text = build_multiset_instance(REFERENCE_GRAPH, 3)
    assert pattern.dot == (1, 2, 3)
    assert pattern.bar == ((1, 2, 1), (1, 3, 1), (2, 3, 2))
    assert text.dot == (1, 2, 3, 4, 5, 6)
    assert text.bar == (
        (1, 2, 1), (1, 6, 1), (2, 3, 2), (2, 4, 2),
        (2, 5, 2), (3, 5, 3), (4, 5, 4), (4, 6, 4),
    )


def test_stage1_edge_cases():
    pattern, text = build_multiset_instance(Graph(2, frozenset()), 2)
    assert pattern == MultisetHalves((1, 2), ((1, 2, 1),))
    assert text == MultisetHalves((1, 2), ((1, 2, 1),))
    pattern, text = build_multiset_instance(K3, 2)
    assert pattern.bar == ((1, 2, 1),)
    assert text.bar == ()


def test_stage1_rejects_k_out_of_range():
    with pytest.raises(KRangeError):
        build_multiset_instance(REFERENCE_GRAPH, 0)
    with pytest.raises(KRangeError):
        build_multiset_instance(REFERENCE_GRAPH, 7)


def test_deduplicate_worked_example_pattern():
    pattern, _ = build_multiset_instance(REFERENCE_GRAPH, 3)
    ranked = deduplicate(pattern)
    assert ranked.dot == (6, 1, 11, 7, 15, 12)
    assert ranked.bar == ((2, 8, 3), (4, 13, 5), (9, 14, 10))


def test_deduplicate_single_vertex():
    assert deduplicate(MultisetHalves((1,), ())).dot == (2, 1)


# frozen from deduplicate_with_reals (the independent float oracle below)
EXPECTED_TEXT_DOT = (6, 1, 15, 7, 20, 16, 27, 21, 32, 28, 36, 33)
EXPECTED_TEXT_BAR = (
    (2, 8, 3), (4, 34, 5), (9, 17, 10), (11, 22, 12),
    (13, 29, 14), (18, 30, 19), (23, 31, 24), (25, 35, 26),
)


def test_deduplicate_worked_example_text():
    _, text = build_multiset_instance(REFERENCE_GRAPH, 3)
    ranked = deduplicate(text)
    assert len(ranked) == 36
    assert ranked.dot == EXPECTED_TEXT_DOT
    assert ranked.bar == EXPECTED_TEXT_BAR
    # the vertex-1 pair ranks like its pattern-side analogue
    assert ranked.dot[:2] == (6, 1)
    # cross-check against the real-representative implementation
    assert deduplicate_with_reals(text) == ranked


def test_deduplicate_rank_stability_across_schemes():
    rng = random.Random(21)
    schemes = [
        None,
        lambda j, t, m: j + 0.45 + 0.4 * t / (m + 1),
        lambda j, t, m: j + 0.9 - 0.8 / (t + 1),
    ]
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 7))
        k = rng.randint(1, g.l)
        for halves in build_multiset_instance(g, k):
            ranked = deduplicate(halves)
            for scheme in schemes:
                assert deduplicate_with_reals(halves, scheme) == ranked


def test_deduplicate_rejects_repeated_dot_values():
    with pytest.raises(ValidationError):
        deduplicate(MultisetHalves((1, 1), ()))


def test_attach_separator_worked_example():
    pattern, _ = build_multiset_instance(REFERENCE_GRAPH, 3)
    text_halves = deduplicate(build_multiset_instance(REFERENCE_GRAPH, 3)[1])
    p, t = attach_separator(deduplicate(pattern), text_halves)
    assert serialize_pattern(p) == "6 1 11 7 15 12 [18 17 16 19] [2 8 3] [4 13 5] [9 14 10]"
    assert t.n == 40
    # 2l = 12 dot elements precede the separator; the ranked maximum is 36
    assert t.values[12:16] == (39, 38, 37, 40)


def test_attach_separator_k1():
    p, _ = attach_separator(
        deduplicate(MultisetHalves((1,), ())), deduplicate(MultisetHalves((1, 2), ()))
    )
    assert serialize_pattern(p) == "2 1 [5 4 3 6]"


def test_reduce_sizes():
    trace = reduce(REFERENCE_GRAPH, 3)
    assert len(trace.stage3_pattern) == 19
    assert len(trace.stage3_text) == 40
    assert trace.non_edge_count == 8
    trace = reduce(Graph(2, frozenset()), 2)
    assert len(trace.stage3_pattern) == 11
    trace = reduce(K3, 3)
    assert len(trace.stage3_text) == 10
    assert match_dispatch(MatchRequest(trace.stage3_pattern, trace.stage3_text)) is False


def test_reduce_text_bound_tight_exactly_for_edge_free_graphs():
    for l in range(1, 6):
        bound = 4 + (3 * l * l + l) // 2
        empty = reduce(Graph(l, frozenset()), 1)
        assert len(empty.stage3_text) == bound
        if l >= 2:
            one_edge = reduce(Graph(l, frozenset([(1, 2)])), 1)
            assert len(one_edge.stage3_text) < bound


def test_independent_set_oracle_examples():
    assert independent_set_oracle(REFERENCE_GRAPH, 3) is True
    assert find_independent_set(REFERENCE_GRAPH, 3) == (2, 3, 5)
    assert independent_set_oracle(K3, 2) is False
    assert independent_set_oracle(Graph(4, frozenset()), 4) is True
    assert independent_set_oracle(REFERENCE_GRAPH, 7) is False


def test_simultaneous_multiset_match_examples():
    pattern, text = build_multiset_instance(REFERENCE_GRAPH, 3)
    assert simultaneous_multiset_witness(pattern, text) == (2, 3, 5)
    k3_pattern, k3_text = build_multiset_instance(K3, 2)
    assert simultaneous_multiset_match(k3_pattern, k3_text) is False
    one_pattern, one_text = build_multiset_instance(K3, 1)
    assert simultaneous_multiset_match(one_pattern, one_text) is True


def test_matched_vertices_on_the_worked_example():
    trace = reduce(REFERENCE_GRAPH, 3)
    embeddings = match_backtracking(
        MatchRequest(trace.stage3_pattern, trace.stage3_text, Mode.ENUMERATE_ALL)
    )
    selected = {tuple(sorted(matched_vertices(trace, e))) for e in embeddings}
    independent_sets = {
        s
        for s in combinations(range(1, 7), 3)
        if all(not REFERENCE_GRAPH.has_edge(u, v) for u, v in combinations(s, 2))
    }
    assert selected == independent_sets
    assert (2, 3, 5) in selected


def test_trace_blocks_layout():
    trace = reduce(REFERENCE_GRAPH, 3)
    assert trace.stage3_pattern.blocks == ((7, 10), (11, 13), (14, 16), (17, 19))


def test_format_trace_sections_and_roundtrip_of_stage3():
    trace = reduce(REFERENCE_GRAPH, 3)
    dump = format_trace(trace)
    assert "[stage1]" in dump and "[stage2]" in dump and "[stage3]" in dump
    lines = {ln.split(":")[0]: ln for ln in dump.splitlines() if ":" in ln}
    assert lines["pattern"].endswith(serialize_pattern(trace.stage3_pattern))
    assert lines["k"] == "k: 3"
    assert lines["pattern_length"] == "pattern_length: 19"
    assert lines["text_length"] == "text_length: 40"


def test_end_to_end_agreement_small_random():
    rng = random.Random(2)
    for _ in range(120):
        g = random_graph(rng, rng.randint(1, 6))
        k = rng.randint(1, min(3, g.l))
        trace = reduce(g, k)
        expected = independent_set_oracle(g, k)
        assert simultaneous_multiset_match(trace.stage1_pattern, trace.stage1_text) == expected
        assert match_dispatch(MatchRequest(trace.stage3_pattern, trace.stage3_text)) == expected


def test_parse_graph_file_drives_reduce():
    g, k = parse_graph("p 6 7\nk 3\n1 3\n1 4\n1 5\n2 6\n3 4\n3 6\n5 6")
    assert g == REFERENCE_GRAPH
    trace = reduce(g, k)
    assert len(trace.stage3_pattern) == 19


def test_separator_probe_matches_reduced_text_exactly_once():
    probe = parse_pattern("[3 2 1 4]")
    rng = random.Random(17)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 7))
        trace = reduce(g, 1)
        assert match_backtracking(MatchRequest(probe, trace.stage3_text, Mode.COUNT)) == 1
