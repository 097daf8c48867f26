from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from degreelab.graph import TargetSpec, build_km_minus_pk, contains_subgraph, degree_sequence
from degreelab.potential import (
    Budget,
    InfeasiblePlacement,
    PotentialDecision,
    is_potentially,
    necessary_condition_holds,
    residual_after_placement,
)
from degreelab.realization import enumerate_realizations_backtrack
from degreelab.sequence import DegreeSequence, enumerate_graphical_sequences, is_graphical, parse_sequence

K5_P3 = TargetSpec.family(5, 3)
K5_P4 = TargetSpec.family(5, 4)


def all_graphical(max_n):
    for n in range(1, max_n + 1):
        yield from enumerate_graphical_sequences(n, 0, n * (n - 1))


def test_examples():
    d = is_potentially(parse_sequence("5,3,3,3,3,3"), K5_P3)
    assert d.verdict == "yes"
    assert d.witness is not None
    assert is_potentially(parse_sequence("4,4,2,2,2"), K5_P3).verdict == "no"
    d = is_potentially(parse_sequence("3,1,1,1"), K5_P3)
    assert d.verdict == "no"
    assert "only 4 vertices" in d.reason


def test_non_graphical_is_no():
    assert is_potentially(parse_sequence("3,3,1,1"), TargetSpec.family(4, 3)).verdict == "no"


@pytest.mark.parametrize(
    "text",
    ["5^1,3^5", "4^2,3^4", "5^6", "6^1,3^6", "5^1,4^1,3^5", "4^3,3^4"]
    + [f"{n - 1}^1,3^{n - 1}" for n in range(5, 10)],
)
def test_case_analysis_sequences_are_yes(text):
    seq = parse_sequence(text)
    d = is_potentially(seq, K5_P3)
    assert d.verdict == "yes"
    assert degree_sequence(d.witness) == seq
    assert contains_subgraph(d.witness, K5_P3.graph) is not None


def test_decision_rejects_bad_witness():
    seq = parse_sequence("4,4,2,2,2")
    with pytest.raises(ValueError):
        PotentialDecision(seq, K5_P3, "yes")
    other = is_potentially(parse_sequence("4^5"), K5_P3).witness
    with pytest.raises(ValueError):
        PotentialDecision(seq, K5_P3, "yes", witness=other)


def test_residual_examples():
    # what K_5 loses is exactly the removed path on four vertices plus an isolated vertex
    full = residual_after_placement(parse_sequence("4,4,4,4,4"), K5_P3, [0, 1, 2, 3, 4])
    assert full.terms == (2, 2, 1, 1, 0)
    assert full.terms == tuple(sorted(K5_P3.graph.complement().degrees(), reverse=True))
    with pytest.raises(InfeasiblePlacement):
        # demands (4,3,3,2,2) onto (5,5,2,2,2) leave (1,2,-1,0,0)
        residual_after_placement(parse_sequence("5,5,2,2,2,2"), K5_P3, [1, 3, 4, 2, 0])
    seq = parse_sequence("5,3,3,3,3,3")
    pattern = K5_P3.graph
    # the degree-sorted mapping: pattern vertex 4 (degree 4) onto the degree-5 position
    best = residual_after_placement(seq, pattern, [1, 2, 3, 4, 0])
    assert is_graphical(best)


def test_residual_argument_checks():
    seq = parse_sequence("4,4,4,4,4")
    with pytest.raises(ValueError):
        residual_after_placement(seq, K5_P3, [0, 1, 2, 3])
    with pytest.raises(ValueError):
        residual_after_placement(seq, K5_P3, [0, 0, 1, 2, 3])


def _any_mapping_graphical(seq, pattern, positions):
    for perm in permutations(positions):
        try:
            if is_graphical(residual_after_placement(seq, pattern, list(perm))):
                return True
        except InfeasiblePlacement:
            continue
    return False


def test_sorted_mapping_is_enough():
    """If any mapping onto a position set leaves a graphical residual, the sorted one does."""
    pattern = K5_P3.graph
    by_demand = sorted(range(5), key=lambda v: -pattern.degree(v))
    for seq in enumerate_graphical_sequences(7, 16, 42):
        for chosen in [(0, 1, 2, 3, 4), (0, 2, 4, 5, 6), (2, 3, 4, 5, 6), (0, 1, 4, 5, 6)]:
            sorted_map = [0] * 5
            for v, p in zip(by_demand, chosen):
                sorted_map[v] = p
            try:
                sorted_ok = is_graphical(residual_after_placement(seq, pattern, sorted_map))
            except InfeasiblePlacement:
                sorted_ok = False
            assert sorted_ok == _any_mapping_graphical(seq, pattern, chosen), (seq, chosen)


def _oracle(seq, pattern):
    return any(contains_subgraph(g, pattern) is not None for g in enumerate_realizations_backtrack(seq))


def test_completeness_at_oracle_scale():
    pattern = K5_P3.graph
    for seq in all_graphical(7):
        d = is_potentially(seq, K5_P3)
        assert d.is_yes == _oracle(seq, pattern), seq


def test_necessary_condition_is_necessary():
    for seq in all_graphical(7):
        if is_potentially(seq, K5_P3).is_yes:
            assert necessary_condition_holds(seq, K5_P3.graph)


def test_monotonicity_k5_p4_inside_k5_p3():
    assert contains_subgraph(build_km_minus_pk(5, 3), build_km_minus_pk(5, 4)) is not None
    for seq in all_graphical(8):
        if seq.sum < 12:
            continue
        if is_potentially(seq, K5_P3).is_yes:
            assert is_potentially(seq, K5_P4).is_yes, seq


def test_no_budget_never_inconclusive():
    for seq in enumerate_graphical_sequences(8, 20, 30):
        assert is_potentially(seq, K5_P3).verdict != "inconclusive"


def test_budget_can_make_inconclusive():
    d = is_potentially(parse_sequence("4^5"), K5_P4, Budget(max_nodes=2))
    assert d.verdict == "inconclusive"
    assert d.witness is None
    assert is_potentially(parse_sequence("4^5"), K5_P4, Budget(max_nodes=10_000)).verdict == "yes"


def test_no_verdicts_record_exhaustion():
    d = is_potentially(parse_sequence("7^2,2^6"), K5_P3)
    assert d.verdict == "no"
    assert d.stats["exhausted"] is True
    for seq in enumerate_graphical_sequences(7, 0, 42):
        d = is_potentially(seq, K5_P3)
        if d.verdict == "no":
            assert d.stats["exhausted"] is True
            assert d.stats["stage"] in {"graphicality", "order", "sum", "residual-filter", "search"}
    with pytest.raises(ValueError):
        PotentialDecision(parse_sequence("4,4,2,2,2"), K5_P3, "no")


def test_some_no_verdicts_need_the_full_search():
    """The residual filter is not sufficient on its own; exhaustive search decides these."""
    stages = [is_potentially(s, K5_P3).stats["stage"] for s in enumerate_graphical_sequences(7, 0, 42)]
    assert "search" in stages


def test_json_round_trip():
    for text in ["4^2,3^4", "4,4,2,2,2", "2,2,2"]:
        d = is_potentially(parse_sequence(text), K5_P3)
        obj = d.to_json()
        assert set(obj) >= {"sequence", "target", "verdict", "witness_graph6", "stats"}
        assert obj["target"] == {"m": 5, "k": 3}
        back = PotentialDecision.from_json(d.dumps())
        assert back.to_json() == obj


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 9), st.data())
def test_witnesses_always_reverify(n, data):
    terms = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    seq = DegreeSequence(tuple(terms))
    d = is_potentially(seq, K5_P3)
    if d.is_yes:
        assert degree_sequence(d.witness) == seq
        assert contains_subgraph(d.witness, K5_P3.graph) is not None
