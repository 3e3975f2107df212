import pytest

from metdim import graphs as G
from metdim.theorems import (
    FAIL,
    INTERVAL,
    PASS,
    TheoremId,
    canonical_S,
    check_proposition_cycle,
    check_small_cases,
    check_theorem_andk,
    check_theorem_complement,
    check_theorem_prism,
    complement_code_switch,
    cycle_product_resolving_set,
    prism_resolving_set,
    summary_table,
)
from metdim.graphs import GraphError
from metdim.metric import Code, code_of, distance_matrix, is_resolving
from metdim.solver import SearchBudget


def test_canonical_S():
    assert canonical_S(2) == (1, 4)
    assert canonical_S(4) == (1, 4, 7, 10)
    assert all(len(canonical_S(k)) == k for k in range(1, 30))
    with pytest.raises(GraphError):
        canonical_S(0)


def test_code_switch():
    c = Code(0, (1, 4, 7, 10), (1, 1, 1, 1))
    assert complement_code_switch(c).entries == (2, 2, 2, 2)
    c = Code(3, (3, 0, 1), (0, 1, 2))
    assert complement_code_switch(c).entries == (0, 2, 1)
    assert complement_code_switch(complement_code_switch(c)) == c
    with pytest.raises(ValueError):
        complement_code_switch(Code(0, (1,), (3,)))


def test_prism_construction():
    W = prism_resolving_set(4, 2)
    assert W == (1, 4, 7, 10)
    g = G.cartesian_product(G.andrasfai(4), G.path(2))
    dm = distance_matrix(g)
    # hub vertex 0 of row t has the constant code t+1 (rows counted from 0)
    for t in range(2):
        assert code_of(G.product_vertex(11, 0, t), W, dm).entries == (t + 1,) * 4
    assert is_resolving(g, W, dm).resolving


def test_cycle_construction():
    W = cycle_product_resolving_set(3, 4)
    assert W == (1, 4, 7, 9)
    g = G.cartesian_product(G.andrasfai(3), G.cycle(4))
    assert is_resolving(g, W).resolving
    with pytest.raises(GraphError):
        cycle_product_resolving_set(2, 4)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_check_andk(k):
    c = check_theorem_andk(k, samples=20, seed=1)
    assert c.passed, c.to_text()
    assert c.theorem_id is TheoremId.AND_K


@pytest.mark.parametrize("k", [2, 3, 4])
def test_check_complement(k):
    c = check_theorem_complement(k)
    assert c.passed, c.to_text()
    with pytest.raises(GraphError):
        check_theorem_complement(1)


@pytest.mark.parametrize("k,n", [(3, 2), (4, 3), (2, 4)])
def test_check_prism(k, n):
    c = check_theorem_prism(k, n)
    assert c.passed, c.to_text()


def test_check_prism_k1_construction_fails():
    # And(1)□P_n is the 2 x n ladder, which has metric dimension 2
    c = check_theorem_prism(1, 3)
    assert not c.passed
    statuses = {cl.description: cl.status for cl in c.claims}
    assert statuses["[1] resolves And(1)□P3"] == FAIL
    assert statuses["dim(And(1)□P3) = 1"] == FAIL


def test_check_prism_beyond_gate():
    c = check_theorem_prism(5, 3)
    assert c.parameters["exact"] is False
    assert c.passed, c.to_text()


@pytest.mark.parametrize("k,n", [(3, 3), (3, 4), (4, 3)])
def test_check_cycle(k, n):
    c = check_proposition_cycle(k, n)
    assert c.passed, c.to_text()
    value = c.claims[-1].evidence["report"]["dim"]
    assert value in (k, k + 1)


def test_check_cycle_delegates_small_k():
    c = check_proposition_cycle(2, 5)
    assert c.theorem_id is TheoremId.SMALL_CASES and c.passed


def test_budget_exhaustion_reports_interval():
    c = check_theorem_andk(6, budget=SearchBudget(max_subsets=2))
    dim_claim = next(cl for cl in c.claims if cl.description.startswith("dim("))
    assert dim_claim.status == INTERVAL
    assert not c.passed


def test_small_cases():
    c = check_small_cases(ns=[3, 4, 5])
    assert c.passed, c.to_text()
    assert all(cl.status == PASS for cl in c.claims)


def test_serialisation():
    c = check_theorem_andk(3)
    d = c.to_dict()
    assert d["theorem"] == "andk" and d["passed"] is True
    assert "timing" in d and "timing" not in c.to_dict(timing=False)
    assert "[PASS] andk(k=3)" in c.to_text()
    table = summary_table([c])
    assert table.splitlines()[1].split()[:4] == ["andk", "k=3", f"{len(c.claims)}/{len(c.claims)}", "PASS"]
