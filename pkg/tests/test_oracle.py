import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandpilion.errors import BudgetExceeded, DisconnectedGraphError
from sandpilion.graphs import (
    FamilyParams,
    Multigraph,
    build_bicoconut,
    build_coconut,
    cone,
    cone_plus,
    path,
)
from sandpilion.oracle import (
    BUDGET_ENV,
    brute_force_tau,
    deletion_contraction_tau,
    edge_budget,
)
from sandpilion.sandpile import tau

K3 = cone(build_coconut(1, 1))


def test_k3():
    assert brute_force_tau(K3) == 3
    assert deletion_contraction_tau(K3) == 3


def test_double_edge():
    g = Multigraph.from_edges([path(1), path(2)], [(path(1), path(2))] * 2)
    assert brute_force_tau(g) == 2
    assert deletion_contraction_tau(g) == 2


def test_small_cones():
    assert brute_force_tau(cone(build_bicoconut(FamilyParams(1, 1, 1)))) == 8
    assert brute_force_tau(cone_plus(build_coconut(2, 1), path(1))) == 13
    assert deletion_contraction_tau(cone(build_bicoconut(FamilyParams(2, 1, 1)))) == 21


def test_single_vertex():
    g = Multigraph.from_edges([path(1)], [])
    assert brute_force_tau(g) == 1
    assert deletion_contraction_tau(g) == 1


def test_disconnected():
    g = Multigraph.from_edges([path(1), path(2)], [])
    with pytest.raises(DisconnectedGraphError):
        brute_force_tau(g)
    with pytest.raises(DisconnectedGraphError):
        deletion_contraction_tau(g)


def test_budget():
    g = cone(build_bicoconut(FamilyParams(3, 1, 1)))
    with pytest.raises(BudgetExceeded):
        brute_force_tau(g, budget=5)
    with pytest.raises(BudgetExceeded):
        deletion_contraction_tau(g, budget=5)


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "4")
    assert edge_budget() == 4
    with pytest.raises(BudgetExceeded):
        brute_force_tau(cone(build_bicoconut(FamilyParams(2, 1, 1))))
    assert brute_force_tau(K3) == 3
    monkeypatch.delenv(BUDGET_ENV)
    assert edge_budget() == 24


@st.composite
def small_multigraphs(draw):
    n = draw(st.integers(2, 5))
    verts = [path(i) for i in range(1, n + 1)]
    edges = []
    # a random spanning path keeps it connected
    for i in range(n - 1):
        edges.append((verts[i], verts[i + 1]))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5))
    for a, b in extra:
        if a != b:
            edges.append((verts[a], verts[b]))
    return Multigraph.from_edges(verts, edges)


@given(small_multigraphs())
@settings(max_examples=80, deadline=None)
def test_oracles_agree_with_determinant(g):
    t = tau(g)
    assert brute_force_tau(g) == t
    assert deletion_contraction_tau(g) == t
