"""Independent spanning-tree counters used to cross-check the Matrix-Tree route.

Neither function touches a Laplacian or a determinant.
"""
from __future__ import annotations

import os
from itertools import combinations

from .errors import BudgetExceeded, DisconnectedGraphError
from .graphs import Multigraph

DEFAULT_EDGE_BUDGET = 24
BUDGET_ENV = "SANDPILION_BUDGET"


def edge_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_EDGE_BUDGET


def edge_instances(g: Multigraph) -> list[tuple[int, int]]:
    """One (u, v) index pair per unit of multiplicity; parallel copies are distinct."""
    out = []
    for u, v, m in g.edge_list():
        out.extend([(g.index(u), g.index(v))] * m)
    return out


def _is_spanning_tree(n: int, chosen) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in chosen:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    # n - 1 acyclic edges on n vertices always span
    return True


def brute_force_tau(g: Multigraph, budget: int | None = None) -> int:
    """Count spanning trees by testing every (n-1)-subset of edge instances."""
    budget = edge_budget() if budget is None else budget
    edges = edge_instances(g)
    if len(edges) > budget:
        raise BudgetExceeded(f"{len(edges)} edge instances exceed budget {budget}")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected")
    n = g.n
    return sum(1 for chosen in combinations(edges, n - 1) if _is_spanning_tree(n, chosen))


def deletion_contraction_tau(g: Multigraph, budget: int | None = None) -> int:
    """tau(G) = tau(G - e) + tau(G / e), with loops dropped after contraction.

    Parallel copies of the chosen edge are peeled one at a time; since each
    contraction turns the remaining copies into loops, a bundle of m copies
    contributes m * tau(G / uv) + tau(G - all uv).
    """
    budget = edge_budget() if budget is None else budget
    if g.edge_count() > budget:
        raise BudgetExceeded(f"{g.edge_count()} edge instances exceed budget {budget}")
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected")
    adj: dict[int, dict[int, int]] = {i: {} for i in range(g.n)}
    for u, v, m in g.edge_list():
        a, b = g.index(u), g.index(v)
        adj[a][b] = m
        adj[b][a] = m
    return _dc(adj)


def _connected(adj: dict[int, dict[int, int]]) -> bool:
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _dc(adj: dict[int, dict[int, int]]) -> int:
    if len(adj) == 1:
        return 1
    if not _connected(adj):
        return 0
    # prefer a pendant bundle: deleting it disconnects, so only contraction counts
    u = min(adj, key=lambda x: (len(adj[x]), x))
    v = min(adj[u])
    m = adj[u][v]
    if len(adj[u]) == 1:
        return m * _dc(_contract(adj, u, v))
    return m * _dc(_contract(adj, u, v)) + _dc(_delete(adj, u, v))


def _delete(adj, u, v):
    out = {x: dict(nb) for x, nb in adj.items()}
    del out[u][v]
    del out[v][u]
    return out


def _contract(adj, u, v):
    """Merge u into v; the u-v bundle becomes loops and is dropped."""
    out = {x: dict(nb) for x, nb in adj.items() if x != u}
    for x in out:
        out[x].pop(u, None)
    for w, m in adj[u].items():
        if w == v:
            continue
        out[v][w] = out[v].get(w, 0) + m
        out[w][v] = out[w].get(v, 0) + m
    return out
