"""Laplacians, spanning-tree counts and sandpile groups of multigraphs."""
from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass
from math import gcd, prod

from .errors import DisconnectedGraphError, InvalidParameters
from .graphs import APEX, Multigraph, VertexLabel, build_left_comb, cone
from .linalg import IntMatrix, determinant, minor_delete, smith_normal_form


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group Z_{f1} + ... + Z_{fk} with f1 | f2 | ... | fk, all > 1."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        fs = tuple(self.factors)
        if any(f <= 1 for f in fs):
            raise ValueError(f"invariant factors must exceed 1: {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"factors do not form a divisibility chain: {fs}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Normalize any direct sum of cyclic groups to invariant-factor form."""
        fs = [abs(x) for x in orders]
        if any(x == 0 for x in fs):
            raise ValueError("infinite cyclic summand")
        # Repeated (gcd, lcm) exchange converges to a divisibility chain.
        changed = True
        while changed:
            changed = False
            for i in range(len(fs)):
                for j in range(i + 1, len(fs)):
                    a, b = fs[i], fs[j]
                    g = gcd(a, b)
                    if g != a:
                        fs[i], fs[j] = g, a * b // g
                        changed = True
        return cls(tuple(x for x in fs if x != 1))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def mu(self) -> int:
        return len(self.factors)

    def to_json_dict(self) -> dict:
        return {
            "invariant_factors": [str(f) for f in self.factors],
            "order": str(self.order),
            "mu": self.mu,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join(f"Z_{f}" for f in self.factors)


def laplacian(g: Multigraph) -> IntMatrix:
    if g.n == 0:
        raise InvalidParameters("empty graph")
    n = g.n
    rows = [[0] * n for _ in range(n)]
    for key, mult in g.edges.items():
        u, v = (g.index(x) for x in key)
        rows[u][v] -= mult
        rows[v][u] -= mult
        rows[u][u] += mult
        rows[v][v] += mult
    return IntMatrix.from_rows(rows, cols=n)


def reduced_laplacian(g: Multigraph, v0: VertexLabel) -> IntMatrix:
    i = g.index(v0)
    return laplacian(g).delete(rows=[i], cols=[i])


def reduction_vertex(g: Multigraph) -> VertexLabel:
    """The apex when present, else the last vertex in canonical order."""
    return APEX if g.has_apex else g.vertices[-1]


def _require_connected(g: Multigraph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected")


def tau(g: Multigraph) -> int:
    """Spanning-tree count via the Matrix-Tree theorem."""
    _require_connected(g)
    return determinant(reduced_laplacian(g, reduction_vertex(g)))


def sandpile_group(g: Multigraph) -> AbelianGroup:
    _require_connected(g)
    snf = smith_normal_form(reduced_laplacian(g, reduction_vertex(g)))
    return AbelianGroup(snf.nontrivial())


def mu(g: Multigraph) -> int:
    return sandpile_group(g).mu


def check_leaf_generators(t: Multigraph, omit: VertexLabel) -> bool:
    """Whether the leaves other than ``omit`` generate K(Cone(t)).

    Appends the standard basis columns of those leaves to the apex-reduced
    Laplacian and tests that the cokernel is trivial.
    """
    if not t.is_tree():
        raise InvalidParameters("expected a tree")
    if omit not in t or t.degree(omit) != 1:
        raise InvalidParameters(f"{omit} is not a leaf")
    c = cone(t)
    lbar = reduced_laplacian(c, APEX)
    n = lbar.rows
    gens = [v for v in t.leaves() if v != omit]
    basis = IntMatrix.from_rows(
        [[int(t.index(v) == i) for v in gens] for i in range(n)], cols=len(gens)
    )
    snf = smith_normal_form(lbar.hstack(basis))
    return snf.rank == n and all(x == 1 for x in snf.diag)


@dataclass(frozen=True)
class CombClaims:
    claim1_minor: int
    claim2_minor: int

    @property
    def claim1_odd(self) -> bool:
        return self.claim1_minor % 2 == 1

    @property
    def coprime(self) -> bool:
        return gcd(self.claim1_minor, self.claim2_minor) == 1


def comb_claims(p: int) -> CombClaims:
    """The two (2p-2)-minors of the apex-reduced Laplacian of Cone(T_p).

    Rows/columns follow pi_1..pi_p, ell_1..ell_{p-1}. The first minor drops
    pi_1's row and column, the second drops pi_1's row and ell_{p-1}'s column.
    """
    if p < 2:
        raise InvalidParameters(f"comb claims need p >= 2, got {p}")
    lbar = reduced_laplacian(cone(build_left_comb(p)), APEX)
    last = lbar.cols - 1
    return CombClaims(minor_delete(lbar, 0, 0), minor_delete(lbar, 0, last))
