"""Labeled multigraphs and the tree families studied here.

Vertices carry a role label so that Laplacian rows and columns can be
indexed reproducibly. Builders always emit vertices in canonical order:
path vertices, left leaves, right leaves, comb leaves, then the apex.
"""
from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InvalidParameters


class Role(enum.Enum):
    PATH = "Path"
    LEFT_LEAF = "LeftLeaf"
    RIGHT_LEAF = "RightLeaf"
    COMB_LEAF = "CombLeaf"
    CONE_APEX = "ConeApex"


_ROLE_RANK = {role: rank for rank, role in enumerate(Role)}


@dataclass(frozen=True, order=False)
class VertexLabel:
    role: Role
    index: int = 0

    def sort_key(self) -> tuple[int, int]:
        return (_ROLE_RANK[self.role], self.index)

    def __str__(self) -> str:
        names = {
            Role.PATH: "pi",
            Role.LEFT_LEAF: "sigma1_",
            Role.RIGHT_LEAF: "sigma2_",
            Role.COMB_LEAF: "ell",
        }
        if self.role is Role.CONE_APEX:
            return "v0"
        return f"{names[self.role]}{self.index}"


APEX = VertexLabel(Role.CONE_APEX)


def path(i: int) -> VertexLabel:
    return VertexLabel(Role.PATH, i)


def left_leaf(i: int) -> VertexLabel:
    return VertexLabel(Role.LEFT_LEAF, i)


def right_leaf(i: int) -> VertexLabel:
    return VertexLabel(Role.RIGHT_LEAF, i)


def comb_leaf(i: int) -> VertexLabel:
    return VertexLabel(Role.COMB_LEAF, i)


@dataclass(frozen=True)
class FamilyParams:
    """Index triple (p, s1, s2) of the bi-coconut tree T(p, s1, s2)."""

    p: int
    s1: int
    s2: int

    def require(self, min_p: int = 1, min_s: int = 1) -> "FamilyParams":
        if self.p < min_p or self.s1 < min_s or self.s2 < min_s:
            raise InvalidParameters(
                f"need p >= {min_p} and s1, s2 >= {min_s}, got {self}"
            )
        return self

    def swapped(self) -> "FamilyParams":
        return FamilyParams(self.p, self.s2, self.s1)

    def __str__(self) -> str:
        return f"({self.p},{self.s1},{self.s2})"


def _edge_key(u: VertexLabel, v: VertexLabel) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph without loops, stored as edge multiplicities.

    ``vertices`` fixes the row/column order used by every matrix built
    from the graph. ``edges`` maps an unordered vertex pair to its
    (positive) multiplicity.
    """

    vertices: tuple[VertexLabel, ...]
    edges: Mapping[frozenset, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        known = set(self.vertices)
        clean = {}
        for key, mult in self.edges.items():
            if len(key) != 2:
                raise ValueError("self-loops are not allowed")
            if not key <= known:
                raise ValueError(f"edge {set(key)} uses an unknown vertex")
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                clean[key] = mult
        object.__setattr__(self, "edges", clean)
        object.__setattr__(
            self, "_index", {v: i for i, v in enumerate(self.vertices)}
        )

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[VertexLabel],
        edges: Iterable[tuple[VertexLabel, VertexLabel]],
    ) -> "Multigraph":
        mult: dict[frozenset, int] = {}
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            key = _edge_key(u, v)
            mult[key] = mult.get(key, 0) + 1
        return cls(tuple(vertices), mult)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self.edges.items())))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: VertexLabel) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"vertex {v} not in graph") from None

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def multiplicity(self, u: VertexLabel, v: VertexLabel) -> int:
        if u == v:
            return 0
        return self.edges.get(_edge_key(u, v), 0)

    def edge_count(self) -> int:
        return sum(self.edges.values())

    def edge_list(self) -> list[tuple[VertexLabel, VertexLabel, int]]:
        """Edges as (u, v, mult) with u before v in vertex order."""
        out = []
        for key, mult in self.edges.items():
            u, v = sorted(key, key=self.index)
            out.append((u, v, mult))
        out.sort(key=lambda e: (self.index(e[0]), self.index(e[1])))
        return out

    def neighbors(self, v: VertexLabel) -> list[VertexLabel]:
        return [u for u in self.vertices if self.multiplicity(u, v)]

    def degree(self, v: VertexLabel) -> int:
        return sum(mult for key, mult in self.edges.items() if v in key)

    def leaves(self) -> list[VertexLabel]:
        return [v for v in self.vertices if self.degree(v) == 1]

    @property
    def has_apex(self) -> bool:
        return APEX in self

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: set() for v in self.vertices}
        for key in self.edges:
            u, v = tuple(key)
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return self.edge_count() == self.n - 1 and self.is_connected()

    def reordered(self, order: Iterable[VertexLabel]) -> "Multigraph":
        order = tuple(order)
        if set(order) != set(self.vertices) or len(order) != self.n:
            raise ValueError("order must be a permutation of the vertices")
        return Multigraph(order, dict(self.edges))

    def relabeled(self, mapping: Mapping[VertexLabel, VertexLabel]) -> "Multigraph":
        """Rename vertices, then sort into canonical order."""
        verts = sorted((mapping[v] for v in self.vertices), key=VertexLabel.sort_key)
        edges = {
            frozenset(mapping[x] for x in key): mult
            for key, mult in self.edges.items()
        }
        return Multigraph(tuple(verts), edges)

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        vertices = []
        for i, v in enumerate(self.vertices):
            entry = {"id": i, "role": v.role.value}
            if v.role is not Role.CONE_APEX:
                entry["index"] = v.index
            vertices.append(entry)
        edges = [
            {"u": self.index(u), "v": self.index(v), "mult": m}
            for u, v, m in self.edge_list()
        ]
        return {"vertices": vertices, "edges": edges}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multigraph":
        by_id = {}
        for entry in data["vertices"]:
            by_id[entry["id"]] = VertexLabel(Role(entry["role"]), entry.get("index", 0))
        verts = tuple(by_id[i] for i in sorted(by_id))
        mult: dict[frozenset, int] = {}
        for e in data["edges"]:
            key = _edge_key(by_id[e["u"]], by_id[e["v"]])
            mult[key] = mult.get(key, 0) + int(e["mult"])
        return cls(verts, mult)

    @classmethod
    def from_json(cls, text: str) -> "Multigraph":
        return cls.from_json_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v, m in self.edge_list():
            for _ in range(m):
                lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- family builders ----------------------------------------------------


def build_bicoconut(params: FamilyParams) -> Multigraph:
    """The tree T(p, s1, s2): a p-vertex path with s1 leaves hung on pi_1
    and s2 leaves hung on pi_p.

    s1 = 0 or s2 = 0 is accepted (a coconut tree or a bare path).
    """
    p, s1, s2 = params.p, params.s1, params.s2
    if p < 1 or s1 < 0 or s2 < 0:
        raise InvalidParameters(f"need p >= 1 and s1, s2 >= 0, got {params}")
    verts = [path(i) for i in range(1, p + 1)]
    verts += [left_leaf(i) for i in range(1, s1 + 1)]
    verts += [right_leaf(j) for j in range(1, s2 + 1)]
    edges = [(path(i), path(i + 1)) for i in range(1, p)]
    edges += [(path(1), left_leaf(i)) for i in range(1, s1 + 1)]
    edges += [(path(p), right_leaf(j)) for j in range(1, s2 + 1)]
    return Multigraph.from_edges(verts, edges)


def build_coconut(p: int, s: int) -> Multigraph:
    """The coconut tree CT(p, s): a p-vertex path with s leaves on pi_p.

    pi_1 is the path end *not* carrying the leaves. This is T(p, 0, s); for
    p >= 2 it is isomorphic to T(p-1, 1, s) via :func:`coconut_to_bicoconut_map`.
    """
    if p < 1 or s < 1:
        raise InvalidParameters(f"need p, s >= 1, got p={p}, s={s}")
    return build_bicoconut(FamilyParams(p, 0, s))


def coconut_to_bicoconut_map(p: int, s: int) -> dict[VertexLabel, VertexLabel]:
    """Vertex map sending CT(p, s) onto T(p-1, 1, s)."""
    if p < 2:
        raise InvalidParameters("CT(p, s) = T(p-1, 1, s) needs p >= 2")
    mapping = {path(1): left_leaf(1)}
    mapping.update({path(i): path(i - 1) for i in range(2, p + 1)})
    mapping.update({right_leaf(j): right_leaf(j) for j in range(1, s + 1)})
    return mapping


def build_left_comb(p: int) -> Multigraph:
    """Left comb T_p on 2p-1 vertices: spine pi_1..pi_p, leaf ell_i on pi_{i+1}."""
    if p < 2:
        raise InvalidParameters(f"left comb needs p >= 2, got {p}")
    verts = [path(i) for i in range(1, p + 1)]
    verts += [comb_leaf(i) for i in range(1, p)]
    edges = [(path(i), path(i + 1)) for i in range(1, p)]
    edges += [(path(i + 1), comb_leaf(i)) for i in range(1, p)]
    return Multigraph.from_edges(verts, edges)


def cone(g: Multigraph) -> Multigraph:
    if g.n < 1:
        raise InvalidParameters("cannot cone over an empty graph")
    if g.has_apex:
        raise InvalidParameters("graph already has a cone apex")
    edges = dict(g.edges)
    for v in g.vertices:
        edges[_edge_key(APEX, v)] = 1
    return Multigraph(g.vertices + (APEX,), edges)


def cone_plus(g: Multigraph, v: VertexLabel) -> Multigraph:
    """Cone over ``g`` with the apex-v edge doubled."""
    if v not in g:
        raise InvalidParameters(f"vertex {v} not in graph")
    if not g.is_tree():
        raise InvalidParameters("cone_plus expects a tree")
    c = cone(g)
    edges = dict(c.edges)
    edges[_edge_key(APEX, v)] = 2
    return Multigraph(c.vertices, edges)


def delete_leaf(t: Multigraph, leaf: VertexLabel) -> tuple[Multigraph, VertexLabel]:
    """Remove a leaf; return the smaller tree and the leaf's old neighbor."""
    if leaf not in t:
        raise InvalidParameters(f"vertex {leaf} not in graph")
    if t.degree(leaf) != 1:
        raise InvalidParameters(f"{leaf} is not a leaf")
    (nbr,) = t.neighbors(leaf)
    edges = {k: m for k, m in t.edges.items() if leaf not in k}
    verts = tuple(v for v in t.vertices if v != leaf)
    return Multigraph(verts, edges), nbr


def family_trees(max_vertices: int) -> list[tuple[str, Multigraph]]:
    """Every bi-coconut, coconut and left-comb tree with at most ``max_vertices``
    vertices, each with a short descriptive name."""
    out = []
    for p in range(1, max_vertices + 1):
        for s1 in range(1, max_vertices + 1):
            for s2 in range(1, max_vertices + 1):
                if p + s1 + s2 <= max_vertices:
                    out.append((f"T({p},{s1},{s2})", build_bicoconut(FamilyParams(p, s1, s2))))
    for p in range(1, max_vertices + 1):
        for s in range(1, max_vertices + 1):
            if p + s <= max_vertices:
                out.append((f"CT({p},{s})", build_coconut(p, s)))
    for p in range(2, max_vertices + 1):
        if 2 * p - 1 <= max_vertices:
            out.append((f"comb({p})", build_left_comb(p)))
    return out
