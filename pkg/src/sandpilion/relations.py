"""Relation matrices presenting K(Cone(T(p, s1, s2))) on the leaf generators.

Row conventions:

* ``build_M`` rows are indexed by pi_{p-1}, pi_p, sigma_(1,1..s1), sigma_(2,1..s2);
  each column is a relation that must hold in the sandpile group.
* ``build_M_prime`` rows are indexed by sigma_(2,1), sigma_(1,1..s1),
  sigma_(2,2..s2); it presents the whole group on the leaves.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .errors import InvalidParameters
from .formulas import a_value, fib, t_closed
from .graphs import (
    APEX,
    FamilyParams,
    Multigraph,
    VertexLabel,
    build_bicoconut,
    cone,
    left_leaf,
    path,
    right_leaf,
)
from .linalg import IntMatrix, determinant, in_image, smith_normal_form
from .sandpile import reduced_laplacian, sandpile_group


def _require_p2(params: FamilyParams) -> None:
    params.require(min_p=2)


@dataclass(frozen=True)
class RelationScalars:
    d: int
    e: int
    f: int
    g: int
    h: int
    y: int
    z: int
    two_x: int


def scalars(params: FamilyParams) -> RelationScalars:
    _require_p2(params)
    p, s1, s2 = params.p, params.s1, params.s2
    f2, f4, f6 = fib(2 * p - 2), fib(2 * p - 4), fib(2 * p - 6)
    return RelationScalars(
        d=(s1 + 2) * f2 - f4,
        e=f6 - (s1 + 2) * f4,
        f=s2 + 2,
        g=f2,
        h=-f4,
        y=(s2 + 4) * f2 - 2 * f4,
        z=(4 * s1 + 2 * s2 + s1 * s2 + 8) * f2 + (-2 * s1 - s2 - 8) * f4 + 2 * f6,
        two_x=(4 * s1 + 4 * s2 + s1 * s2 + 16) * f2 - 2 * (s1 + s2 + 8) * f4 + 4 * f6,
    )


def two_x_from_blocks(params: FamilyParams) -> int:
    """2 x(p) from its block definition 2(df+e) - s2 d - s1(gf + h - s2 g / 2)."""
    sc = scalars(params)
    s1, s2 = params.s1, params.s2
    return (
        4 * (sc.d * sc.f + sc.e)
        - 2 * s2 * sc.d
        - 2 * s1 * (sc.g * sc.f + sc.h)
        + s1 * s2 * sc.g
    )


def m_row_labels(params: FamilyParams) -> list[VertexLabel]:
    p, s1, s2 = params.p, params.s1, params.s2
    return (
        [path(p - 1), path(p)]
        + [left_leaf(i) for i in range(1, s1 + 1)]
        + [right_leaf(j) for j in range(1, s2 + 1)]
    )


def m_prime_row_labels(params: FamilyParams) -> list[VertexLabel]:
    s1, s2 = params.s1, params.s2
    return (
        [right_leaf(1)]
        + [left_leaf(i) for i in range(1, s1 + 1)]
        + [right_leaf(j) for j in range(2, s2 + 1)]
    )


def build_M(params: FamilyParams) -> IntMatrix:
    _require_p2(params)
    sc = scalars(params)
    s1, s2 = params.s1, params.s2
    n = 2 + s1 + s2
    rows = [[0] * n for _ in range(n)]
    rows[0][0], rows[0][1] = sc.d, -1
    rows[1][0], rows[1][1] = sc.e, sc.f
    for i in range(s1):
        rows[0][2 + i] = sc.g
        rows[1][2 + i] = sc.h
        rows[2 + i][0] = -1
        rows[2 + i][2 + i] = -2
    for j in range(s2):
        c = 2 + s1 + j
        rows[1][c] = 1
        rows[c][1] = -1
        rows[c][c] = -2
    return IntMatrix.from_rows(rows, cols=n)


def build_M_prime(params: FamilyParams, variant: str = "eq26") -> IntMatrix:
    """The (s1+s2)-square presentation matrix on the leaf generators.

    ``variant="restated"`` swaps the first-row middle entry 2(gf+h) - g for
    2(gf+h) - s2 g, as in a later display of the same matrix; everything
    else is unchanged.
    """
    _require_p2(params)
    if variant not in ("eq26", "restated"):
        raise ValueError(f"unknown variant {variant!r}")
    sc = scalars(params)
    s1, s2 = params.s1, params.s2
    d, e, f, g, h = sc.d, sc.e, sc.f, sc.g, sc.h
    mid = 2 * (g * f + h) - (s2 * g if variant == "restated" else g)
    n = s1 + s2
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = 2 * (d * f + e) - d
    for i in range(s1):
        rows[0][1 + i] = mid
        rows[1 + i][0] = -1
        rows[1 + i][1 + i] = -2
    for j in range(s2 - 1):
        r = 1 + s1 + j
        rows[0][r] = 2
        rows[r][0] = -d
        for i in range(s1):
            rows[r][1 + i] = -g
        rows[r][r] = -2
    return IntMatrix.from_rows(rows, cols=n)


def n_matrix_valid(params: FamilyParams) -> bool:
    return params.p >= 2 and params.p % 3 != 1 and params.s1 >= 2 and params.s2 >= 2


def build_N(params: FamilyParams) -> IntMatrix:
    if not n_matrix_valid(params):
        raise InvalidParameters(
            f"N needs p >= 2, p != 1 mod 3 and s1, s2 >= 2, got {params}"
        )
    sc = scalars(params)
    return IntMatrix.from_rows([[-sc.z, -sc.y], [params.s1, 2]])


def expected_N_diag(params: FamilyParams) -> tuple[int, int]:
    a = a_value(params)
    if params.s1 % 2 or params.s2 % 2:
        return (1, a)
    return (2, a // 2)


# -- checks against the actual Laplacian --------------------------------


def _cone_lbar(params: FamilyParams) -> tuple[Multigraph, IntMatrix]:
    t = build_bicoconut(params)
    g = cone(t)
    return g, reduced_laplacian(g, APEX)


def _vector(g: Multigraph, coeffs: dict[VertexLabel, int]) -> list[int]:
    # Apex is last in canonical order, so tree indices are Lbar indices.
    v = [0] * (g.n - 1)
    for label, c in coeffs.items():
        v[g.index(label)] += c
    return v


def trunk_relations(params: FamilyParams) -> list[tuple[str, dict[VertexLabel, int]]]:
    """Named relations (as coefficient maps, "lhs - rhs") that must vanish in K."""
    _require_p2(params)
    p, s1, s2 = params.p, params.s1, params.s2
    pi = path
    rels: list[tuple[str, dict[VertexLabel, int]]] = []

    def rel(name: str, *terms: tuple[int, VertexLabel]) -> None:
        coeffs: dict[VertexLabel, int] = {}
        for c, v in terms:
            coeffs[v] = coeffs.get(v, 0) + c
        rels.append((name, coeffs))

    for i in range(1, s1 + 1):
        rel(f"leaf1[{i}]", (2, left_leaf(i)), (-1, pi(1)))
    for j in range(1, s2 + 1):
        rel(f"leaf2[{j}]", (2, right_leaf(j)), (-1, pi(p)))
    rel(
        "degree[pi_1]",
        (s1 + 2, pi(1)),
        (-1, pi(2)),
        *[(-1, left_leaf(i)) for i in range(1, s1 + 1)],
    )
    rel(
        "degree[pi_p]",
        (s2 + 2, pi(p)),
        (-1, pi(p - 1)),
        *[(-1, right_leaf(j)) for j in range(1, s2 + 1)],
    )
    for i in range(2, p):
        rel(f"path[{i}]", (3, pi(i)), (-1, pi(i - 1)), (-1, pi(i + 1)))
    for i in range(2, p + 1):
        rel(
            f"trunk1[{i}]",
            (1, pi(1)),
            (-fib(2 * i - 2), pi(i - 1)),
            (fib(2 * i - 4), pi(i)),
        )
        rel(
            f"trunk2[{i}]",
            (1, pi(2)),
            (-fib(2 * i - 4), pi(i - 1)),
            (fib(2 * i - 6), pi(i)),
        )
    return rels


def verify_trunk_relations(params: FamilyParams) -> bool:
    g, lbar = _cone_lbar(params)
    return all(in_image(lbar, _vector(g, coeffs)) for _, coeffs in trunk_relations(params))


def verify_M_columns(params: FamilyParams) -> bool:
    """Each column of M, read in full vertex coordinates, lies in im(Lbar)."""
    g, lbar = _cone_lbar(params)
    m = build_M(params)
    labels = m_row_labels(params)
    for j in range(m.cols):
        coeffs: dict[VertexLabel, int] = {}
        for label, c in zip(labels, m.column(j)):
            coeffs[label] = coeffs.get(label, 0) + c
        if not in_image(lbar, _vector(g, coeffs)):
            return False
    return True


def verify_M_prime_columns(params: FamilyParams) -> bool:
    g, lbar = _cone_lbar(params)
    m = build_M_prime(params)
    labels = m_prime_row_labels(params)
    return all(
        in_image(lbar, _vector(g, dict(zip(labels, m.column(j))))) for j in range(m.cols)
    )


def verify_detM_prime(params: FamilyParams) -> bool:
    params.require(min_p=2)
    det = abs(determinant(build_M_prime(params)))
    t = t_closed(params)
    a = a_value(params)
    sc = scalars(params)
    shift = params.s1 + params.s2 - 2
    return (
        det == t
        and det == (a << shift)
        and sc.two_x == a
        and two_x_from_blocks(params) == sc.two_x
    )


def verify_cokernel_equivalence(params: FamilyParams) -> bool:
    params.require(min_p=2)
    lhs = smith_normal_form(build_M_prime(params)).nontrivial()
    rhs = sandpile_group(cone(build_bicoconut(params))).factors
    return lhs == rhs


def verify_N(params: FamilyParams) -> bool | None:
    """det N = +-a and the Smith form matches the parity case; None if N is undefined."""
    if not n_matrix_valid(params):
        return None
    n = build_N(params)
    snf = smith_normal_form(n)
    a = a_value(params)
    return abs(determinant(n)) == a and snf.diag == expected_N_diag(params)


@dataclass
class VerificationRecord:
    p: int
    s1: int
    s2: int
    checks: dict

    def to_json_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=False)


def verification_report(params: FamilyParams) -> VerificationRecord:
    return VerificationRecord(
        params.p,
        params.s1,
        params.s2,
        {
            "trunk": verify_trunk_relations(params),
            "detMprime": verify_detM_prime(params),
            "cokernel": verify_cokernel_equivalence(params),
            "N": verify_N(params),
        },
    )
