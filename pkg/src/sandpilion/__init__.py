"""Exact spanning-tree counts and sandpile groups for cones over coconut,
bi-coconut and left comb trees."""
from .errors import BudgetExceeded, DisconnectedGraphError, InvalidParameters
from .formulas import (
    CaseTag,
    GroupPrediction,
    a_value,
    b,
    coconut_plus_tau,
    coconut_tau,
    fib,
    gf_coefficients,
    predict_group,
    t_closed,
)
from .graphs import (
    FamilyParams,
    Multigraph,
    VertexLabel,
    build_bicoconut,
    build_coconut,
    build_left_comb,
    cone,
    cone_plus,
)
from .linalg import IntMatrix, determinant, smith_normal_form
from .oracle import brute_force_tau, deletion_contraction_tau
from .sandpile import AbelianGroup, comb_claims, mu, sandpile_group, tau

__version__ = "0.1.0"
