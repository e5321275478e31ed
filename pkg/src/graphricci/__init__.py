"""Bakry-Emery curvature of weighted graphs and machine checks of graph Harnack inequalities."""

from .curvature import (
    INF,
    CurvatureResult,
    LocalForms,
    check_cd,
    curvature_oracle,
    graph_curvature,
    local_forms,
    vertex_curvature,
)
from .graph import (
    DiameterStats,
    Graph,
    GraphError,
    bfs_distances,
    degree,
    diameter,
    dump_edge_list,
    gen_bridge_cliques,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_product,
    load_edge_list,
)
from .operators import (
    apply_laplacian,
    gamma,
    gamma2_def,
    gamma2_local,
    gradient_norm_sq,
    sym_laplacian_matrix,
)
from .spectra import EigenPair, EigenSolverError, Spectrum, eigen_residual, harmonic_eigenpairs, symmetric_eigen
from .verify import (
    BoundVariant,
    CheckResult,
    InadmissibleAlpha,
    VerificationReport,
    check_harnack_gradient,
    check_harnack_pointwise,
    check_inequality_11,
    check_lemma31,
    eigenvalue_bound,
    full_report,
)

__version__ = "0.1.0"
