"""Weak curvature tensors P(h), curvature tensor spaces R(g), and their components."""

from .constructors import (
    adjoint,
    build_P,
    from_S,
    g2_lemma1,
    so_p0,
    so_p1,
    so_pair,
    spin7_lemma1,
    spsp1,
    u_m,
)
from .spaces import (
    AlgCurvTensor,
    PSpace,
    RSpace,
    WeakCurvTensor,
    module_action,
    pspace,
    ric_tilde,
    rspace,
    split_p0_p1,
    tau,
    weak_berger,
    wedge,
    weyl_component,
)
from .assembly import (
    CurvatureData,
    Theorem13Data,
    assemble,
    assemble_theorem13,
    assembled_subspace,
    check_type_constraints,
    data_basis,
    dimension_identity,
    extract,
    rebase_formula,
    rebase_witt,
    rspace_subspace,
    witt_change_matrix,
)
