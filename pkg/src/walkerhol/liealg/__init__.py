"""Matrix Lie algebras and the subalgebras of sim(n)."""

from .catalog import (
    adjoint,
    complex_structure,
    g2,
    identify,
    parse_algebra,
    quaternionic_structures,
    so,
    so3_irrep,
    sp,
    sp1,
    spin7,
    spsp1,
    su,
    u,
    with_center,
)
from .core import (
    E,
    LieAlgebraBasis,
    bracket,
    center,
    commutant,
    derived_algebra,
    generated_subalgebra,
    is_skew,
    span_algebra,
    witt_form,
)
from .sim import (
    SimElement,
    SimSubalgebraSpec,
    classify,
    classify_sim_subalgebra,
    equals_spec,
    sim_bracket,
    sim_embed,
    sim_n,
)
