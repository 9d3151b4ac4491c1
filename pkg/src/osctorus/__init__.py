"""Truncated oscillator-module calculus on the flat two-torus.

The package realises, at a finite truncation level, the right Hilbert-module
structure of wedge-graded oscillator duals over the full matrix algebra, the
infinitesimal metaplectic action in the ladder-operator basis, and a
gauge-coupled difference complex on a periodic grid whose cohomology ranks,
harmonic spaces and principal symbols can all be verified exactly.
"""

__version__ = "0.1.0"

from .fock import (
    FockVector,
    GradedElement,
    Side,
    StructureError,
    basis_vector,
    flat,
    graded_inner,
    inner_product,
    sharp,
    wedge_basis,
    wedge_dim,
)
from .compacts import (
    SINGULAR_RELTOL,
    CompactOp,
    adjoint,
    compose,
    op_norm,
    rank_one,
)
from .hilbert_module import (
    ModuleElement,
    act,
    assemble,
    ch_product,
    generators,
    module_norm,
    reconstruct,
)
from .metaplectic import (
    FULL_TURN,
    GENERATOR_LABELS,
    SpGenerator,
    drho,
    dsigma_check,
    dsigma_dual,
    equivariance_residuals,
    exponentiate,
)
from .torus_complex import (
    CochainField,
    GaugeField,
    TorusGrid,
    ch_equivariance_check,
    cohomology_ranks,
    coupled_d,
    discrete_d,
    gauge_transport_compacts,
    harmonic_ch_rank,
    hodge_laplacian,
    section_ch_product,
    symbol_exactness,
)

__all__ = [
    "__version__",
    "FockVector", "GradedElement", "Side", "StructureError",
    "basis_vector", "flat", "graded_inner", "inner_product", "sharp",
    "wedge_basis", "wedge_dim",
    "SINGULAR_RELTOL", "CompactOp", "adjoint", "compose", "op_norm", "rank_one",
    "ModuleElement", "act", "assemble", "ch_product", "generators",
    "module_norm", "reconstruct",
    "FULL_TURN", "GENERATOR_LABELS", "SpGenerator", "drho", "dsigma_check",
    "dsigma_dual", "equivariance_residuals", "exponentiate",
    "CochainField", "GaugeField", "TorusGrid", "ch_equivariance_check",
    "cohomology_ranks", "coupled_d", "discrete_d", "gauge_transport_compacts",
    "harmonic_ch_rank", "hodge_laplacian", "section_ch_product",
    "symbol_exactness",
]
