"""tensordeg: exact-arithmetic toolkit for real 3-tensor degeneracy.

Feasibility reductions (quadratic -> bilinear -> pencil -> tensor) with
bidirectional witness transport, certified small-scale decision procedures,
exact hyperdeterminants for small boundary formats, and randomized
completion-polynomial testing.
"""

__version__ = "0.1.0"

from .exactmath import (  # noqa: F401
    DimensionError,
    Matrix,
    SturmChain,
    UniPoly,
    definiteness,
    det_exact,
    gcd_poly,
    kernel_basis,
    rank_exact,
    sturm_root_count,
)
from .instances import (  # noqa: F401
    BilinearInstance,
    PencilInstance,
    QuadraticInstance,
    Tensor3,
    WitnessTriple,
    contract_xy,
    contract_xz,
    contract_yz,
    verify_bilinear_witness,
    verify_pencil_witness,
    verify_quadratic_witness,
    verify_tensor_witness,
)
from .reductions import (  # noqa: F401
    bilinear_to_pencil,
    extract_bilinear_witness,
    extract_quad_witness,
    lift_bilinear_witness,
    lift_quad_witness,
    pencil_to_tensor,
    quad_to_bilinear,
    quad_to_tensor,
)
