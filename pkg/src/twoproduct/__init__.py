"""Exact two-product (Lie + Jordan) algebras, their representations and composites."""

from .algebra import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    Algebra,
    CompositionClass,
    UnsupportedError,
    associator,
    compatibility_defect,
    jacobi_defect,
    jordan_defect,
    leibniz_defect,
)
from .audit import AuditReport, run_audit
from .chsh import ChshResult, chsh_classical_max, chsh_quantum
from .coproduct import (
    AnsatzConstraint,
    NoSolutionError,
    SolutionFamily,
    derive_coproduct,
    single_product_infeasibility,
    solve,
)
from .matrix import MatrixAlgebra, SquareMatrix, kron, mat_alpha, mat_sigma, pauli
from .parser import ParseError, parse_expression
from .phase import PhaseAlgebra, PhasePoly, moyal_cosine, moyal_sine, poisson, star
from .scalar import PairScalar
from .tensor import CoproductTable, TensorAlgebra, TensorElement, canonical_table

__all__ = [
    "ELLIPTIC", "HYPERBOLIC", "PARABOLIC", "Algebra", "AnsatzConstraint", "AuditReport",
    "ChshResult", "CompositionClass", "CoproductTable", "MatrixAlgebra", "NoSolutionError",
    "PairScalar", "ParseError", "PhaseAlgebra", "PhasePoly", "SolutionFamily", "SquareMatrix",
    "TensorAlgebra", "TensorElement", "UnsupportedError", "associator", "canonical_table",
    "chsh_classical_max", "chsh_quantum", "compatibility_defect", "derive_coproduct",
    "jacobi_defect", "jordan_defect", "kron", "leibniz_defect", "mat_alpha", "mat_sigma",
    "moyal_cosine", "moyal_sine", "parse_expression", "pauli", "poisson", "run_audit",
    "single_product_infeasibility", "solve", "star",
]
