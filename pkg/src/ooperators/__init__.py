"""Exact computations for O-operators on associative algebras: the controlling
graded Lie algebra, cohomology, formal deformations and r-matrices."""

from .algebra import (Algebra, Bimodule, adjoint_bimodule, coadjoint_bimodule,
                      one_sided_bimodule, semidirect_product)
from .cochains import bracket, d_hoch, derived_bracket, theta
from .cohomology import cohomology_report, h0_direct
from .deformation import (TruncatedDeformation, check_order, extend, obstruction,
                          rigidity_certificate, trivial_deformation)
from .operators import (Operator, defect_witnesses, induced_dendriform, is_nijenhuis_element,
                        is_o_morphism, o_operator_defect)
from .problem import ProblemError, ProblemFile
from .rmatrix import Wedge2, induced_coproduct, is_r_matrix, r_operator

__all__ = [
    "Algebra", "Bimodule", "adjoint_bimodule", "coadjoint_bimodule", "one_sided_bimodule",
    "semidirect_product", "bracket", "d_hoch", "derived_bracket", "theta",
    "cohomology_report", "h0_direct", "TruncatedDeformation", "check_order", "extend",
    "obstruction", "rigidity_certificate", "trivial_deformation", "Operator",
    "defect_witnesses", "induced_dendriform", "is_nijenhuis_element", "is_o_morphism",
    "o_operator_defect", "ProblemError", "ProblemFile", "Wedge2", "induced_coproduct",
    "is_r_matrix", "r_operator",
]
