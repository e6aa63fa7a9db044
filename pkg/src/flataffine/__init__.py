"""Exact left-symmetric algebra tools and numeric developing maps for flat affine Lie groups."""

from .algebra import (BilinearForm, ProductTable, StructureConstants, check_jacobi, completeness_trace_check,
                      is_compatible, is_flat, is_left_symmetric, is_torsion_free, operator_relations_check)
from .developing import FlatAffineGroup, closed_form_development, develop, geodesic, parallel_transport
from .groups import ChartedGroup
from .symplectic import hess_connection, product_from_symplectic, symplectic_check
from .yang_baxter import Bivector, cybe_check, double_algebra, dual_bracket, dual_product

__version__ = "0.1.0"

__all__ = [
    "BilinearForm", "Bivector", "ChartedGroup", "FlatAffineGroup", "ProductTable", "StructureConstants",
    "check_jacobi", "closed_form_development", "completeness_trace_check", "cybe_check",
    "develop", "double_algebra", "dual_bracket", "dual_product", "geodesic", "hess_connection",
    "is_compatible", "is_flat", "is_left_symmetric", "is_torsion_free", "operator_relations_check",
    "parallel_transport", "product_from_symplectic", "symplectic_check",
]
