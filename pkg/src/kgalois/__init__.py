"""Exact computations with Galois objects over k^G: data, induced objects, gradings and obstructions."""

__version__ = "0.1.0"

from .groups import FiniteGroup, Subgroup, cyclic_group, direct_product, elementary_abelian, symmetric_group
from .fields import FieldTower, cyclotomic_tower, finite_field_tower, rational_tower
from .cohomology import Cochain, second_cohomology, is_nondegenerate, center_dimension
from .algebra import EquivariantAlgebra, induced_algebra, twisted_group_algebra, verify_galois, verify_simple_fast
from .datum import GaloisDatum, are_equivalent, build_object, make_datum, solve_gamma, validate_datum
from .grading import recover_datum
from .obstructions import obstruction_report
from .classify import classify
