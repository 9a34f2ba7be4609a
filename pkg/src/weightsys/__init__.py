"""Exact-arithmetic Jacobi diagram algebras and Lie-algebra weight systems.

The package computes with two graded diagram spaces — trivalent graphs
with legs, and trivalent graphs attached to an oriented circle — modulo
the standard local relations, entirely over the rationals:

- enumeration of diagrams and quotient bases by exact elimination
  (:mod:`weightsys.diagrams`, :mod:`weightsys.algebra`);
- the structural maps between the spaces: leg-averaging onto the circle,
  closure, cap products, disjoint union, connect sum, and the wheels
  series (:mod:`weightsys.maps`);
- weight systems from metric Lie algebras by planned sparse tensor
  contraction (:mod:`weightsys.lie`, :mod:`weightsys.tensor`);
- self-checking verification suites (:mod:`weightsys.verify`) and a
  JSON-pipeline command line (:mod:`weightsys.cli`).
"""

from .algebra import (DiagramVector, QuotientBasis, equal_mod_relations,
                      ihx_generators, quotient_basis, reduce_vector,
                      stu_generators, vector_from_json, vector_to_json)
from .cache import default_cache_dir
from .diagrams import (CanonicalForm, Diagram, automorphism_count, bare_circle,
                       canonicalize, diagram_from_json, diagram_to_json,
                       empty_diagram, enumerate_diagrams, is_isomorphic,
                       validate)
from .errors import (DiagramError, GradingMismatchError, LieAlgebraError,
                     ResourceLimitError, SpaceMismatchError)
from .lie import (MetricLieAlgebra, Representation, StructureTensors, abelian,
                  builtin_algebra, check_lie, check_representation,
                  contraction_plan, derive_tensors, evaluate, evaluate_closed,
                  evaluate_naive, lie_algebra_from_json, lie_algebra_to_json,
                  naive_cost, sl2)
from .maps import (cap, chi, closure, connect_sum, disjoint_union,
                   exp_disjoint, modified_bernoulli, omega, strut, theta,
                   wheel, wheels_vector)
from .tensor import (ContractionPlan, SparseTensor, contract_network,
                     plan_contraction)
from .verify import (SUITES, run_suite, verify_chi_iso, verify_closure_omega,
                     verify_relations, verify_wheeling)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm", "ContractionPlan", "Diagram", "DiagramError",
    "DiagramVector", "GradingMismatchError", "LieAlgebraError",
    "MetricLieAlgebra", "QuotientBasis", "Representation",
    "ResourceLimitError", "SUITES", "SpaceMismatchError", "SparseTensor",
    "StructureTensors", "abelian", "automorphism_count", "bare_circle",
    "builtin_algebra", "canonicalize", "cap", "check_lie",
    "check_representation", "chi", "closure", "connect_sum",
    "contract_network", "contraction_plan", "default_cache_dir",
    "derive_tensors", "diagram_from_json", "diagram_to_json",
    "disjoint_union", "empty_diagram", "enumerate_diagrams",
    "equal_mod_relations", "evaluate", "evaluate_closed", "evaluate_naive",
    "exp_disjoint", "ihx_generators", "is_isomorphic",
    "lie_algebra_from_json", "lie_algebra_to_json", "modified_bernoulli",
    "naive_cost", "omega", "plan_contraction", "quotient_basis",
    "reduce_vector", "run_suite", "sl2", "strut", "stu_generators", "theta",
    "validate", "vector_from_json", "vector_to_json", "verify_chi_iso",
    "verify_closure_omega", "verify_relations", "verify_wheeling", "wheel",
    "wheels_vector",
]
