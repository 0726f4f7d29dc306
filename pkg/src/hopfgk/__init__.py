"""Exact symbolic workbench for presented connected Hopf algebras."""

from .algebra import AlgebraElement, GeneratorSymbol, PresentationMismatch, SymbolTable, commutator_free
from .builtins import builtins, load, samples
from .coalgebra import (
    antipode,
    coproduct,
    counit,
    delta_ac,
    delta_cc,
    delta_map,
    sweedler,
    verify_hopf_axioms,
)
from .dsl import Diagnostic, DSLError, PresentationSource, format_presentation, parse
from .growth import GrowthReport, growth_function, theorem00_check
from .linalg import (
    FilteredBasis,
    ResourceLimitError,
    SubspaceBasis,
    anti_cocommutative_space,
    enumerate_basis,
    kernel_of,
    primitive_space,
)
from .rewrite import (
    InvalidSubalgebra,
    NonConfluentError,
    Presentation,
    PresentationError,
    Relation,
    SubalgebraSpec,
    check_confluence,
    is_member,
    normal_form,
)
from .structure import (
    adjoint_left,
    adjoint_right,
    bracket_criterion,
    check_almost_centralizing,
    check_normal,
    lemma10_equivalence,
    lemma14_check,
)
from .tensor import TensorElement

__version__ = "0.1.0"
