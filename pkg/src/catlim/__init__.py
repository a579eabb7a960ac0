"""Finite categories, set-valued (co)limits, presheaves and concept knowledge bases."""
from .concept import (
    ConceptEntry, ConceptKB, DecompositionTree, FunctorTask, HomTask, LimitExpression, RandomExtractor,
    TaskSampler, apply_task, concept_presheaf, deconcept, diagram_analogy, extract_limit,
    first_extractor, learn_concept, limit_verifier, precisely_understands, realize, similarity_d,
    verify_with_tasks, verify_with_verifier,
)
from .errors import (
    BudgetExhausted, CapacityError, CatlimError, DocumentError, LawError, ResolutionError,
    StructuralError, UnsupportedTargetError,
)
from .fincat import FinCategory, Functor, build_shape, category, free_category, poset_category
from .finset import (
    CONTRAVARIANT, COVARIANT, INDUCTIVE, PROJECTIVE, FinFunction, FinSet, LimitResult, SetDiagram,
    colim, coequalizer, coproduct, equalizer, lim_as_nat_trans, lim_matching_families, limit,
    product, pullback, verify_universal_property,
)
from .presheaf import (
    NatTrans, SetPresheaf, find_natural_iso, ind_lim, pro_lim, yoneda, yoneda_check,
    yoneda_extension,
)

__version__ = "0.1.0"
