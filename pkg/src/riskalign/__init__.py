"""Security risk alignment toolkit for enterprise architecture models.

Load a model (exchange XML or the tabular text format), classify its
elements into risk management roles by running a framework alignment table
as a ruleset, validate risk registers against the structural rules of the
domain model, and trace risks through the architecture.
"""

from .analysis import CoverageReport, TraceNode, coverage, impact_propagation, trace
from .archimate_xml import import_archimate
from .builtin_tables import builtin_ruleset, builtin_table_text
from .classify import (
    ClassificationFact,
    ClassificationSet,
    ReviewEntry,
    ReviewOverlay,
    Tier,
    apply_review,
    classify_element,
    classify_model,
    parse_overlay,
    tier_of,
    unmapped_report,
)
from .concepts import CatalogEntry, ISSRMConcept, concept_catalog, parse_concept
from .eamodel import (
    EAElement,
    EAModel,
    EARelationship,
    export_tabular,
    neighbors,
    normalize_name,
    parse_tabular,
)
from .errors import InputError, RiskAlignError
from .mappings import (
    AlignmentRule,
    AnnotationTarget,
    AttributeTarget,
    CompositeTarget,
    ConceptTarget,
    MappingKind,
    MappingType,
    NoTarget,
    Ruleset,
    parse_ruleset,
    resolve_rules,
    serialize_ruleset,
    source_synonyms,
)
from .register import (
    RiskCase,
    RiskRegister,
    induced_graph,
    parse_risk_catalog,
    validate_register,
)
from .riskgraph import (
    Entity,
    Relation,
    RelationKind,
    RiskGraph,
    Severity,
    Violation,
    validate_structure,
)

__version__ = "0.1.0"
