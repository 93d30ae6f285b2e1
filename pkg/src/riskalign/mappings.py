"""Alignment rules: how framework concepts map onto the ISSRM vocabulary.

A ruleset is an executable transcription of one framework-to-ISSRM alignment
table. Each rule keeps its table row index and the verbatim source label,
mapping type and running example, so reports can cite the exact line a
classification came from.

Text form, one rule per line after the header:

    RULESET|<framework id>|<version note>
    <source>|<section>|<target>|<mapping type>|<condition>|<example>

Target grammar: NONE, NONE:<reason>, @attributes, <Concept>,
<Concept>::<attr> ("*" stands for an unnamed attribute), or a composite
<Concept>+<Concept>. Mapping type is one of the six semantic relation names,
blank for an unspecified cell, or any other token kept verbatim as a
non-standard type. Condition is blank or <key>=<value>.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .concepts import ISSRMConcept, parse_concept
from .eamodel import FRAMEWORKS, normalize_name
from .errors import RulesetFormatError, UnknownFrameworkError
from . import recordio


class MappingKind(enum.Enum):
    EQUIVALENCE = "equivalence"
    GENERALISATION = "generalisation"
    SPECIALISATION = "specialisation"
    AGGREGATION = "aggregation"
    COMPOSITION = "composition"
    ASSOCIATION = "association"
    UNSPECIFIED = "unspecified"
    NON_STANDARD = "non-standard"


_STANDARD_KINDS = {
    MappingKind.EQUIVALENCE,
    MappingKind.GENERALISATION,
    MappingKind.SPECIALISATION,
    MappingKind.AGGREGATION,
    MappingKind.COMPOSITION,
    MappingKind.ASSOCIATION,
}


@dataclass(frozen=True)
class MappingType:
    """A semantic mapping relation, read "source is a <kind> of target".

    Non-standard table tokens are carried verbatim in text; unspecified
    stands for a blank (or N/A) type cell. Both always warrant a
    transcription warning.
    """

    kind: MappingKind
    text: str = ""

    @property
    def is_standard(self) -> bool:
        return self.kind in _STANDARD_KINDS

    def __str__(self) -> str:
        if self.kind is MappingKind.NON_STANDARD:
            return self.text
        if self.kind is MappingKind.UNSPECIFIED:
            return ""
        return self.kind.value


EQUIVALENCE = MappingType(MappingKind.EQUIVALENCE)
GENERALISATION = MappingType(MappingKind.GENERALISATION)
SPECIALISATION = MappingType(MappingKind.SPECIALISATION)
AGGREGATION = MappingType(MappingKind.AGGREGATION)
COMPOSITION = MappingType(MappingKind.COMPOSITION)
ASSOCIATION = MappingType(MappingKind.ASSOCIATION)
UNSPECIFIED = MappingType(MappingKind.UNSPECIFIED)


def non_standard(text: str) -> MappingType:
    if not text:
        raise ValueError("non-standard mapping type needs its verbatim token")
    return MappingType(MappingKind.NON_STANDARD, text)


def parse_mapping_type(token: str) -> MappingType:
    token = token.strip()
    if not token or token.lower() == "n/a":
        return UNSPECIFIED
    lowered = token.lower()
    for kind in _STANDARD_KINDS:
        if lowered == kind.value:
            return MappingType(kind)
    return non_standard(token)


# --- target specifications ---------------------------------------------------


@dataclass(frozen=True)
class ConceptTarget:
    concept: ISSRMConcept


@dataclass(frozen=True)
class AttributeTarget:
    """An attribute of a concept; attribute "*" means the cell named none."""

    concept: ISSRMConcept
    attribute: str


@dataclass(frozen=True)
class CompositeTarget:
    concepts: tuple[ISSRMConcept, ...]


@dataclass(frozen=True)
class AnnotationTarget:
    """The table cell "attributes of the concepts" as a whole."""


@dataclass(frozen=True)
class NoTarget:
    reason: str = ""


TargetSpec = ConceptTarget | AttributeTarget | CompositeTarget | AnnotationTarget | NoTarget


def target_concepts(target: TargetSpec) -> frozenset[ISSRMConcept]:
    """Concepts a target contributes facts for."""
    if isinstance(target, ConceptTarget):
        return frozenset({target.concept})
    if isinstance(target, AttributeTarget):
        return frozenset({target.concept})
    if isinstance(target, CompositeTarget):
        return frozenset(target.concepts)
    return frozenset()


def parse_target(text: str) -> TargetSpec:
    text = text.strip()
    if not text:
        raise ValueError("empty target")
    if text == "NONE" or text.startswith("NONE:"):
        return NoTarget(text[5:].strip() if text.startswith("NONE:") else "")
    if text == "@attributes":
        return AnnotationTarget()
    if "::" in text:
        concept_token, _, attribute = text.partition("::")
        attribute = attribute.strip()
        if not attribute:
            raise ValueError(f"attribute target {text!r} names no attribute")
        concept = _rule_concept(concept_token)
        return AttributeTarget(concept, attribute)
    if "+" in text:
        concepts = tuple(_rule_concept(part) for part in text.split("+"))
        if len(set(concepts)) != len(concepts):
            raise ValueError(f"composite target {text!r} repeats a concept")
        return CompositeTarget(concepts)
    return ConceptTarget(_rule_concept(text))


def _rule_concept(token: str) -> ISSRMConcept:
    concept = parse_concept(token)
    if concept is ISSRMConcept.ATTRIBUTE_ANNOTATION:
        raise ValueError(
            "AttributeAnnotation is only reachable through the @attributes target"
        )
    return concept


def serialize_target(target: TargetSpec) -> str:
    if isinstance(target, NoTarget):
        return f"NONE:{target.reason}" if target.reason else "NONE"
    if isinstance(target, AnnotationTarget):
        return "@attributes"
    if isinstance(target, AttributeTarget):
        return f"{target.concept}::{target.attribute}"
    if isinstance(target, CompositeTarget):
        return "+".join(str(c) for c in target.concepts)
    return str(target.concept)


# --- conditions ---------------------------------------------------------------


@dataclass(frozen=True)
class AttributeEquals:
    """Predicate over element attributes.

    Values "true"/"false" are boolean-valued: a missing attribute counts as
    "false", and any value other than "true" is false.
    """

    key: str
    value: str

    def evaluate(self, attributes: dict[str, str]) -> bool:
        if self.value == "true":
            return attributes.get(self.key) == "true"
        if self.value == "false":
            return attributes.get(self.key) != "true"
        return attributes.get(self.key) == self.value

    def __str__(self) -> str:
        return f"{self.key}={self.value}"


def parse_condition(text: str) -> AttributeEquals | None:
    text = text.strip()
    if not text:
        return None
    key, sep, value = text.partition("=")
    if not sep or not key.strip() or not value.strip():
        raise ValueError(f"malformed condition {text!r}; expected key=value")
    return AttributeEquals(key.strip(), value.strip())


# --- rules and rulesets --------------------------------------------------------


@dataclass(frozen=True)
class AlignmentRule:
    framework: str
    row: int  # 1-based table row; multi-rule rows share the index
    section: str
    source: str  # normalized source concept label, verbatim otherwise
    target: TargetSpec
    mapping_type: MappingType
    condition: AttributeEquals | None = None
    example: str = ""


def source_synonyms(source: str) -> tuple[str, ...]:
    """Names under which a rule source is matched.

    The printed label is always included. Slash-separated alternatives are
    split; a single-word continuation inherits the head words of the first
    alternative ("application function/ interaction" also matches
    "application interaction"). An attached parenthetical is an alternation
    ("person(nel) role" matches "person role" and "personnel role"); a
    free-standing parenthetical is optional ("business tasks
    (specifications)" also matches "business tasks").
    """
    source = normalize_name(source)
    names: list[str] = [source]

    parts = [p.strip() for p in source.split("/") if p.strip()]
    head_words = parts[0].split() if parts else []
    for index, part in enumerate(parts):
        expanded = part
        if index > 0 and len(part.split()) == 1 and len(head_words) > 1:
            expanded = " ".join(head_words[:-1] + [part])
        for variant in _parenthetical_variants(expanded):
            if variant and variant not in names:
                names.append(variant)
    return tuple(names)


_ATTACHED = re.compile(r"(\w+)\((\w+)\)")
_FREESTANDING = re.compile(r"\s*\([^()]*\)")


def _parenthetical_variants(name: str) -> list[str]:
    variants = [name]
    if _ATTACHED.search(name):
        variants.append(normalize_name(_ATTACHED.sub(r"\1", name)))
        variants.append(normalize_name(_ATTACHED.sub(r"\1\2", name)))
    stripped = normalize_name(_FREESTANDING.sub(" ", name))
    if stripped and stripped != name:
        variants.append(stripped)
    return variants


class Ruleset:
    """An ordered set of alignment rules for one framework.

    Immutable once built. Transcription warnings cover every rule whose
    mapping type is unspecified or non-standard.
    """

    def __init__(self, framework: str, version_note: str,
                 rules: list[AlignmentRule] | tuple[AlignmentRule, ...]):
        if framework not in FRAMEWORKS:
            raise UnknownFrameworkError(
                f"unknown framework {framework!r}; expected one of "
                + ", ".join(FRAMEWORKS)
            )
        self.framework = framework
        self.version_note = version_note
        self.rules = tuple(rules)
        seen: set[tuple[str, str, object]] = set()
        index: dict[str, list[AlignmentRule]] = {}
        warnings: list[str] = []
        for rule in self.rules:
            if rule.framework != framework:
                raise RulesetFormatError(
                    f"rule for {rule.framework!r} in a {framework!r} ruleset"
                )
            key = (rule.source, serialize_target(rule.target), rule.condition)
            if key in seen:
                raise RulesetFormatError(
                    f"duplicate rule for {rule.source!r} "
                    f"(target {serialize_target(rule.target)!r})"
                )
            seen.add(key)
            for name in source_synonyms(rule.source):
                index.setdefault(name, []).append(rule)
            if rule.mapping_type.kind is MappingKind.UNSPECIFIED:
                warnings.append(
                    f"row {rule.row} ({rule.source}): mapping type cell is blank"
                )
            elif rule.mapping_type.kind is MappingKind.NON_STANDARD:
                warnings.append(
                    f"row {rule.row} ({rule.source}): non-standard mapping type "
                    f"{rule.mapping_type.text!r}"
                )
        self._index = index
        self.warnings = tuple(warnings)

    @property
    def row_count(self) -> int:
        return len({rule.row for rule in self.rules})

    def rules_for(self, concept_name: str) -> tuple[AlignmentRule, ...]:
        """All rules whose source matches a concept name, in table order."""
        return tuple(self._index.get(normalize_name(concept_name), ()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ruleset):
            return NotImplemented
        return (
            self.framework == other.framework
            and self.version_note == other.version_note
            and self.rules == other.rules
        )

    def __repr__(self) -> str:
        return f"Ruleset({self.framework!r}, {len(self.rules)} rules)"


def resolve_rules(
    ruleset: Ruleset, concept_name: str, attributes: dict[str, str] | None = None
) -> tuple[AlignmentRule, ...]:
    """Rules applicable to one element: source matches and condition holds."""
    attributes = attributes or {}
    return tuple(
        rule
        for rule in ruleset.rules_for(concept_name)
        if rule.condition is None or rule.condition.evaluate(attributes)
    )


def parse_ruleset(text: str) -> Ruleset:
    """Parse ruleset text. Errors carry 1-based line numbers."""
    header: tuple[str, str] | None = None
    rules: list[AlignmentRule] = []
    row = 0
    previous_key: tuple[str, str] | None = None

    for lineno, fields in recordio.iter_records(text):
        if header is None:
            if fields[0] != "RULESET" or len(fields) != 3:
                raise RulesetFormatError(
                    "expected RULESET|<framework>|<note> as the first record", lineno
                )
            if fields[1] not in FRAMEWORKS:
                raise RulesetFormatError(
                    f"unknown framework {fields[1]!r}; expected one of "
                    + ", ".join(FRAMEWORKS),
                    lineno,
                )
            header = (fields[1], fields[2])
            continue
        if len(fields) != 6:
            raise RulesetFormatError(
                f"rule line needs 6 fields, got {len(fields)}", lineno
            )
        source_label, section, target_text, type_text, condition_text, example = fields
        source = normalize_name(source_label)
        if not source:
            raise RulesetFormatError("rule with empty source", lineno)
        try:
            target = parse_target(target_text)
            mapping_type = parse_mapping_type(type_text)
            condition = parse_condition(condition_text)
        except ValueError as exc:
            raise RulesetFormatError(str(exc), lineno) from None
        key = (source, section)
        if key != previous_key:
            row += 1
            previous_key = key
        rules.append(
            AlignmentRule(
                framework=header[0],
                row=row,
                section=section,
                source=source,
                target=target,
                mapping_type=mapping_type,
                condition=condition,
                example=example,
            )
        )

    if header is None:
        raise RulesetFormatError("empty ruleset text; RULESET record missing")
    return Ruleset(header[0], header[1], rules)


def serialize_ruleset(ruleset: Ruleset) -> str:
    """Serialize a ruleset; parse_ruleset(serialize_ruleset(rs)) == rs."""
    lines = [recordio.join_record(("RULESET", ruleset.framework, ruleset.version_note))]
    for rule in ruleset.rules:
        lines.append(
            recordio.join_record(
                (
                    rule.source,
                    rule.section,
                    serialize_target(rule.target),
                    str(rule.mapping_type),
                    str(rule.condition) if rule.condition else "",
                    rule.example,
                )
            )
        )
    return "\n".join(lines) + "\n"
