"""Enterprise architecture models and their tabular text format.

An EAModel is a framework-tagged set of elements plus typed relationships.
Element concept names are stored normalized (lowercase, single spaces) so
they can be matched against alignment rule sources directly.

The tabular format is line oriented:

    FRAMEWORK|<framework id>
    E|<id>|<concept name>|<display name>|<k=v;k=v attributes>
    R|<id>|<relationship kind>|<source id>|<target id>

"#" starts a comment line; "\\|" escapes a pipe inside a field. Parsing the
export of a model yields an equal model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DuplicateIdError,
    ModelFormatError,
    ModelStructureError,
    UnknownElementError,
    UnknownFrameworkError,
)
from . import recordio

FRAMEWORKS = ("archimate21", "togaf91", "dodaf202", "iaf")


def normalize_name(name: str) -> str:
    """Lowercase and collapse runs of whitespace to single spaces."""
    return " ".join(name.split()).lower()


@dataclass(frozen=True)
class EAElement:
    id: str
    concept_name: str  # normalized framework concept, e.g. "business process"
    name: str = ""
    attributes: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class EARelationship:
    id: str
    kind: str  # normalized framework relationship name, e.g. "assignment"
    source: str
    target: str


class EAModel:
    """Immutable architecture model.

    Ids are unique per element set and per relationship set, and every
    relationship endpoint must exist; breaches raise at construction.
    Equality ignores the source description and importer warnings.
    """

    def __init__(
        self,
        framework: str,
        elements: list[EAElement] | tuple[EAElement, ...] = (),
        relationships: list[EARelationship] | tuple[EARelationship, ...] = (),
        source: str = "",
        warnings: list[str] | tuple[str, ...] = (),
    ):
        if framework not in FRAMEWORKS:
            raise UnknownFrameworkError(
                f"unknown framework {framework!r}; expected one of "
                + ", ".join(FRAMEWORKS)
            )
        self.framework = framework
        self.source = source
        self.warnings = tuple(warnings)
        self._elements: dict[str, EAElement] = {}
        for elem in elements:
            if elem.id in self._elements:
                raise DuplicateIdError(f"duplicate element id {elem.id!r}")
            self._elements[elem.id] = elem
        rel_ids: set[str] = set()
        for rel in relationships:
            if rel.id in rel_ids:
                raise DuplicateIdError(f"duplicate relationship id {rel.id!r}")
            rel_ids.add(rel.id)
            for endpoint in (rel.source, rel.target):
                if endpoint not in self._elements:
                    raise ModelStructureError(
                        f"relationship {rel.id!r} references unknown endpoint {endpoint!r}"
                    )
        self.relationships = tuple(relationships)

    @property
    def elements(self) -> dict[str, EAElement]:
        return dict(self._elements)

    def element(self, element_id: str) -> EAElement:
        try:
            return self._elements[element_id]
        except KeyError:
            raise UnknownElementError(f"unknown element id {element_id!r}") from None

    def __contains__(self, element_id: str) -> bool:
        return element_id in self._elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EAModel):
            return NotImplemented
        return (
            self.framework == other.framework
            and self._elements == other._elements
            and self.relationships == other.relationships
        )

    def __repr__(self) -> str:
        return (
            f"EAModel({self.framework!r}, {len(self._elements)} elements, "
            f"{len(self.relationships)} relationships)"
        )


def neighbors(
    model: EAModel, element_id: str, direction: str = "both"
) -> list[tuple[EARelationship, EAElement]]:
    """List (relationship, other endpoint) pairs touching an element.

    direction is "outgoing", "incoming" or "both"; results follow
    relationship id order and a relationship appears at most once.
    """
    if direction not in ("outgoing", "incoming", "both"):
        raise ValueError(f"unknown direction {direction!r}")
    model.element(element_id)  # raises for unknown ids
    out: list[tuple[EARelationship, EAElement]] = []
    for rel in sorted(model.relationships, key=lambda r: r.id):
        if direction in ("outgoing", "both") and rel.source == element_id:
            out.append((rel, model.element(rel.target)))
        elif direction in ("incoming", "both") and rel.target == element_id:
            out.append((rel, model.element(rel.source)))
    return out


def parse_tabular(text: str, source: str = "") -> EAModel:
    """Parse the tabular model format. Errors carry 1-based line numbers."""
    framework: str | None = None
    elements: list[EAElement] = []
    element_ids: set[str] = set()
    relationships: list[EARelationship] = []
    rel_ids: set[str] = set()

    for lineno, fields in recordio.iter_records(text):
        tag = fields[0]
        if framework is None:
            if tag != "FRAMEWORK" or len(fields) != 2:
                raise ModelFormatError(
                    "expected FRAMEWORK|<id> as the first record", lineno
                )
            framework = fields[1]
            if framework not in FRAMEWORKS:
                raise ModelFormatError(
                    f"unknown framework {framework!r}; expected one of "
                    + ", ".join(FRAMEWORKS),
                    lineno,
                )
            continue
        if tag == "E":
            if len(fields) != 5:
                raise ModelFormatError(
                    f"E record needs 5 fields, got {len(fields)}", lineno
                )
            _, elem_id, concept_name, name, attr_field = fields
            if not elem_id:
                raise ModelFormatError("element with empty id", lineno)
            if elem_id in element_ids:
                raise ModelFormatError(f"duplicate element id {elem_id!r}", lineno)
            element_ids.add(elem_id)
            # field unescaping strips one level, leaving attr escapes intact
            attrs = recordio.parse_attrs(attr_field, lineno)
            elements.append(
                EAElement(elem_id, normalize_name(concept_name), name, attrs)
            )
        elif tag == "R":
            if len(fields) != 5:
                raise ModelFormatError(
                    f"R record needs 5 fields, got {len(fields)}", lineno
                )
            _, rel_id, kind, src, dst = fields
            if not rel_id:
                raise ModelFormatError("relationship with empty id", lineno)
            if rel_id in rel_ids:
                raise ModelFormatError(f"duplicate relationship id {rel_id!r}", lineno)
            rel_ids.add(rel_id)
            for endpoint in (src, dst):
                if endpoint not in element_ids:
                    raise ModelFormatError(
                        f"unknown endpoint {endpoint!r}", lineno
                    )
            relationships.append(
                EARelationship(rel_id, normalize_name(kind), src, dst)
            )
        else:
            raise ModelFormatError(f"unknown record tag {tag!r}", lineno)

    if framework is None:
        raise ModelFormatError("empty model text; FRAMEWORK record missing")
    return EAModel(framework, elements, relationships, source=source)


def export_tabular(model: EAModel) -> str:
    """Serialize a model to the tabular format, elements before relationships."""
    lines = [recordio.join_record(("FRAMEWORK", model.framework))]
    for elem in model.elements.values():
        attr_field = recordio.format_attrs(elem.attributes)
        lines.append(
            recordio.join_record(
                ("E", elem.id, elem.concept_name, elem.name, attr_field)
            )
        )
    for rel in model.relationships:
        lines.append(
            recordio.join_record(("R", rel.id, rel.kind, rel.source, rel.target))
        )
    return "\n".join(lines) + "\n"
