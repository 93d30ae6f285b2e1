"""Independent reference implementations the tests compare against.

Deliberately different algorithms and data structures from the library:
priority-queue search instead of layered BFS, exhaustive path enumeration
for small graphs, and plain recounting for coverage.
"""

import heapq
import random
from collections import defaultdict

from riskalign.classify import Tier
from riskalign.concepts import ISSRMConcept
from riskalign.eamodel import EAElement, EAModel, EARelationship, normalize_name
from riskalign.mappings import target_concepts


def definite_set(classification, concept):
    out = set()
    for fact in classification.facts:
        if fact.tier is Tier.DEFINITE and concept in target_concepts(fact.target):
            out.add(fact.element_id)
    return out


def _edges(classification, allowed_kinds):
    model = classification.model
    is_assets = definite_set(classification, ISSRMConcept.IS_ASSET)
    business = definite_set(classification, ISSRMConcept.BUSINESS_ASSET)
    allowed = (
        None
        if allowed_kinds is None
        else {normalize_name(k) for k in allowed_kinds}
    )
    transit = defaultdict(set)
    terminal = defaultdict(set)
    for rel in model.relationships:
        if allowed is not None and rel.kind not in allowed:
            continue
        if rel.source not in is_assets:
            continue
        if rel.target in is_assets:
            transit[rel.source].add(rel.target)
        if rel.target in business:
            terminal[rel.source].add(rel.target)
    return transit, terminal


def dijkstra_propagation(classification, seeds, allowed_kinds=None):
    """Witness-path search ordered by (length, path) cost via a heap."""
    transit, terminal = _edges(classification, allowed_kinds)
    heap = [(1, (seed,)) for seed in set(seeds)]
    heapq.heapify(heap)
    best = {}
    while heap:
        length, path = heapq.heappop(heap)
        node = path[-1]
        if node in best:
            continue
        best[node] = path
        for succ in sorted(transit[node]):
            if succ not in best:
                heapq.heappush(heap, (length + 1, path + (succ,)))
    reached = {}
    for node, path in best.items():
        for target in terminal[node]:
            candidate = path + (target,)
            current = reached.get(target)
            if current is None or (len(candidate), candidate) < (
                len(current),
                current,
            ):
                reached[target] = candidate
    return reached


def enumerate_propagation(classification, seeds, allowed_kinds=None):
    """Exhaustive simple-path enumeration; only viable for small graphs."""
    transit, terminal = _edges(classification, allowed_kinds)
    reached = {}

    def note(target, path):
        current = reached.get(target)
        if current is None or (len(path), path) < (len(current), current):
            reached[target] = path

    def walk(path):
        node = path[-1]
        for target in terminal[node]:
            note(target, path + (target,))
        for succ in transit[node]:
            if succ not in path:
                walk(path + (succ,))

    for seed in set(seeds):
        walk((seed,))
    return reached


def closure_targets(classification, seeds, allowed_kinds=None):
    """Reachable business assets by set closure, paths ignored."""
    transit, terminal = _edges(classification, allowed_kinds)
    seen = set(seeds)
    frontier = set(seeds)
    while frontier:
        step = set()
        for node in frontier:
            step.update(transit[node])
        frontier = step - seen
        seen |= frontier
    out = set()
    for node in seen:
        out.update(terminal[node])
    return out


def recount_coverage(register):
    classification = register.classification
    is_assets = definite_set(classification, ISSRMConcept.IS_ASSET)
    vulnerable = set()
    for case in register.risks:
        for vuln in case.vulnerabilities:
            vulnerable.update(e for e in vuln.elements if e in is_assets)
    requirements = [
        req
        for case in register.risks
        for treatment in case.treatments
        for req in treatment.requirements
    ]
    return {
        "is_asset_count": len(is_assets),
        "is_assets_with_vulnerability": len(vulnerable),
        "risks_total": len(register.risks),
        "risks_with_treatment": sum(1 for c in register.risks if c.treatments),
        "requirements_total": len(requirements),
        "requirements_with_control": sum(1 for r in requirements if r.controls),
        "unmapped_count": len(classification.unmapped),
        "unknown_count": len(classification.unknown),
    }


# --- random inputs -------------------------------------------------------------------

# togaf91 concepts by classification outcome: definite IS, definite business,
# related-only, explicitly unmapped, and never mentioned.
_CONCEPT_POOL = (
    ["data entity"] * 4
    + ["business service"] * 3
    + ["principle", "event", "wormhole"]
)
_KINDS = ("flow", "association", "realization")


def random_model(rng: random.Random, max_elements: int = 20) -> EAModel:
    count = rng.randint(2, max_elements)
    elements = [EAElement("e0", "data entity", "seed element")]
    for i in range(1, count):
        elements.append(
            EAElement(f"e{i}", rng.choice(_CONCEPT_POOL), f"element {i}")
        )
    ids = [e.id for e in elements]
    relationships = []
    for i in range(rng.randint(0, 2 * count)):
        relationships.append(
            EARelationship(
                f"r{i}", rng.choice(_KINDS), rng.choice(ids), rng.choice(ids)
            )
        )
    return EAModel("togaf91", elements, relationships)


def random_register_text(rng: random.Random, model: EAModel) -> str:
    elems = sorted(model.elements)

    def pick_ids(limit=2):
        k = rng.randint(0, min(limit, len(elems)))
        return ",".join(rng.sample(elems, k))

    lines = []
    crit_ids = []
    for i in range(rng.randint(0, 2)):
        crit_id = f"crit{i}"
        crit_ids.append(crit_id)
        lines.append(f"CRIT|{crit_id}|Criterion {i}|{pick_ids()}")
    for i in range(rng.randint(0, 3)):
        risk_id = f"risk{i}"
        lines.append(f"RISK|{risk_id}|Risk {i}")
        if rng.random() < 0.8:
            agent = rng.choice(("Agent", "-"))
            method = rng.choice(("Method", "-"))
            lines.append(f"THREAT|{risk_id}|{agent}|{method}|{pick_ids()}")
        for j in range(rng.randint(0, 2)):
            lines.append(f"VULN|{risk_id}|weakness {j}|{pick_ids()}")
        for j in range(rng.randint(0, 2)):
            negated = ",".join(
                rng.sample(crit_ids, rng.randint(0, len(crit_ids)))
            )
            lines.append(f"IMPACT|{risk_id}|impact {j}|{pick_ids()}|{negated}")
        for j in range(rng.randint(0, 2)):
            treat_id = f"treat{i}_{j}"
            lines.append(f"TREAT|{risk_id}|{treat_id}|treatment text")
            for q in range(rng.randint(0, 2)):
                req_id = f"req{i}_{j}_{q}"
                lines.append(f"REQ|{treat_id}|{req_id}|requirement text")
                for c in range(rng.randint(0, 2)):
                    lines.append(f"CTRL|{req_id}|ctrl{i}{j}{q}{c}|control text")
    return "\n".join(lines) + "\n"
