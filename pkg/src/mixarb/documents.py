"""JSON instance, packing and certificate documents.

Instance document::

    {"vertices": ["a", "b"],
     "edges": [["a", "b"]],
     "arcs": [["a", "b"]],
     "matroid": {"type": "uniform", "rank": 1},
     "roots": [{"element": 0, "vertex": "a"}, {"element": 1, "vertex": "b"}]}

Edge and arc ids are list positions, so those lists keep their order; every
other list is rendered in a canonical order and keys are sorted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Sequence, Union

from .bits import iter_bits
from .conditions import Certificate, Instance
from .graph import BiSet, MixedGraph
from .matroid import Matroid, matroid_from_spec
from .packing import Arborescence, Item, Packing

MATROID_TYPES = ("free", "uniform", "partition", "graphic", "linear_gf2")


class DocumentError(ValueError):
    """Invalid document; ``key`` and ``value`` locate the problem."""

    def __init__(self, message: str, key: str = "", value: Any = None):
        super().__init__(message)
        self.key = key
        self.value = value

    def as_dict(self) -> dict:
        return {"error": {"message": str(self), "key": self.key, "value": self.value}}


@dataclass(frozen=True)
class LabeledInstance:
    instance: Instance
    labels: tuple[str, ...]

    def index(self, label: str, key: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DocumentError(f"{key}: unknown vertex label {label!r}", key, label) from None

    def names(self, mask: int) -> list[str]:
        return [self.labels[v] for v in iter_bits(mask)]


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc.msg} at line {exc.lineno}", "", None) from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object", "", None)
    return doc


def _pairs(doc: dict, key: str, index: dict[str, int]) -> tuple[tuple[int, int], ...]:
    raw = doc.get(key, [])
    if not isinstance(raw, list):
        raise DocumentError(f"{key} must be a list", key, raw)
    out = []
    for i, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"{key}[{i}] must be a pair of labels", f"{key}[{i}]", pair)
        ends = []
        for lab in pair:
            if lab not in index:
                raise DocumentError(f"{key}[{i}]: unknown vertex label {lab!r}", f"{key}[{i}]", lab)
            ends.append(index[lab])
        if ends[0] == ends[1]:
            raise DocumentError(f"{key}[{i}] is a loop", f"{key}[{i}]", pair)
        out.append((ends[0], ends[1]))
    return tuple(out)


def instance_from_dict(doc: dict) -> LabeledInstance:
    labels = doc.get("vertices")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DocumentError("vertices must be a list of strings", "vertices", labels)
    index: dict[str, int] = {}
    for lab in labels:
        if lab in index:
            raise DocumentError(f"duplicate vertex label {lab!r}", "vertices", lab)
        index[lab] = len(index)
    try:
        graph = MixedGraph(len(labels), _pairs(doc, "edges", index), _pairs(doc, "arcs", index))
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc), "vertices", len(labels)) from None

    roots = doc.get("roots", [])
    if not isinstance(roots, list):
        raise DocumentError("roots must be a list", "roots", roots)
    placed: dict[int, int] = {}
    for i, r in enumerate(roots):
        if not isinstance(r, dict) or "element" not in r or "vertex" not in r:
            raise DocumentError(f"roots[{i}] needs element and vertex", f"roots[{i}]", r)
        e, lab = r["element"], r["vertex"]
        if not isinstance(e, int) or isinstance(e, bool):
            raise DocumentError(f"roots[{i}].element must be an integer", f"roots[{i}].element", e)
        if e in placed:
            raise DocumentError(f"element {e} placed twice", f"roots[{i}].element", e)
        if lab not in index:
            raise DocumentError(f"roots[{i}]: unknown vertex label {lab!r}", f"roots[{i}].vertex", lab)
        placed[e] = index[lab]
    if sorted(placed) != list(range(len(placed))):
        raise DocumentError("element ids must be 0..|S|-1", "roots", sorted(placed))
    placement = tuple(placed[e] for e in range(len(placed)))

    spec = doc.get("matroid", {"type": "free"})
    if not isinstance(spec, dict) or spec.get("type") not in MATROID_TYPES:
        raise DocumentError(f"matroid.type must be one of {', '.join(MATROID_TYPES)}",
                            "matroid.type", spec.get("type") if isinstance(spec, dict) else spec)
    params = {k: v for k, v in spec.items() if k != "type"}
    try:
        matroid = matroid_from_spec(spec["type"], len(placement), params)
    except KeyError as exc:
        raise DocumentError(f"matroid is missing parameter {exc.args[0]!r}",
                            f"matroid.{exc.args[0]}", None) from None
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"bad matroid parameters: {exc}", "matroid", params) from None
    if matroid.size != len(placement):
        raise DocumentError(f"matroid has {matroid.size} elements but {len(placement)} roots",
                            "roots", len(placement))
    return LabeledInstance(Instance(graph, matroid, placement), tuple(labels))


def parse_instance(text: str) -> LabeledInstance:
    """Parse an instance document, validating every field."""
    return instance_from_dict(_loads(text))


def matroid_to_dict(m: Matroid) -> dict:
    return {"type": m.kind, **m.params()}


def instance_to_dict(li: LabeledInstance) -> dict:
    inst, lab = li.instance, li.labels
    g = inst.graph
    return {
        "vertices": list(lab),
        "edges": [[lab[u], lab[v]] for u, v in g.edges],
        "arcs": [[lab[u], lab[v]] for u, v in g.arcs],
        "matroid": matroid_to_dict(inst.matroid),
        "roots": [{"element": s, "vertex": lab[v]} for s, v in enumerate(inst.placement)],
    }


def render_instance(li: LabeledInstance) -> str:
    return dumps(instance_to_dict(li))


def certificate_to_dict(cert: Certificate, li: LabeledInstance) -> dict:
    out: dict[str, Any] = {"kind": cert.kind, "condition": cert.condition,
                           "deficit": cert.deficit}
    if cert.kind == "dependent-placement":
        out["vertex"] = li.labels[cert.vertex]
    elif cert.kind == "deficient-set":
        out["set"] = li.names(cert.vertex_set)
        out["mode"] = cert.mode
    else:
        out["component"] = li.names(cert.component)
        out["parts"] = [li.names(p) for p in cert.parts]
        if cert.closed_sets:
            out["closed_sets"] = [li.names(z) for z in cert.closed_sets]
        if cert.part_values:
            out["part_demands"] = list(cert.part_values)
        if cert.bisets:
            out["bisets"] = [{"outer": li.names(b.outer), "inner": li.names(b.inner)}
                             for b in cert.bisets]
    if cert.roots:
        out["roots"] = [li.labels[r] for r in cert.roots]
    return out


def certificate_from_dict(doc: dict, li: LabeledInstance) -> Certificate:
    def vset(key: str, names: Any) -> int:
        if not isinstance(names, list):
            raise DocumentError(f"{key} must be a list of labels", key, names)
        m = 0
        for lab in names:
            m |= 1 << li.index(lab, key)
        return m

    try:
        kind, condition, deficit = doc["kind"], doc["condition"], int(doc["deficit"])
    except (KeyError, TypeError, ValueError):
        raise DocumentError("certificate needs kind, condition and deficit", "certificate", doc) from None
    kw: dict[str, Any] = {}
    if "vertex" in doc:
        kw["vertex"] = li.index(doc["vertex"], "vertex")
    if "set" in doc:
        kw["vertex_set"] = vset("set", doc["set"])
    if "mode" in doc:
        kw["mode"] = doc["mode"]
    if "component" in doc:
        kw["component"] = vset("component", doc["component"])
    if "parts" in doc:
        kw["parts"] = tuple(vset("parts", p) for p in doc["parts"])
    if "closed_sets" in doc:
        kw["closed_sets"] = tuple(vset("closed_sets", z) for z in doc["closed_sets"])
    if "part_demands" in doc:
        kw["part_values"] = tuple(int(v) for v in doc["part_demands"])
    if "bisets" in doc:
        kw["bisets"] = tuple(BiSet(vset("bisets.outer", b["outer"]), vset("bisets.inner", b["inner"]))
                             for b in doc["bisets"])
    if "roots" in doc:
        kw["roots"] = tuple(li.index(r, "roots") for r in doc["roots"])
    return Certificate(kind, condition, deficit, **kw)


def _item_to_dict(it: Item, li: LabeledInstance) -> dict:
    return {"kind": it.kind, "id": it.id, "direction": [li.labels[it.tail], li.labels[it.head]]}


def packing_to_dict(result: Union[Packing, Certificate], li: LabeledInstance) -> dict:
    if isinstance(result, Certificate):
        return {"status": {"feasible": False, "certificate": certificate_to_dict(result, li)},
                "arborescences": []}
    trees = []
    for t in sorted(result.arborescences, key=lambda t: t.element):
        trees.append({
            "element": t.element,
            "root": li.labels[t.root],
            "items": [_item_to_dict(it, li) for it in sorted(t.items)],
            "vertices": li.names(t.vertices),
        })
    return {"status": {"feasible": True}, "arborescences": trees}


def render_packing(result: Union[Packing, Certificate], li: LabeledInstance) -> str:
    return dumps(packing_to_dict(result, li))


def packing_from_dict(doc: dict, li: LabeledInstance) -> Optional[Packing]:
    """The packing in a packing document, or ``None`` for an infeasible one."""
    status = doc.get("status", {})
    if isinstance(status, dict) and status.get("feasible") is False:
        return None
    trees = []
    raw = doc.get("arborescences")
    if not isinstance(raw, list):
        raise DocumentError("arborescences must be a list", "arborescences", raw)
    for i, t in enumerate(raw):
        key = f"arborescences[{i}]"
        try:
            root = li.index(t["root"], f"{key}.root")
            items = []
            for j, it in enumerate(t["items"]):
                tail, head = it["direction"]
                items.append(Item(it["kind"], int(it["id"]),
                                  li.index(tail, f"{key}.items[{j}]"),
                                  li.index(head, f"{key}.items[{j}]")))
            verts = 0
            for lab in t["vertices"]:
                verts |= 1 << li.index(lab, f"{key}.vertices")
            trees.append(Arborescence(int(t["element"]), root, tuple(items), verts))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(f"{key} is malformed: {exc}", key, t) from None
    return Packing(tuple(trees))


def parse_packing(text: str, li: LabeledInstance) -> Optional[Packing]:
    return packing_from_dict(_loads(text), li)


def labeled(inst: Instance, labels: Optional[Sequence[str]] = None) -> LabeledInstance:
    """Attach labels (default ``v0, v1, ...``) to a bare instance."""
    if labels is None:
        labels = [f"v{i}" for i in range(inst.n)]
    return LabeledInstance(inst, tuple(labels))
