"""Score generated descriptions against a ground-truth file.

The ground truth is one JSON document per project-profile with three arrays:
methods [{path, verb}], parameters [{path, verb, name}], and responses
[{path, verb, status}]. Matching is exact on normalized keys; precision with
no TP and no FP is defined as 0 to penalize empty predictions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

MethodKey = tuple[str, str]
ParameterKey = tuple[str, str, str]
ResponseKey = tuple[str, str, str]

CATEGORIES = ("methods", "parameters", "responses")


class GroundTruthError(Exception):
    pass


@dataclass(frozen=True)
class GroundTruth:
    methods: frozenset[MethodKey]
    parameters: frozenset[ParameterKey]
    responses: frozenset[ResponseKey]


@dataclass(frozen=True)
class FlatSets:
    methods: frozenset[MethodKey]
    parameters: frozenset[ParameterKey]
    responses: frozenset[ResponseKey]

    def union(self, other: "FlatSets") -> "FlatSets":
        return FlatSets(self.methods | other.methods,
                        self.parameters | other.parameters,
                        self.responses | other.responses)


EMPTY_FLAT = FlatSets(frozenset(), frozenset(), frozenset())


@dataclass(frozen=True)
class CategoryScore:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0


@dataclass(frozen=True)
class EvalReport:
    methods: CategoryScore
    parameters: CategoryScore
    responses: CategoryScore

    def as_dict(self) -> dict:
        out = {}
        for category in CATEGORIES:
            score: CategoryScore = getattr(self, category)
            out[category] = {
                "tp": score.tp, "fp": score.fp, "fn": score.fn,
                "precision": round(score.precision, 4),
                "recall": round(score.recall, 4),
            }
        return out


# ---------------------------------------------------------------------------
# Ground truth loading
# ---------------------------------------------------------------------------

def _normalize_path(path: str) -> str:
    segments = [seg for seg in str(path).split("/") if seg]
    return "/" + "/".join(segments)


def _entry(row: dict, keys: tuple[str, ...], index: int, category: str
           ) -> tuple:
    if not isinstance(row, dict):
        raise GroundTruthError(f"{category}[{index}]: entry must be an object")
    values = []
    for key in keys:
        if key not in row:
            raise GroundTruthError(f"{category}[{index}]: missing {key!r}")
        value = str(row[key])
        if key == "path":
            value = _normalize_path(value)
        elif key == "verb":
            value = value.upper()
        values.append(value)
    return tuple(values)


def load_ground_truth(file: Path | str) -> GroundTruth:
    path = Path(file)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise GroundTruthError(f"ground truth file not found: {path}")
    except json.JSONDecodeError as exc:
        raise GroundTruthError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}")
    if not isinstance(data, dict):
        raise GroundTruthError(f"{path}: top level must be an object")

    keys = {"methods": ("path", "verb"),
            "parameters": ("path", "verb", "name"),
            "responses": ("path", "verb", "status")}
    sets: dict[str, frozenset] = {}
    for category in CATEGORIES:
        rows = data.get(category, [])
        if not isinstance(rows, list):
            raise GroundTruthError(f"{path}: {category} must be an array")
        entries = set()
        for i, row in enumerate(rows):
            entry = _entry(row, keys[category], i, category)
            if entry in entries:
                raise GroundTruthError(
                    f"{path}: duplicate {category} entry at index {i}: {entry}")
            entries.add(entry)
        sets[category] = frozenset(entries)
    return GroundTruth(sets["methods"], sets["parameters"], sets["responses"])


# ---------------------------------------------------------------------------
# Flattening
# ---------------------------------------------------------------------------

def _schema_field_names(schema: dict, components: dict,
                        _seen: frozenset = frozenset()) -> list[str]:
    """Field names of an object schema, expanded through $ref and allOf
    (the full inheritance chain); nested objects are not descended into."""
    ref = schema.get("$ref")
    if ref is not None:
        name = ref.rsplit("/", 1)[-1]
        if name in _seen:
            return []
        target = components.get(name)
        if target is None:
            raise KeyError(f"dangling $ref {ref!r} during flattening")
        return _schema_field_names(target, components, _seen | {name})
    names: list[str] = []
    for part in schema.get("allOf", []):
        names.extend(_schema_field_names(part, components, _seen))
    names.extend(schema.get("properties", {}).keys())
    return names


def flatten_for_eval(doc: dict) -> FlatSets:
    """Flat (path, verb[, name|status]) sets of a serialized description."""
    components = doc.get("components", {}).get("schemas", {})
    methods: set[MethodKey] = set()
    parameters: set[ParameterKey] = set()
    responses: set[ResponseKey] = set()
    for path, item in doc.get("paths", {}).items():
        norm = _normalize_path(path)
        for verb, op in item.items():
            if verb == "parameters" or not isinstance(op, dict):
                continue
            verb_u = verb.upper()
            methods.add((norm, verb_u))
            for param in op.get("parameters", []):
                name = param.get("name")
                if name:
                    parameters.add((norm, verb_u, str(name)))
            body = op.get("requestBody", {})
            for media in body.get("content", {}).values():
                schema = media.get("schema")
                if schema:
                    for field in _schema_field_names(schema, components):
                        parameters.add((norm, verb_u, field))
            for status in op.get("responses", {}):
                responses.add((norm, verb_u, str(status)))
    return FlatSets(frozenset(methods), frozenset(parameters),
                    frozenset(responses))


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------

def _score(predicted: frozenset, truth: frozenset) -> CategoryScore:
    tp = len(predicted & truth)
    return CategoryScore(tp=tp, fp=len(predicted - truth),
                         fn=len(truth - predicted))


def evaluate(flat: FlatSets, gt: GroundTruth) -> EvalReport:
    return EvalReport(
        methods=_score(flat.methods, gt.methods),
        parameters=_score(flat.parameters, gt.parameters),
        responses=_score(flat.responses, gt.responses),
    )


def flat_as_ground_truth(flat: FlatSets) -> GroundTruth:
    return GroundTruth(flat.methods, flat.parameters, flat.responses)


def format_report(report: EvalReport) -> str:
    lines = [f"{'category':<12} {'TP':>6} {'FP':>6} {'FN':>6} "
             f"{'precision':>10} {'recall':>8}"]
    for category in CATEGORIES:
        score: CategoryScore = getattr(report, category)
        lines.append(f"{category:<12} {score.tp:>6} {score.fp:>6} "
                     f"{score.fn:>6} {score.precision:>10.2f} "
                     f"{score.recall:>8.2f}")
    return "\n".join(lines)
