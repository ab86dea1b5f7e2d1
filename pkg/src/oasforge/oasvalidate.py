"""Structural validation of emitted OpenAPI 3.0 documents.

Covers the subset of the OAS 3.0 object model this tool emits plus the
closure property: every $ref target must exist under components/schemas.
"""

from __future__ import annotations

import re

_VERBS = {"get", "put", "post", "delete", "options", "head", "patch", "trace"}
_PARAM_LOCATIONS = {"path", "query", "header", "cookie"}
_STATUS_RE = re.compile(r"^([1-5]\d\d|default|[1-5]XX)$")
_REF_RE = re.compile(r"^#/components/schemas/(.+)$")


def validate_document(doc: dict) -> list[str]:
    """Return a list of structural errors; empty means valid."""
    errors: list[str] = []
    if not isinstance(doc, dict):
        return ["document is not an object"]

    version = doc.get("openapi")
    if not isinstance(version, str) or not version.startswith("3.0"):
        errors.append(f"openapi version must be a 3.0.x string, got {version!r}")

    info = doc.get("info")
    if not isinstance(info, dict):
        errors.append("info object missing")
    else:
        for key in ("title", "version"):
            if not isinstance(info.get(key), str):
                errors.append(f"info.{key} must be a string")

    schema_names = set()
    components = doc.get("components", {})
    if components:
        schemas = components.get("schemas", {})
        if not isinstance(schemas, dict):
            errors.append("components.schemas must be an object")
        else:
            schema_names = set(schemas)
            for name, schema in schemas.items():
                _check_schema(schema, f"components.schemas.{name}",
                              schema_names, errors)

    paths = doc.get("paths")
    if not isinstance(paths, dict):
        errors.append("paths object missing")
        return errors
    for path, item in paths.items():
        where = f"paths.{path}"
        if not path.startswith("/"):
            errors.append(f"{where}: path must start with '/'")
        if not isinstance(item, dict):
            errors.append(f"{where}: path item must be an object")
            continue
        for verb, op in item.items():
            if verb not in _VERBS and verb != "parameters":
                errors.append(f"{where}: unknown operation key {verb!r}")
                continue
            if verb == "parameters":
                continue
            _check_operation(op, f"{where}.{verb}", path, schema_names, errors)
    return errors


def _check_operation(op, where: str, path: str, schema_names, errors):
    if not isinstance(op, dict):
        errors.append(f"{where}: operation must be an object")
        return
    responses = op.get("responses")
    if not isinstance(responses, dict) or not responses:
        errors.append(f"{where}: responses object missing or empty")
    else:
        for status, resp in responses.items():
            rwhere = f"{where}.responses.{status}"
            if not _STATUS_RE.match(str(status)):
                errors.append(f"{rwhere}: invalid status key")
            if not isinstance(resp, dict) or not isinstance(
                    resp.get("description"), str) or not resp["description"]:
                errors.append(f"{rwhere}: nonempty description required")
                continue
            for media in resp.get("content", {}).values():
                if "schema" in media:
                    _check_schema(media["schema"], rwhere, schema_names,
                                  errors)
    path_params = set(re.findall(r"\{([^}:]+)\}", path))
    declared = {p.get("name") for p in op.get("parameters", [])
                if isinstance(p, dict) and p.get("in") == "path"}
    for missing in sorted(path_params - declared):
        errors.append(
            f"{where}: template variable {missing!r} has no path parameter")
    for i, param in enumerate(op.get("parameters", [])):
        pwhere = f"{where}.parameters[{i}]"
        if not isinstance(param, dict):
            errors.append(f"{pwhere}: parameter must be an object")
            continue
        name = param.get("name")
        if not isinstance(name, str):
            errors.append(f"{pwhere}: name must be a string")
        loc = param.get("in")
        if loc not in _PARAM_LOCATIONS:
            errors.append(f"{pwhere}: invalid location {loc!r}")
        if loc == "path":
            if param.get("required") is not True:
                errors.append(f"{pwhere}: path parameter must be required")
            if name not in path_params:
                errors.append(
                    f"{pwhere}: path parameter {name!r} not in template")
        if "schema" in param:
            _check_schema(param["schema"], pwhere, schema_names, errors)
    body = op.get("requestBody")
    if body is not None:
        bwhere = f"{where}.requestBody"
        if not isinstance(body, dict) or not isinstance(
                body.get("content"), dict):
            errors.append(f"{bwhere}: content object required")
        else:
            for media in body["content"].values():
                if "schema" in media:
                    _check_schema(media["schema"], bwhere, schema_names,
                                  errors)


_SCHEMA_TYPES = {"string", "number", "integer", "boolean", "array", "object"}


def _check_schema(schema, where: str, schema_names, errors):
    if not isinstance(schema, dict):
        errors.append(f"{where}: schema must be an object")
        return
    ref = schema.get("$ref")
    if ref is not None:
        m = _REF_RE.match(ref)
        if not m:
            errors.append(f"{where}: malformed $ref {ref!r}")
        elif m.group(1) not in schema_names:
            errors.append(f"{where}: dangling $ref {ref!r}")
        return
    stype = schema.get("type")
    if stype is not None and stype not in _SCHEMA_TYPES:
        errors.append(f"{where}: invalid type {stype!r}")
    if stype == "array":
        if "items" not in schema:
            errors.append(f"{where}: array schema requires items")
        else:
            _check_schema(schema["items"], f"{where}.items", schema_names,
                          errors)
    for key in ("allOf", "oneOf", "anyOf"):
        for i, part in enumerate(schema.get(key, [])):
            _check_schema(part, f"{where}.{key}[{i}]", schema_names, errors)
    for name, prop in schema.get("properties", {}).items():
        _check_schema(prop, f"{where}.properties.{name}", schema_names,
                      errors)
    ap = schema.get("additionalProperties")
    if isinstance(ap, dict):
        _check_schema(ap, f"{where}.additionalProperties", schema_names,
                      errors)
    required = schema.get("required")
    if required is not None:
        if (not isinstance(required, list) or not required
                or any(not isinstance(r, str) for r in required)):
            errors.append(f"{where}: required must be a nonempty string array")
