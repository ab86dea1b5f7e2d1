"""Document assembly, merging, serialization, structural validation."""

import json

import pytest
import yaml
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES_DIR, GOLDEN_FIXTURES
from oasforge.emitter import (MergeConflictError, doc_to_dict,
                              merge_documents, read_project_version,
                              schema_to_dict, serialize)
from oasforge.oasvalidate import validate_document
from oasforge.pipeline import generate_project
from oasforge.schemas import (all_of, array_of, enum_of, map_of, object_of,
                              primitive, ref_to)


def docs_for(name):
    result = generate_project(FIXTURES_DIR / name)
    return result.documents


# -- schema rendering -------------------------------------------------------

def test_object_renders_required_type_properties_in_order():
    node = object_of([("a", primitive("integer", "int32"))], required=["a"])
    assert list(schema_to_dict(node)) == ["required", "type", "properties"]


def test_map_renders_additional_properties():
    assert schema_to_dict(map_of(primitive("number"))) == {
        "type": "object", "additionalProperties": {"type": "number"}}


def test_ref_and_allof_render():
    node = all_of([ref_to("Base"), object_of([])])
    assert schema_to_dict(node) == {"allOf": [
        {"$ref": "#/components/schemas/Base"},
        {"type": "object", "properties": {}},
    ]}


def test_enum_and_array_render():
    assert schema_to_dict(enum_of(["A", "B"])) == {
        "type": "string", "enum": ["A", "B"]}
    assert schema_to_dict(array_of(primitive("string"))) == {
        "type": "array", "items": {"type": "string"}}


# -- serialization ----------------------------------------------------------

def test_json_serialization_is_byte_stable():
    doc = docs_for("request_body")["default"]
    assert serialize(doc) == serialize(doc)
    again = docs_for("request_body")["default"]
    assert serialize(doc) == serialize(again)


def test_json_round_trips():
    doc = docs_for("allof_inheritance")["default"]
    parsed = json.loads(serialize(doc))
    assert parsed == doc_to_dict(doc)


def test_yaml_round_trips():
    doc = docs_for("allof_inheritance")["default"]
    parsed = yaml.safe_load(serialize(doc, format="yaml"))
    assert parsed == doc_to_dict(doc)


def test_serialize_rejects_unknown_format():
    doc = docs_for("void_default")["default"]
    with pytest.raises(ValueError):
        serialize(doc, format="toml")


def test_paths_sorted_and_verbs_canonical():
    doc = docs_for("all_verbs")["default"]
    data = doc_to_dict(doc)
    assert list(data["paths"]) == sorted(data["paths"])
    assert list(data["paths"]["/tasks"]) == [
        "get", "post", "put", "delete", "patch", "head", "options"]


# -- structural validity ----------------------------------------------------

@pytest.mark.parametrize("name", GOLDEN_FIXTURES)
def test_every_generated_document_is_structurally_valid(name):
    for doc in docs_for(name).values():
        assert validate_document(doc_to_dict(doc)) == []


def test_validator_flags_dangling_ref():
    doc = doc_to_dict(docs_for("request_body")["default"])
    doc["paths"]["/orders"]["post"]["requestBody"]["content"][
        "application/json"]["schema"]["$ref"] = "#/components/schemas/Ghost"
    errors = validate_document(doc)
    assert any("Ghost" in e for e in errors)


def test_validator_flags_missing_path_parameter():
    doc = doc_to_dict(docs_for("path_regex")["default"])
    path = next(iter(doc["paths"]))
    op = doc["paths"][path]["get"]
    op["parameters"] = [p for p in op["parameters"]
                        if p["name"] != "year"]
    assert validate_document(doc) != []


# -- merging ----------------------------------------------------------------

def test_merge_is_idempotent():
    doc = docs_for("constant_paths")["default"]
    merged = merge_documents([doc, doc])
    assert merged.paths == doc.paths
    assert merged.components_schemas == doc.components_schemas
    assert merged.profile == "merged"


def test_merge_of_disjoint_documents_sums_paths():
    docs = [docs_for("constant_paths")["default"],
            docs_for("request_body")["default"]]
    merged = merge_documents(docs)
    assert len(merged.paths) == sum(len(d.paths) for d in docs)


def test_merge_conflict_raises_with_location():
    # both profiles define GET /status with different response schemas
    docs = docs_for("profile_split")
    assert set(docs) == {"external", "internal"}
    with pytest.raises(MergeConflictError) as err:
        merge_documents(list(docs.values()))
    assert "GET /status" in str(err.value)


def test_merge_empty_list_rejected():
    with pytest.raises(ValueError):
        merge_documents([])


@given(st.permutations(list(range(2))))
def test_merge_of_disjoint_docs_is_order_insensitive_in_content(order):
    docs = [docs_for("constant_paths")["default"],
            docs_for("request_body")["default"]]
    merged = merge_documents([docs[i] for i in order])
    assert doc_to_dict(merged)["paths"] == \
        doc_to_dict(merge_documents(docs))["paths"]


# -- project metadata -------------------------------------------------------

def test_version_from_pom(tmp_path):
    (tmp_path / "pom.xml").write_text(
        '<project xmlns="http://maven.apache.org/POM/4.0.0">'
        "<version>2.4.1</version></project>")
    assert read_project_version(tmp_path) == "2.4.1"


def test_version_from_gradle(tmp_path):
    (tmp_path / "build.gradle").write_text("version = '0.9.0'\n")
    assert read_project_version(tmp_path) == "0.9.0"


def test_version_defaults_without_descriptor(tmp_path):
    assert read_project_version(tmp_path) == "0.0.0"
