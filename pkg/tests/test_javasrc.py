"""Source-model tests: parsing, constant resolution, supertype chains."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES_DIR, model_from
from oasforge.javasrc import (ProjectParseError, StrLit, SupertypeCycleError,
                              parse_project, parse_source,
                              resolve_string_constant, supertype_chain)

SIMPLE_CONTROLLER = """
package app;

import org.springframework.web.bind.annotation.RestController;

@RestController
public class OneController {
}
"""


def test_parse_single_class(tmp_path):
    (tmp_path / "OneController.java").write_text(SIMPLE_CONTROLLER)
    model = parse_project(tmp_path)
    assert len(model.classes) == 1
    assert model.parse_diagnostics == []
    assert "app.OneController" in model.classes


def test_missing_root_is_fatal(tmp_path):
    with pytest.raises(ProjectParseError):
        parse_project(tmp_path / "nope")


def test_no_parsable_files_is_fatal(tmp_path):
    (tmp_path / "Broken.java").write_text("class {{{")
    with pytest.raises(ProjectParseError):
        parse_project(tmp_path)


def test_syntax_error_recorded_and_skipped():
    # fixture: 3 files, 1 with a syntax error -> 2 classes + 1 diagnostic
    model = parse_project(FIXTURES_DIR / "parse_error")
    assert len(model.parse_diagnostics) == 1
    assert model.parse_diagnostics[0].file == "Broken.java"
    assert len(model.classes) == 2


def test_reparse_is_deterministic():
    m1 = parse_project(FIXTURES_DIR / "constant_paths")
    m2 = parse_project(FIXTURES_DIR / "constant_paths")
    assert sorted(m1.classes) == sorted(m2.classes)
    c1 = m1.classes["com.demo.config.ConfigController"]
    c2 = m2.classes["com.demo.config.ConfigController"]
    assert c1.methods == c2.methods
    assert c1.annotations == c2.annotations


CONSTANTS = """
package app;

class Paths {
    static final String BASE = "/v1";
    static final String ITEMS = BASE + "/items";
}

class User {
    static final String ENDPOINT_NAME = "/version";
}
"""


def test_literal_resolves_to_itself():
    model = model_from(CONSTANTS)
    ctx = model.classes["app.Paths"]
    assert resolve_string_constant(StrLit("/api"), ctx, model) == "/api"


def test_constant_reference_resolves():
    model = model_from(CONSTANTS)
    ctx = model.classes["app.User"]
    init = ctx.string_constants["ENDPOINT_NAME"]
    assert resolve_string_constant(init, ctx, model) == "/version"


def test_concatenation_resolves_recursively():
    model = model_from(CONSTANTS)
    ctx = model.classes["app.Paths"]
    init = ctx.string_constants["ITEMS"]
    assert resolve_string_constant(init, ctx, model) == "/v1/items"


def test_unresolvable_reference_returns_none():
    model = model_from(CONSTANTS)
    ctx = model.classes["app.Paths"]
    from oasforge.javasrc import NameRef
    assert resolve_string_constant(NameRef(("MISSING",)), ctx, model) is None


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)),
               max_size=40))
def test_resolve_string_constant_is_pure(text):
    model = model_from(CONSTANTS)
    ctx = model.classes["app.Paths"]
    lit = StrLit(text)
    assert resolve_string_constant(lit, ctx, model) == \
        resolve_string_constant(lit, ctx, model) == text


HIERARCHY = """
package app;

class A {}
class B extends A {}
class C extends B {}
"""


def test_chain_without_supertype_is_singleton():
    model = model_from(HIERARCHY)
    a = model.classes["app.A"]
    assert supertype_chain(a, model) == [a]


def test_chain_walks_upward_in_order():
    model = model_from(HIERARCHY)
    chain = supertype_chain(model.classes["app.C"], model)
    assert [c.simple_name for c in chain] == ["C", "B", "A"]


def test_chain_stops_at_unknown_supertype():
    model = model_from("package app;\nclass D extends Unknown {}\n")
    chain = supertype_chain(model.classes["app.D"], model)
    assert [c.simple_name for c in chain] == ["D"]


def test_chain_has_no_duplicates():
    model = model_from(HIERARCHY)
    for cls in model.classes.values():
        chain = supertype_chain(cls, model)
        names = [c.qualified_name for c in chain]
        assert len(names) == len(set(names))


def test_cycle_raises():
    model = model_from("package app;\nclass X extends Y {}\nclass Y extends X {}\n")
    with pytest.raises(SupertypeCycleError):
        supertype_chain(model.classes["app.X"], model)


def test_body_facts_capture_throw_and_statuses():
    src = """
package app;

import org.springframework.http.HttpStatus;
import org.springframework.http.ResponseEntity;

class H {
    ResponseEntity<String> h(boolean flag) {
        if (flag) {
            throw new IllegalStateException("x");
        }
        return new ResponseEntity<>("ok", HttpStatus.CREATED);
    }

    String nullOnly() {
        return null;
    }
}
"""
    model = model_from(src)
    methods = {m.name: m for m in model.classes["app.H"].methods}
    facts = methods["h"].body_facts
    assert facts.thrown_exception_types == {"IllegalStateException"}
    assert facts.returned_status_literals == {"CREATED"}
    assert not facts.returns_null_only
    assert methods["nullOnly"].body_facts.returns_null_only


def test_enum_constants_in_declaration_order():
    model = model_from("package app;\nenum Color { RED, GREEN, BLUE }\n")
    assert model.classes["app.Color"].enum_constants == ("RED", "GREEN", "BLUE")


def test_annotation_value_array_and_named_attributes():
    src = """
package app;
import org.springframework.web.bind.annotation.RequestMapping;

@RequestMapping(value = {"/a", "/b"}, produces = "application/json")
class M {}
"""
    model = model_from(src)
    anno = model.classes["app.M"].annotations[0]
    from oasforge.javasrc import ArrayVal
    assert isinstance(anno.attributes["value"], ArrayVal)
    assert len(anno.attributes["value"].items) == 2
