from pathlib import Path

import pytest

from oasforge.javasrc import SourceModel, parse_source

TESTS_DIR = Path(__file__).parent
FIXTURES_DIR = TESTS_DIR / "fixtures"
GOLDEN_DIR = TESTS_DIR / "golden"
GT_DIR = TESTS_DIR / "gt"

# fixture projects that have a golden description per profile
GOLDEN_FIXTURES = [
    "profile_split", "constant_paths", "path_regex", "all_verbs",
    "model_attribute", "request_body", "void_default",
    "exception_precedence", "unresolved_exception", "allof_inheritance",
    "required_fields", "map_schema", "raw_wrapper",
]


def model_from(*sources: str) -> SourceModel:
    classes = {}
    for i, src in enumerate(sources):
        for cls in parse_source(src, f"<test-{i}>"):
            classes[cls.qualified_name] = cls
    return SourceModel(classes)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR
