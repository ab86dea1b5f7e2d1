"""Spring framework vocabulary: annotation names, HTTP status table,
servlet-parameter types."""

from __future__ import annotations

from http import HTTPStatus
from typing import Optional

from .javasrc import AnnotationUse, ClassDecl

HTTP_VERBS = ("GET", "POST", "PUT", "DELETE", "PATCH", "HEAD", "OPTIONS")

CONTROLLER_MARKERS = {"RestController", "Controller"}
ADVICE_MARKERS = {"ControllerAdvice", "RestControllerAdvice"}
PROFILE_MARKER = "Profile"

VERB_MAPPINGS = {
    "GetMapping": "GET",
    "PostMapping": "POST",
    "PutMapping": "PUT",
    "DeleteMapping": "DELETE",
    "PatchMapping": "PATCH",
}
REQUEST_MAPPING = "RequestMapping"
MAPPING_ANNOTATIONS = set(VERB_MAPPINGS) | {REQUEST_MAPPING}

PARAM_ANNOTATIONS = {"PathVariable", "RequestParam", "RequestHeader",
                     "RequestBody", "ModelAttribute"}

REQUIRED_MARKERS = {"NotNull", "NotEmpty"}

SERVLET_TYPES = {
    "HttpServletRequest", "HttpServletResponse", "ServletRequest",
    "ServletResponse", "WebRequest", "NativeWebRequest", "HttpSession",
}

# Packages whose annotations we treat as framework annotations when the
# import is resolvable; unknown imports matching these prefixes pass, any
# other resolved import masks the simple-name match.
FRAMEWORK_PACKAGE_PREFIXES = (
    "org.springframework",
    "javax.validation",
    "jakarta.validation",
    "javax.annotation",
    "jakarta.annotation",
    "java.lang",
)

# Spring HttpStatus constant names that differ from http.HTTPStatus, plus
# names absent from the stdlib table.
_EXTRA_STATUS = {
    "I_AM_A_TEAPOT": 418,
    "MOVED_TEMPORARILY": 302,
    "REQUEST_ENTITY_TOO_LARGE": 413,
    "REQUEST_URI_TOO_LONG": 414,
    "CHECKPOINT": 103,
    "PAYLOAD_TOO_LARGE": 413,
    "URI_TOO_LONG": 414,
    "DESTINATION_LOCKED": 421,
}

_STATUS_BY_NAME: dict[str, int] = {s.name: s.value for s in HTTPStatus}
_STATUS_BY_NAME.update(_EXTRA_STATUS)

_PHRASE_BY_CODE: dict[int, str] = {s.value: s.phrase for s in HTTPStatus}
_PHRASE_BY_CODE.setdefault(103, "Checkpoint")


def status_code_for(identifier: str) -> Optional[str]:
    """Map an HttpStatus constant name or numeric literal to a 3-digit code."""
    if identifier.isdigit():
        return identifier if len(identifier) == 3 else None
    code = _STATUS_BY_NAME.get(identifier)
    return str(code) if code is not None else None


def reason_phrase(code: str) -> str:
    try:
        return _PHRASE_BY_CODE.get(int(code), f"Status {code}")
    except ValueError:
        return f"Status {code}"


def is_framework_annotation(anno: AnnotationUse, cls: ClassDecl) -> bool:
    """Simple-name matching, gated by the import when it is resolvable."""
    imported = cls.imports.get(anno.simple_name)
    if imported is None:
        return True
    return imported.startswith(FRAMEWORK_PACKAGE_PREFIXES)


def find_annotation(annotations, name: str, cls: ClassDecl
                    ) -> Optional[AnnotationUse]:
    for anno in annotations:
        if anno.simple_name == name and is_framework_annotation(anno, cls):
            return anno
    return None
