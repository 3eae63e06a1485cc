"""Strict JSON helpers shared by the document models.

Canonical form everywhere: two-space indent, LF line endings, keys emitted in
the documented order, one trailing newline. Decoding is strict: unknown keys
are schema errors, never silently dropped.
"""

from __future__ import annotations

import json

from .errors import ParseFailure

_MISSING = object()


def canonical_json(obj: object) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def canonical_json_bytes(obj: object) -> bytes:
    return canonical_json(obj).encode("utf-8")


def decode_utf8_json(document: bytes | str) -> object:
    if isinstance(document, (bytes, bytearray)):
        try:
            document = bytes(document).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseFailure("syntax-error", f"document is not valid UTF-8: {exc}") from exc
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseFailure("syntax-error", f"document is not valid JSON: {exc}") from exc


def require_object(value: object, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParseFailure("schema-error", f"{path}: expected an object, got {type(value).__name__}")
    return value


def check_keys(obj: dict, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    for key in required:
        if key not in obj:
            raise ParseFailure("schema-error", f"{path}: missing required key {key!r}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise ParseFailure("schema-error", f"{path}: unknown key {key!r}")


def require_string(obj: dict, key: str, path: str) -> str:
    value = obj.get(key, _MISSING)
    if value is _MISSING:
        raise ParseFailure("schema-error", f"{path}: missing required key {key!r}")
    if not isinstance(value, str):
        raise ParseFailure("schema-error", f"{path}.{key}: expected a string, got {type(value).__name__}")
    return value


def optional_string(obj: dict, key: str, path: str) -> str | None:
    value = obj.get(key, _MISSING)
    if value is _MISSING:
        return None
    if not isinstance(value, str):
        raise ParseFailure("schema-error", f"{path}.{key}: expected a string, got {type(value).__name__}")
    return value


def require_list(obj: dict, key: str, path: str) -> list:
    value = obj.get(key, _MISSING)
    if value is _MISSING:
        raise ParseFailure("schema-error", f"{path}: missing required key {key!r}")
    if not isinstance(value, list):
        raise ParseFailure("schema-error", f"{path}.{key}: expected an array, got {type(value).__name__}")
    return value
