from typing import TypeAlias
from json import dumps as _dumps, loads as _loads
from typing import Dict, List

JSONScalar: TypeAlias = str | int | float | bool | None
JSONObject: TypeAlias = Dict[str, "JSON"]
JSONArray: TypeAlias = List["JSON"]
JSON: TypeAlias = JSONScalar | JSONObject | JSONArray

INDENT = "  "


def _scalar(value: JSONScalar) -> str:
    return _dumps(value, ensure_ascii=False)


def _render(data: JSON, level: int) -> str:
    inner = INDENT * (level + 1)
    if isinstance(data, dict):
        if not data:
            return "{}"
        items = [
            f"{inner}{_scalar(key)}: {_render(value, level + 1)}"
            for key, value in data.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + INDENT * level + "}"
    if isinstance(data, list):
        # coefficient and series arrays stay on one line
        if all(not isinstance(item, (dict, list)) for item in data):
            return "[" + ", ".join(map(_scalar, data)) + "]"
        items = [f"{inner}{_render(item, level + 1)}" for item in data]
        return "[\n" + ",\n".join(items) + "\n" + INDENT * level + "]"
    return _scalar(data)


def dumps(data: JSON) -> str:
    """Indented JSON in insertion order, with arrays of scalars kept inline."""
    return _render(data, 0)


def loads(json: str) -> JSON:
    return _loads(json)
