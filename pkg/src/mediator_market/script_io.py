"""Reading and writing operation scripts.

A script is a YAML block sequence of flat mappings, one per operation::

    - op: deposit
      user: 0
      amount: 100
    - op: sell
      item: 0
      buyer: 1

Parsing has two layers: YAML syntax first, then each mapping is checked
against the four-operation schema and turned into an operation object.
Every malformed input raises a :class:`ScriptError` naming what is wrong
and where.
"""

from __future__ import annotations

import re
from typing import List, Optional, Sequence

import yaml

from .naturals import NAT_MAX
from .operations import SCHEMA, TAGS, Operation

_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)

_DECIMAL = re.compile(r"[+-]?(0|[1-9][0-9]*)\Z")

# accepted on input, never emitted
_ALIASES = {"sell": {"user": "buyer"}}


class ScriptError(Exception):
    kind = "ScriptError"

    def __init__(self, message: str, index: Optional[int] = None,
                 field: Optional[str] = None, line: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"operation {index}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{self.kind}: {prefix}{message}")
        self.index = index
        self.field = field
        self.line = line


class ScriptSyntaxError(ScriptError):
    kind = "SyntaxError"


class ShapeError(ScriptError):
    """The document or an entry is not the expected sequence/mapping."""

    kind = "ShapeError"


class UnknownOperation(ScriptError):
    kind = "UnknownOperation"


class MissingField(ScriptError):
    kind = "MissingField"


class ExtraField(ScriptError):
    kind = "ExtraField"


class NonIntegerField(ScriptError):
    kind = "NonIntegerField"


class NegativeField(ScriptError):
    kind = "NegativeField"


class _ScriptLoader(_Loader):
    """Safe loader that rejects duplicate keys and non-decimal integers."""


def _construct_int(loader, node):
    text = node.value
    if _DECIMAL.match(text):
        return int(text)
    # hex, octal, sexagesimal, ... stay text and fail the schema check
    return text


def _construct_mapping(loader, node):
    loader.flatten_mapping(node)
    seen = {}
    for key_node, _ in node.value:
        key = loader.construct_object(key_node)
        try:
            hash(key)
        except TypeError:
            raise yaml.constructor.ConstructorError(
                None, None, "mapping key is not a scalar", key_node.start_mark)
        if key in seen:
            raise yaml.constructor.ConstructorError(
                None, None, f"duplicate key {key!r}", key_node.start_mark)
        seen[key] = True
    return loader.construct_mapping(node)


_ScriptLoader.add_constructor("tag:yaml.org,2002:int", _construct_int)
_ScriptLoader.add_constructor("tag:yaml.org,2002:map", _construct_mapping)


def _load(text: str):
    try:
        return yaml.load(text, Loader=_ScriptLoader)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark or err.context_mark
        line = mark.line + 1 if mark is not None else None
        raise ScriptSyntaxError(err.problem or str(err), line=line) from None
    except yaml.YAMLError as err:
        raise ScriptSyntaxError(str(err)) from None
    except RecursionError:
        raise ScriptSyntaxError("nesting too deep") from None


def _operation(index: int, entry) -> Operation:
    if not isinstance(entry, dict):
        raise ShapeError(f"expected a mapping, got {type(entry).__name__}", index=index)
    if "op" not in entry:
        raise MissingField("no operation tag", index=index, field="op")
    tag = entry["op"]
    if not isinstance(tag, str) or tag not in SCHEMA:
        raise UnknownOperation(f"unknown operation {tag!r}", index=index, field="op")
    cls, names = SCHEMA[tag]
    aliases = _ALIASES.get(tag, {})

    values = {}
    for key, value in entry.items():
        if key == "op":
            continue
        name = aliases.get(key, key)
        if name not in names or name in values:
            raise ExtraField(f"unexpected field for {tag}", index=index, field=str(key))
        if type(value) is not int:
            raise NonIntegerField(f"expected an integer, got {value!r}", index=index, field=name)
        if value < 0:
            raise NegativeField(f"must be non-negative, got {value}", index=index, field=name)
        if value > NAT_MAX:
            raise NonIntegerField(f"{value} exceeds the 64-bit range", index=index, field=name)
        values[name] = value
    for name in names:
        if name not in values:
            raise MissingField(f"{tag} needs {name}", index=index, field=name)
    return cls(**values)


def parse_script(text: str) -> List[Operation]:
    """Parse script text into an ordered list of operations."""
    data = _load(text)
    if data is None:
        return []
    if not isinstance(data, list):
        raise ShapeError(f"expected a sequence of operations, got {type(data).__name__}")
    return [_operation(i, entry) for i, entry in enumerate(data)]


def serialize_script(ops: Sequence[Operation]) -> str:
    """Emit the canonical text form; ``parse_script`` inverts it exactly."""
    if not ops:
        return "[]\n"
    parts = []
    for op in ops:
        tag = TAGS[type(op)]
        _, names = SCHEMA[tag]
        parts.append(f"- op: {tag}\n")
        for name in names:
            parts.append(f"  {name}: {getattr(op, name)}\n")
    return "".join(parts)
