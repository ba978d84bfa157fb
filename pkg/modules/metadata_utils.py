"""
Metadata utilities for quatforms.
This module provides functions for building and writing JSON documents.

Integers are written as decimal strings and rationals as "a/b" so that no
value depends on a JSON reader's number width.
"""

import dataclasses
import json
import os
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

from arith_helper.cyclotomic import CyclotomicInt
from modules.version import APP_VERSION

TOOL_NAME = "quatforms"


def fraction_to_str(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def to_json_value(value: Any) -> Any:
    """
    Convert a result value to something json.dumps accepts.

    Args:
        value: Any result value (ints, Fractions, CyclotomicInts, dataclasses, containers)

    Returns:
        JSON-safe value with integers as decimal strings
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    if isinstance(value, CyclotomicInt):
        return {"conductor": str(value.conductor), "coeffs": [str(c) for c in value.coeffs]}
    if hasattr(value, "to_record"):
        return to_json_value(value.to_record())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_json_value(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_json_value(v) for v in items]
    raise TypeError(f"cannot serialise {type(value).__name__}")


def create_metadata(command: str, parameters: Dict[str, Any]) -> Dict[str, Any]:
    """
    Create the document envelope for a command result.

    Args:
        command: Command name
        parameters: Validated run parameters

    Returns:
        Metadata dictionary (no timestamps, so documents are reproducible)
    """
    return {
        "tool": TOOL_NAME,
        "version": APP_VERSION,
        "command": command,
        "parameters": to_json_value(parameters),
    }


def dumps(document: Any) -> str:
    return json.dumps(to_json_value(document), sort_keys=True, indent=2, ensure_ascii=False)


def dump_json(document: Any, path: Optional[str] = None) -> str:
    """Serialise canonically; also write to path when one is given."""
    text = dumps(document)
    if path:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w") as f:
            f.write(text + "\n")
    return text


def dumps_line(document: Any) -> str:
    """Canonical single-line JSON, for streamed records."""
    return json.dumps(to_json_value(document), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
