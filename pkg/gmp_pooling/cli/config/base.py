import json
import math
from pathlib import Path
from typing import Dict, Iterable, Optional

from ...errors import ConfigError


class BaseRecord:
    """Base class for JSON configuration records: a type tag plus a body."""

    # keys a record body may hold; anything else is rejected
    required_keys: tuple = ()
    optional_keys: tuple = ()

    def __init__(self, record_type: str, body: Optional[Dict] = None):
        """Initialize a base record.

        Args:
            record_type: The record type (e.g. "gmp-pool/pipeline")
            body: The validated record fields
        """
        self.type = record_type
        self.body = body or {}

    def to_dict(self) -> Dict:
        """Convert the record to a dictionary."""
        return {"type": self.type, **self.body}

    @classmethod
    def from_dict(cls, record_dict: Dict):
        """Create a record instance from a dictionary.

        Subclasses validate and normalize the body in ``validate``.
        """
        if not isinstance(record_dict, dict):
            raise ConfigError("<root>", f"expected a JSON object, got {type(record_dict).__name__}")
        body = dict(record_dict)
        record_type = body.pop("type", cls.record_type)
        if record_type != cls.record_type:
            raise ConfigError("type", f"expected {cls.record_type!r}, got {record_type!r}")
        expect_keys(body, cls.required_keys, cls.optional_keys, "")
        return cls(cls.validate(body))

    @classmethod
    def from_file(cls, path):
        try:
            record_dict = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError("<root>", f"{path} is not valid JSON (line {e.lineno}: {e.msg})") from e
        return cls.from_dict(record_dict)

    @classmethod
    def validate(cls, body: Dict) -> Dict:
        return body


def join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else str(key)


def expect_keys(mapping, required: Iterable[str], optional: Iterable[str], path: str) -> None:
    if not isinstance(mapping, dict):
        raise ConfigError(path or "<root>", f"expected an object, got {type(mapping).__name__}")
    allowed = set(required) | set(optional)
    for key in mapping:
        if key not in allowed:
            raise ConfigError(join(path, key), f"unknown key (allowed: {', '.join(sorted(allowed))})")
    for key in required:
        if key not in mapping:
            raise ConfigError(join(path, key), "missing required key")


def expect_number(value, path: str, minimum: Optional[float] = None, maximum: Optional[float] = None,
                  integer: bool = False, exclusive_minimum: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if integer and not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(path, f"must be finite, got {value!r}")
    if minimum is not None:
        if exclusive_minimum and not value > minimum:
            raise ConfigError(path, f"must be > {minimum}, got {value}")
        if not exclusive_minimum and not value >= minimum:
            raise ConfigError(path, f"must be >= {minimum}, got {value}")
    if maximum is not None and not value <= maximum:
        raise ConfigError(path, f"must be <= {maximum}, got {value}")
    return value


def expect_choice(value, choices: Iterable[str], path: str) -> str:
    choices = list(choices)
    if value not in choices:
        raise ConfigError(path, f"expected one of {choices}, got {value!r}")
    return value


def expect_matrix(value, path: str, columns: Optional[int] = None):
    """A non-empty list of equal-length numeric rows."""
    if not isinstance(value, list) or not value:
        raise ConfigError(path, "expected a non-empty list of rows")
    width = None
    for i, row in enumerate(value):
        row_path = join(path, i)
        if not isinstance(row, list) or not row:
            raise ConfigError(row_path, "expected a non-empty list of numbers")
        for j, entry in enumerate(row):
            expect_number(entry, join(row_path, j))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ConfigError(row_path, f"expected {width} values, got {len(row)}")
    if columns is not None and width != columns:
        raise ConfigError(path, f"expected rows of {columns} values, got {width}")
    return value
