"""Pydantic model and loader for benchmark configuration files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from pydantic import BaseModel
from pydantic import Field
from pydantic import ValidationError
from pydantic import field_validator

from .bench import DEFAULT_REPEATS
from .bench import DEFAULT_SEED
from .bench import REFERENCE_SIZES
from .errors import InvalidArgumentError
from .model import MAX_ORDER


class BenchSettings(BaseModel):
    """Benchmark parameters; command-line flags override any of them."""

    repeats: int = Field(DEFAULT_REPEATS, ge=1)
    warmup: int = Field(1, ge=0)
    seed: int = Field(DEFAULT_SEED, ge=0)
    order: int = Field(4, ge=0, le=MAX_ORDER)
    sizes: List[Tuple[int, int]] = Field(default_factory=lambda: list(REFERENCE_SIZES))

    @field_validator("sizes", mode="before")
    @classmethod
    def _parse_size_strings(cls, value: Any) -> Any:
        """Accept ``"WxH"`` strings alongside ``[W, H]`` pairs."""

        if not isinstance(value, list):
            return value
        return [parse_size(item) if isinstance(item, str) else item for item in value]

    @field_validator("sizes")
    @classmethod
    def _validate_sizes(cls, value: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        """Ensure every dimension is positive and the list is not empty."""

        if not value:
            raise ValueError("sizes cannot be empty")
        for width, height in value:
            if width < 1 or height < 1:
                raise ValueError(f"image size {width}x{height} must be positive")
        return value


def parse_size(token: str) -> Tuple[int, int]:
    """Parse a ``WxH`` size token.

    Raises:
        InvalidArgumentError: If the token is malformed or a dimension is
            not positive.
    """
    parts = token.strip().lower().split("x")
    if len(parts) != 2 or not all(part.isdigit() for part in parts):
        raise InvalidArgumentError(f"malformed size {token!r}; expected WxH")
    width, height = int(parts[0]), int(parts[1])
    if width < 1 or height < 1:
        raise InvalidArgumentError(f"image size {token!r} must be positive")
    return width, height


def _load_config_from_path(path: Path) -> Dict[str, Any]:
    """Return configuration data parsed from a JSON file."""

    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")
    with path.open("r", encoding="utf-8") as handle:
        try:
            parsed = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"Invalid JSON in {path}: {exc}") from exc
    if not isinstance(parsed, dict):
        raise InvalidArgumentError("Configuration JSON must decode to a mapping")
    return parsed


def load_bench_settings(path: Optional[Path] = None, **overrides: Any) -> BenchSettings:
    """Load benchmark settings from an optional JSON file.

    Args:
        path (Optional[Path]): JSON document with any :class:`BenchSettings`
            fields. Defaults apply when omitted.
        **overrides (Any): Values that replace the file's; ``None`` values
            are ignored.

    Returns:
        BenchSettings: Validated settings.

    Raises:
        InvalidArgumentError: If the document or an override is invalid.
    """
    config_data = _load_config_from_path(path.expanduser()) if path is not None else {}
    config_data.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return BenchSettings(**config_data)
    except ValidationError as exc:
        raise InvalidArgumentError(f"invalid benchmark settings: {exc}") from exc


__all__ = ["BenchSettings", "load_bench_settings", "parse_size"]
