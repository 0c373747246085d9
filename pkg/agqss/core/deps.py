"""Shared command dependencies: read a config, hash it, build its code pair."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from pydantic import ValidationError

from agqss.core.errors import SchemaError
from agqss.models.scheme import CodePair, build
from agqss.schemas.instance import InstanceBase, instance_adapter

logger = logging.getLogger(__name__)


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<root>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def read_json(path: Path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_model(path: Path, data: object, validate):
    try:
        return validate(data)
    except ValidationError as exc:
        raise SchemaError(f"{path}: {_format_validation(exc)}") from exc


def load_config(path: Path) -> InstanceBase:
    return parse_model(path, read_json(path), instance_adapter.validate_python)


@dataclass(frozen=True, eq=False)
class Instance:
    path: Path
    config: InstanceBase

    @cached_property
    def instance_hash(self) -> str:
        return self.config.instance_hash()

    @cached_property
    def code_pair(self) -> CodePair:
        logger.debug("building %s (%s)", self.path, self.instance_hash[:12])
        return build(self.config.to_params())

    def operator_cap(self, override: int | None = None) -> int | None:
        return override if override is not None else self.config.caps.operator


def get_instance(path: Path) -> Instance:
    return Instance(Path(path), load_config(path))
