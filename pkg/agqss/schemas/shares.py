from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from agqss.schemas.instance import FieldConfig


class ShareEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    index: int = Field(..., ge=1)  # participant number, 1-based
    value: int = Field(..., ge=0)


class ShareFile(BaseModel):
    """Classical shares of one dealing, element values as reprs."""

    model_config = ConfigDict(extra="forbid")

    tool: str
    version: str
    instance_hash: str
    field: FieldConfig
    n: int = Field(..., ge=1)
    seed: Optional[int] = None
    rng: str
    shares: List[ShareEntry]

    @model_validator(mode="after")
    def check_shares(self) -> "ShareFile":
        q = self.field.p**self.field.m
        for s in self.shares:
            if s.index > self.n:
                raise ValueError(f"share index {s.index} exceeds n = {self.n}")
            if s.value >= q:
                raise ValueError(f"share {s.index} has value {s.value} outside F_{q}")
        return self

    def values_on(self, subset: Optional[List[int]] = None) -> tuple[list[int], list[int]]:
        """0-based indices and values of the requested 1-based participants."""
        by_index = {s.index: s.value for s in self.shares}
        wanted = sorted(by_index) if subset is None else sorted(set(subset))
        missing = [i for i in wanted if i not in by_index]
        if missing:
            raise KeyError(missing)
        return [i - 1 for i in wanted], [by_index[i] for i in wanted]
