import hashlib
import json
from abc import abstractmethod
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from agqss.models.funcfield import CurveModel, Place
from agqss.models.gf import FieldSpec
from agqss.models.scheme import SchemeParams
from agqss.sharing.qsim import CheckMode


class FieldConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int = Field(..., ge=2)
    m: int = Field(1, ge=1)
    # highest degree first; configured default when omitted
    modulus: Optional[List[int]] = None

    def to_spec(self) -> FieldSpec:
        if self.modulus is None:
            return FieldSpec.default(self.p, self.m)
        return FieldSpec(self.p, self.m, tuple(self.modulus))

    @classmethod
    def from_spec(cls, spec: FieldSpec) -> "FieldConfig":
        return cls(p=spec.p, m=spec.m, modulus=list(spec.modulus))


class CapsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    operator: Optional[int] = Field(None, ge=1)


class InstanceBase(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    field: FieldConfig
    u: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    secret_length: int = Field(..., ge=1, alias="L")

    # affine coordinates as element reprs; default assignment when omitted
    share_places: Optional[List[List[int]]] = None
    secret_places: Optional[List[List[int]]] = None

    seed: Optional[int] = None
    caps: CapsConfig = CapsConfig()
    mode: CheckMode = CheckMode.both

    @abstractmethod
    def curve_model(self) -> CurveModel: ...

    def to_params(self) -> SchemeParams:
        curve = self.curve_model()
        share = [Place.affine(*c) for c in self.share_places] if self.share_places is not None else None
        secret = [Place.affine(*c) for c in self.secret_places] if self.secret_places is not None else None
        return SchemeParams.with_default_places(curve, self.u, self.n, self.secret_length, share, secret)

    def canonical_json(self) -> str:
        return json.dumps(
            self.model_dump(mode="json", by_alias=True), sort_keys=True, separators=(",", ":")
        )

    def instance_hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


class RationalInstance(InstanceBase):
    curve: Literal["rational"]

    def curve_model(self) -> CurveModel:
        return CurveModel.rational(self.field.to_spec())


class HermitianInstance(InstanceBase):
    curve: Literal["hermitian"]
    q0: int = Field(..., ge=2)

    def curve_model(self) -> CurveModel:
        return CurveModel.hermitian(self.field.to_spec(), self.q0)


InstanceConfig = Annotated[Union[RationalInstance, HermitianInstance], Field(discriminator="curve")]

instance_adapter = TypeAdapter(InstanceConfig)
