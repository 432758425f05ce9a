"""
Pydantic schemas for the quiver JSON format
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from models.quiver import Arrow, Quiver


class ArrowSpec(BaseModel):
    """{"id": "a", "from": "0", "to": "1"}"""
    id: str = Field(..., min_length=1)
    source: str = Field(..., alias="from")
    target: str = Field(..., alias="to")

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    @field_validator("source", "target", mode="before")
    @classmethod
    def vertex_as_string(cls, v):
        return str(v)


class QuiverFile(BaseModel):
    """A quiver as stored on disk"""
    vertices: List[str]
    arrows: List[ArrowSpec] = Field(default_factory=list)

    model_config = ConfigDict(extra="forbid")

    @field_validator("vertices", mode="before")
    @classmethod
    def vertices_as_strings(cls, v):
        if not isinstance(v, list):
            raise ValueError("vertices must be a list")
        return [str(x) for x in v]

    def to_quiver(self) -> Quiver:
        return Quiver(tuple(self.vertices), tuple(Arrow(a.id, a.source, a.target) for a in self.arrows))

    @classmethod
    def from_quiver(cls, Q: Quiver) -> "QuiverFile":
        return cls(
            vertices=list(Q.vertices),
            arrows=[ArrowSpec(id=a.id, source=a.source, target=a.target) for a in Q.arrows],
        )

    def dump(self) -> dict:
        return self.model_dump(by_alias=True)
