"""
Pydantic schema for one CLI job
"""

from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

COMMANDS = ("kac", "dt", "series", "potential", "count")
SERIES_KINDS = ("stack", "coha", "free", "dt")
ACTIONS = ("derive", "jacobi", "substitute", "tripled", "check-gkw", "check-conifold")


def _split(v) -> list:
    if isinstance(v, str):
        v = v.strip()
        if not v:
            raise ValueError("empty list")
        return [part.strip() for part in v.split(",")]
    return list(v)


class JobSpec(BaseModel):
    """Parsed and validated command-line job"""
    command: str
    quiver: Optional[str] = None
    mu: Optional[List[Fraction]] = None
    dim: Optional[List[int]] = None
    cutoff: Optional[int] = Field(None, ge=0)
    prime: Optional[int] = Field(None, ge=2)
    kind: Optional[str] = None
    action: Optional[str] = None
    potential: Optional[str] = None
    subst: List[str] = Field(default_factory=list)
    arrow: Optional[str] = None
    power: int = Field(2, ge=1)
    method: Optional[str] = None
    workers: Optional[int] = Field(None, ge=1)
    expand: Optional[str] = None
    cache: Optional[str] = None
    no_cache: bool = False
    moduli: bool = False
    format: str = "json"

    model_config = ConfigDict(arbitrary_types_allowed=True, extra="forbid")

    @field_validator("mu", mode="before")
    @classmethod
    def parse_mu(cls, v):
        """'1,-1' or '1/2,0'"""
        if v is None:
            return v
        try:
            return [Fraction(str(x)) for x in _split(v)]
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad rational list {v!r}") from None

    @field_validator("dim", mode="before")
    @classmethod
    def parse_dim(cls, v):
        if v is None:
            return v
        try:
            dims = [int(str(x)) for x in _split(v)]
        except ValueError:
            raise ValueError(f"bad dimension vector {v!r}") from None
        if any(x < 0 for x in dims):
            raise ValueError("dimension vector entries must be non-negative")
        return dims

    @field_validator("format")
    @classmethod
    def known_format(cls, v):
        if v not in ("json", "text"):
            raise ValueError("format must be json or text")
        return v

    @field_validator("expand")
    @classmethod
    def check_window(cls, v):
        """LO:HI"""
        if v is None:
            return v
        lo, sep, hi = v.partition(":")
        try:
            if not sep or int(lo) > int(hi):
                raise ValueError
        except ValueError:
            raise ValueError(f"bad expansion window {v!r}, expected LO:HI") from None
        return v

    @model_validator(mode="after")
    def required_fields(self):
        """Command-specific required fields"""
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        needs = {
            "kac": ("quiver", "dim"),
            "dt": ("quiver", "mu", "dim"),
            "series": ("quiver", "kind"),
            "potential": ("action",),
            "count": ("quiver", "dim", "prime"),
        }[self.command]
        missing = [name for name in needs if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command} needs --{', --'.join(missing)}")
        if self.kind is not None and self.kind not in SERIES_KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        if self.action is not None and self.action not in ACTIONS:
            raise ValueError(f"unknown potential action {self.action!r}")
        if self.method is not None and self.method not in ("canonical", "mass"):
            raise ValueError(f"unknown orbit method {self.method!r}")
        return self

    @property
    def window(self):
        if self.expand is None:
            return None
        lo, _, hi = self.expand.partition(":")
        return int(lo), int(hi)
