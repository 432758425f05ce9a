"""
Pydantic schemas for the Kac cache file
"""

from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field, field_validator


class KacCacheEntry(BaseModel):
    """One cached Kac polynomial"""
    d: List[int] = Field(..., min_length=1)
    poly: Dict[str, int]
    primes: List[int]

    model_config = ConfigDict(extra="forbid")

    @field_validator("d")
    @classmethod
    def non_negative(cls, v):
        if any(x < 0 for x in v):
            raise ValueError("dimension vector entries must be non-negative")
        return v

    @field_validator("poly")
    @classmethod
    def exponent_keys(cls, v):
        """Exponents are decimal strings of non-negative integers"""
        for key in v:
            if not key.isdigit():
                raise ValueError(f"bad exponent key {key!r}")
        return v


class KacCacheFile(BaseModel):
    """Cache document for one quiver"""
    quiver_hash: str = Field(..., min_length=64, max_length=64)
    entries: List[KacCacheEntry] = Field(default_factory=list)
