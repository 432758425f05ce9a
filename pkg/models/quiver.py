"""
Quiver and dimension vector value types
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from core.exceptions import DimensionError, QuiverError

DimVector = Tuple[int, ...]

# ids must survive the potential text format
_BAD_ID = re.compile(r"[\s.+\-]")


@dataclass(frozen=True)
class Arrow:
    """A labelled arrow source -> target"""
    id: str
    source: str
    target: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Quiver:
    """Finite quiver; vertex order fixes dimension vector coordinates"""
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _arrow_map: Dict[str, Arrow] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        arrows = tuple(self.arrows)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)

        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex ids", vertices=list(vertices))
        index = {v: i for i, v in enumerate(vertices)}

        arrow_map: Dict[str, Arrow] = {}
        for arrow in arrows:
            if not arrow.id or _BAD_ID.search(arrow.id):
                raise QuiverError(f"invalid arrow id {arrow.id!r}")
            if arrow.id in arrow_map:
                raise QuiverError(f"duplicate arrow id {arrow.id!r}")
            if arrow.source not in index or arrow.target not in index:
                raise QuiverError(f"arrow {arrow.id!r} refers to an undeclared vertex")
            arrow_map[arrow.id] = arrow

        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_arrow_map", arrow_map)

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[Sequence[str]] = ()) -> "Quiver":
        """Build from (id, source, target) triples"""
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(str(a), str(s), str(t)) for a, s, t in arrows))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def arrow_ids(self) -> List[str]:
        return [a.id for a in self.arrows]

    def vertex_index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise QuiverError(f"unknown vertex {vertex!r}") from None

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrow_map[arrow_id]
        except KeyError:
            raise QuiverError(f"unknown arrow {arrow_id!r}") from None

    def has_arrow(self, arrow_id: str) -> bool:
        return arrow_id in self._arrow_map

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._index

    def source_index(self, arrow_id: str) -> int:
        return self._index[self.arrow(arrow_id).source]

    def target_index(self, arrow_id: str) -> int:
        return self._index[self.arrow(arrow_id).target]

    def check_dim(self, d: Sequence[int], name: str = "d") -> DimVector:
        """Validate a dimension vector against this quiver"""
        d = tuple(int(x) for x in d)
        if len(d) != self.num_vertices:
            raise DimensionError(
                f"{name} has {len(d)} entries, quiver has {self.num_vertices} vertices",
                expected=self.num_vertices,
                got=len(d),
            )
        if any(x < 0 for x in d):
            raise DimensionError(f"{name} has negative entries", d=list(d))
        return d

    def canonical_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.arrows],
        }
