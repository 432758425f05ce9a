"""
Quiver constructions and the Euler form
"""

import hashlib
import json
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence

import networkx as nx
import numpy as np

from core.exceptions import DimensionError, QuiverError
from models.quiver import Arrow, DimVector, Quiver

FRAMING_VERTEX = "∞"
LOOP_PREFIX = "ω_"


def star(arrow_id: str) -> str:
    return arrow_id + "*"


def loop_name(vertex: str) -> str:
    return LOOP_PREFIX + vertex


def _with_new_arrows(Q: Quiver, new: Iterable[Arrow], vertices: Sequence[str] = None) -> Quiver:
    new = list(new)
    taken = set(Q.arrow_ids)
    for arrow in new:
        if arrow.id in taken:
            raise QuiverError(f"generated arrow name {arrow.id!r} collides with an existing arrow")
        taken.add(arrow.id)
    return Quiver(tuple(vertices or Q.vertices), Q.arrows + tuple(new))


def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """chi(d, e) = sum_i d_i e_i - sum_a d_s(a) e_t(a)"""
    d = Q.check_dim(d, "d")
    e = Q.check_dim(e, "e")
    value = sum(x * y for x, y in zip(d, e))
    for arrow in Q.arrows:
        value -= d[Q.vertex_index(arrow.source)] * e[Q.vertex_index(arrow.target)]
    return value


def double(Q: Quiver) -> Quiver:
    return _with_new_arrows(Q, (Arrow(star(a.id), a.target, a.source) for a in Q.arrows))


def triple(Q: Quiver) -> Quiver:
    doubled = double(Q)
    return _with_new_arrows(doubled, (Arrow(loop_name(v), v, v) for v in Q.vertices))


def opposite(Q: Quiver) -> Quiver:
    return Quiver(Q.vertices, tuple(Arrow(star(a.id), a.target, a.source) for a in Q.arrows))


def omega_quiver(Q: Quiver) -> Quiver:
    """Same vertices, one loop per vertex and nothing else"""
    return Quiver(Q.vertices, tuple(Arrow(loop_name(v), v, v) for v in Q.vertices))


def frame(Q: Quiver, f: Sequence[int]) -> Quiver:
    """Append vertex ∞ with f_i arrows ∞ -> i"""
    f = Q.check_dim(f, "f")
    if Q.has_vertex(FRAMING_VERTEX):
        raise QuiverError(f"vertex {FRAMING_VERTEX!r} already exists")
    new = [
        Arrow(f"{FRAMING_VERTEX}_{v}_{k}", FRAMING_VERTEX, v)
        for v, count in zip(Q.vertices, f)
        for k in range(1, count + 1)
    ]
    return _with_new_arrows(Q, new, Q.vertices + (FRAMING_VERTEX,))


def arrow_counts(Q: Quiver) -> np.ndarray:
    """counts[i, j] = number of arrows i -> j"""
    counts = np.zeros((Q.num_vertices, Q.num_vertices), dtype=np.int64)
    for arrow in Q.arrows:
        counts[Q.vertex_index(arrow.source), Q.vertex_index(arrow.target)] += 1
    return counts


def is_symmetric(Q: Quiver) -> bool:
    counts = arrow_counts(Q)
    return bool(np.array_equal(counts, counts.T))


# ========== STANDARD QUIVERS ==========

def loop_quiver(m: int) -> Quiver:
    """Q^(m): one vertex with m loops"""
    if m < 0:
        raise QuiverError("loop count must be non-negative")
    names = ["l"] if m == 1 else [f"l{k}" for k in range(1, m + 1)]
    return Quiver.build(["0"], [(name, "0", "0") for name in names])


def affine_a1() -> Quiver:
    """Two vertices with a: 0 -> 1 and b: 1 -> 0"""
    return Quiver.build(["0", "1"], [("a", "0", "1"), ("b", "1", "0")])


# ========== DIMENSION VECTORS ==========

def dot(mu: Sequence, d: Sequence[int]) -> Fraction:
    if len(mu) != len(d):
        raise DimensionError(f"mu has {len(mu)} entries, d has {len(d)}")
    return sum((Fraction(m) * x for m, x in zip(mu, d)), Fraction(0))


def is_indivisible(d: Sequence[int]) -> bool:
    g = 0
    for x in d:
        g = gcd(g, int(x))
    return g == 1


def support(Q: Quiver, d: Sequence[int]) -> List[str]:
    d = Q.check_dim(d)
    return [v for v, x in zip(Q.vertices, d) if x > 0]


def full_subquiver(Q: Quiver, vertices: Iterable[str]) -> Quiver:
    keep = set(vertices)
    for v in keep:
        Q.vertex_index(v)
    ordered = tuple(v for v in Q.vertices if v in keep)
    arrows = tuple(a for a in Q.arrows if a.source in keep and a.target in keep)
    return Quiver(ordered, arrows)


def restrict_dim(Q: Quiver, d: Sequence[int], sub: Quiver) -> DimVector:
    d = Q.check_dim(d)
    return tuple(d[Q.vertex_index(v)] for v in sub.vertices)


def underlying_graph(Q: Quiver) -> nx.MultiGraph:
    """Undirected multigraph on the vertices, one edge per arrow"""
    G = nx.MultiGraph()
    G.add_nodes_from(Q.vertices)
    G.add_edges_from((a.source, a.target, a.id) for a in Q.arrows)
    return G


def is_connected(Q: Quiver) -> bool:
    """Connectivity of the underlying graph"""
    if Q.num_vertices == 0:
        return True
    return nx.is_connected(underlying_graph(Q))


def reverse_arrow(Q: Quiver, arrow_id: str) -> Quiver:
    """Reverse one arrow, keeping its name"""
    target = Q.arrow(arrow_id)
    arrows = tuple(Arrow(a.id, a.target, a.source) if a.id == target.id else a for a in Q.arrows)
    return Quiver(Q.vertices, arrows)


def quiver_hash(Q: Quiver) -> str:
    """sha256 of the canonical JSON serialization"""
    payload = json.dumps(Q.canonical_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
