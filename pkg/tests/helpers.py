"""
Random small inputs for the property suites
"""

import random
from fractions import Fraction
from typing import List

import numpy as np

from models.quiver import Quiver
from models.series import GradedSeries, dim_vectors_up_to
from models.tate import TatePoly
from services.quiver import arrow_counts


def random_quiver(rng: random.Random, max_vertices: int = 3, max_arrows: int = 4) -> Quiver:
    n = rng.randint(1, max_vertices)
    vertices = [str(i) for i in range(n)]
    arrows = []
    for k in range(rng.randint(0, max_arrows)):
        arrows.append((f"x{k}", rng.choice(vertices), rng.choice(vertices)))
    return Quiver.build(vertices, arrows)


def random_dim(rng: random.Random, Q: Quiver, top: int = 3) -> List[int]:
    return [rng.randint(0, top) for _ in Q.vertices]


def random_tate_poly(rng: random.Random, lo: int = -3, hi: int = 3, nonneg: bool = False) -> TatePoly:
    coeffs = {}
    for e in rng.sample(range(lo, hi + 1), rng.randint(1, 3)):
        c = rng.randint(0 if nonneg else -3, 3)
        coeffs[e] = c
    return TatePoly(coeffs)


def random_series(rng: random.Random, nverts: int, cutoff: int, nonneg: bool = False, density: float = 0.4) -> GradedSeries:
    """Polynomial-coefficient series without constant term"""
    coeffs = {}
    for d in dim_vectors_up_to(nverts, cutoff):
        if rng.random() < density:
            coeffs[d] = random_tate_poly(rng, nonneg=nonneg)
    return GradedSeries(nverts, cutoff, coeffs)


def fraction_list(values) -> List[Fraction]:
    return [Fraction(v) for v in values]


def same_shape(Q1: Quiver, Q2: Quiver) -> bool:
    """Equal vertex lists and equal arrow-count matrices"""
    return Q1.vertices == Q2.vertices and bool(np.array_equal(arrow_counts(Q1), arrow_counts(Q2)))
