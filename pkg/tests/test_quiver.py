"""
Quiver constructions, Euler form and the quiver file format
"""

import pytest
from pydantic import ValidationError

from core.exceptions import DimensionError, QuiverError
from models.quiver import Quiver
from schemas.quiver import QuiverFile
from services.quiver import (
    arrow_counts,
    double,
    euler_form,
    frame,
    full_subquiver,
    is_connected,
    is_indivisible,
    is_symmetric,
    loop_quiver,
    omega_quiver,
    opposite,
    quiver_hash,
    reverse_arrow,
    support,
    triple,
    underlying_graph,
)
from tests.helpers import random_dim, random_quiver, same_shape


def test_euler_form_examples(point, jordan, aff_a1):
    """Test the Euler form on the standard quivers"""
    for n in range(4):
        assert euler_form(point, [n], [n]) == n * n
    assert euler_form(jordan, [1], [1]) == 0
    assert euler_form(aff_a1, [1, 1], [1, 1]) == 0
    assert euler_form(aff_a1, [1, 0], [1, 0]) == 1


def test_euler_form_length_mismatch(aff_a1):
    """Test that a dimension vector of the wrong length is rejected"""
    with pytest.raises(DimensionError):
        euler_form(aff_a1, [1], [1, 1])
    with pytest.raises(DimensionError):
        euler_form(aff_a1, [1, -1], [1, 1])


def test_double_and_triple(point, jordan, aff_a1):
    """Test doubling and tripling"""
    assert double(point) == point
    assert double(jordan).arrow_ids == ["l", "l*"]
    assert double(aff_a1).arrow_ids == ["a", "b", "a*", "b*"]
    assert double(aff_a1).arrow("a*").source == "1"

    assert same_shape(triple(point), loop_quiver(1))
    assert same_shape(triple(jordan), loop_quiver(3))
    tripled = triple(aff_a1)
    assert tripled.arrow_ids == ["a", "b", "a*", "b*", "ω_0", "ω_1"]
    assert tripled.arrow("ω_1").is_loop


def test_opposite_and_omega(point, aff_a1):
    """Test opposite and loops-only quivers"""
    assert opposite(point) == point
    single = Quiver.build(["0", "1"], [("a", "0", "1")])
    flipped = opposite(single)
    assert (flipped.arrows[0].source, flipped.arrows[0].target) == ("1", "0")
    assert same_shape(opposite(opposite(aff_a1)), aff_a1)

    assert same_shape(omega_quiver(point), loop_quiver(1))
    omega = omega_quiver(aff_a1)
    assert omega.arrow_ids == ["ω_0", "ω_1"]
    assert omega.vertices == aff_a1.vertices


def test_frame(point, aff_a1):
    """Test the framing construction"""
    framed = frame(point, [1])
    assert framed.vertices == ("0", "∞")
    assert len(framed.arrows) == 1
    assert framed.arrows[0].source == "∞"

    isolated = frame(point, [0])
    assert isolated.num_vertices == 2 and not isolated.arrows

    big = frame(aff_a1, [2, 1])
    assert big.num_vertices == 3
    assert len(big.arrows) == 5

    with pytest.raises(DimensionError):
        frame(aff_a1, [1])


def test_generated_name_collision():
    """Test that generated arrow names may not collide with user names"""
    Q = Quiver.build(["0", "1"], [("a", "0", "1"), ("a*", "1", "0")])
    with pytest.raises(QuiverError):
        double(Q)


def test_invalid_quivers():
    """Test structural validation"""
    with pytest.raises(QuiverError):
        Quiver.build(["0", "0"])
    with pytest.raises(QuiverError):
        Quiver.build(["0"], [("a", "0", "1")])
    with pytest.raises(QuiverError):
        Quiver.build(["0"], [("a", "0", "0"), ("a", "0", "0")])
    with pytest.raises(QuiverError):
        Quiver.build(["0"], [("a.b", "0", "0")])


def test_is_symmetric(jordan):
    """Test symmetry of arrow counts"""
    assert is_symmetric(jordan)
    assert not is_symmetric(Quiver.build(["0", "1"], [("a", "0", "1")]))


def test_dimension_helpers(aff_a1):
    """Test support, indivisibility and connectivity"""
    assert support(aff_a1, [2, 0]) == ["0"]
    assert is_indivisible([1, 1])
    assert not is_indivisible([2, 2])
    assert is_connected(aff_a1)
    assert not is_connected(Quiver.build(["0", "1"]))
    sub = full_subquiver(aff_a1, ["0"])
    assert sub.vertices == ("0",) and not sub.arrows
    reversed_a = reverse_arrow(aff_a1, "a")
    assert reversed_a.arrow("a").source == "1"
    assert arrow_counts(reversed_a)[1, 0] == 2


def test_connectivity(rng):
    """Test connectivity of the underlying multigraph, loops and orientation ignored"""
    assert is_connected(Quiver.build(["0", "1", "2"], [("a", "0", "1"), ("b", "2", "1")]))
    assert not is_connected(Quiver.build(["0", "1"], [("l", "0", "0"), ("m", "1", "1")]))
    assert is_connected(Quiver.build(["0"]))
    looped = Quiver.build(["0", "1"], [("a", "0", "1"), ("b", "1", "0"), ("l", "0", "0")])
    assert underlying_graph(looped).number_of_edges() == 3
    for _ in range(50):
        Q = random_quiver(rng, max_vertices=4, max_arrows=4)
        star_arrows = [(f"s{v}", Q.vertices[0], v) for v in Q.vertices[1:]]
        spanned = Quiver.build(Q.vertices, [(a.id, a.source, a.target) for a in Q.arrows] + star_arrows)
        assert is_connected(spanned)
        if len(Q.arrows) < Q.num_vertices - 1:
            assert not is_connected(Q)
        for a in Q.arrows:
            assert is_connected(reverse_arrow(Q, a.id)) == is_connected(Q)


def test_euler_form_properties(rng):
    """Test bilinearity and the tripled-quiver identities on random inputs"""
    for _ in range(60):
        Q = random_quiver(rng)
        d, d2, e = random_dim(rng, Q), random_dim(rng, Q), random_dim(rng, Q)
        dsum = [x + y for x, y in zip(d, d2)]
        assert euler_form(Q, dsum, e) == euler_form(Q, d, e) + euler_form(Q, d2, e)

        T = triple(Q)
        assert is_symmetric(T)
        assert euler_form(T, d, e) == euler_form(T, e, d)
        diagonal = sum(x * y for x, y in zip(d, e))
        assert euler_form(T, d, e) == euler_form(Q, d, e) + euler_form(Q, e, d) - 2 * diagonal

        assert len(double(Q).arrows) == 2 * len(Q.arrows)
        assert len(T.arrows) == 2 * len(Q.arrows) + Q.num_vertices
        f = random_dim(rng, Q, top=2)
        assert len(frame(Q, f).arrows) == len(Q.arrows) + sum(f)


def test_quiver_file_roundtrip(aff_a1):
    """Test the JSON quiver format"""
    document = QuiverFile.model_validate_json(
        '{"vertices": ["0", "1"], "arrows": [{"id": "a", "from": "0", "to": "1"}, {"id": "b", "from": "1", "to": "0"}]}'
    )
    assert document.to_quiver() == aff_a1
    assert QuiverFile.from_quiver(aff_a1).dump() == aff_a1.canonical_dict()

    with pytest.raises(ValidationError):
        QuiverFile.model_validate_json('{"vertices": ["0"], "arrows": [{"id": "a", "to": "0"}]}')


def test_quiver_hash_is_stable(aff_a1):
    """Test that the hash depends only on the canonical serialization"""
    rebuilt = Quiver.build(["0", "1"], [("a", "0", "1"), ("b", "1", "0")])
    assert quiver_hash(rebuilt) == quiver_hash(aff_a1)
    assert len(quiver_hash(aff_a1)) == 64
    assert quiver_hash(reverse_arrow(aff_a1, "a")) != quiver_hash(aff_a1)
