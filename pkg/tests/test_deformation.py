"""Deformation measures: torsion, curvature, drift, transport, flatness."""

import pytest

from finact.affine import regular_space, translation_space
from finact.carriers import compose
from finact.deformation import (
    BoundVector,
    DeformationError,
    MEASURES,
    argument_count,
    curvature1,
    evaluate,
    first_nonzero,
    flatness_witness,
    is_flat,
    is_torsion_free,
    measure_level,
    scan,
    space_curvature,
    torsion0,
    torsion1,
    torsion_free_witness,
    transport,
    transport_by_vector,
    transport_field,
)
from finact.fields import automorphism_field, induced_action, left_multiplication_field
from finact.groups import as_vector_group, catalog_group, cyclic, elementary_abelian


def twist_field():
    return automorphism_field(
        elementary_abelian(3, 1), [(0, 1, 2), (0, 2, 1), (0, 1, 2)]
    )


def q_space():
    return translation_space(as_vector_group(catalog_group("Z2^3")), catalog_group("Q"))


def skew_field():
    # nonconstant premonoidal field with nonzero curvature of both ranks
    v = as_vector_group(catalog_group("Z2^2"))
    return left_multiplication_field(
        v, cyclic(4), [(0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 3, 2)]
    )


def test_measures_table_frozen():
    assert MEASURES == {
        "torsion0": ("space", ("point", "vector", "vector")),
        "torsion1": ("space", ("point", "vector", "vector")),
        "torsion0_field": ("field", ("point", "vector", "vector")),
        "torsion1_field": ("field", ("point", "vector", "vector")),
        "curvature0": ("field", ("point", "vector", "vector", "vector")),
        "curvature1": ("field", ("point", "vector", "vector", "vector")),
        "drift": ("field", ("point", "point", "vector", "vector")),
    }
    assert measure_level("torsion1") == "space"
    assert measure_level("drift") == "field"
    with pytest.raises(DeformationError):
        measure_level("torsion5")


def test_argument_counts():
    assert argument_count(q_space(), "torsion1") == 512
    f = twist_field()
    assert argument_count(f, "torsion0_field") == 27
    assert argument_count(f, "curvature0") == 81
    assert argument_count(f, "drift") == 81


def test_torsion1_is_the_commutator():
    """On a left multiplication space the order swap measures exactly the
    group commutator of the assigned elements, independent of the probe."""
    q = catalog_group("Q")
    space = q_space()
    for (x, u, v), value in scan(space, "torsion1"):
        ui, vi = space.vectors.index(u), space.vectors.index(v)
        com = q.mul(q.mul(q.mul(ui, vi), q.inv(ui)), q.inv(vi))
        assert space.vectors.index(value.vector) == com
        assert value.base is None


def test_torsion1_q_space_counts():
    space = q_space()
    rows = list(scan(space, "torsion1"))
    assert len(rows) == 512
    assert sum(1 for _, v in rows if v.zero) == 320
    args, value = first_nonzero(space, "torsion1")
    assert args == ("1", "001", "010")
    assert value.vector == "100"
    assert value.base is None
    assert not value.zero


def test_torsion1_skew_at_translation_level():
    space = q_space()
    for x in ("1", "j", "-k"):
        for u in ("001", "101"):
            for v in ("010", "111"):
                t_uv = torsion1(space, x, u, v).translation
                t_vu = torsion1(space, x, v, u).translation
                assert compose(t_uv, t_vu).is_identity


def test_torsion0_space_zero_when_closed_group():
    space = regular_space(as_vector_group(catalog_group("Z2^2")))
    assert all(v.zero for _, v in scan(space, "torsion0"))
    assert torsion0(space, "01", "10", "11").vector == "00"


def test_twist_field_scan_counts_frozen():
    f = twist_field()
    expect = {
        "torsion0_field": (27, 8, ("0", "1", "1"), "2", "0"),
        "torsion1_field": (27, 6, ("0", "1", "2"), "1", "2"),
        "drift": (81, 24, ("0", "0", "1", "1"), "1", "0"),
    }
    for measure, (total, nonzero, first_args, vec, base) in expect.items():
        rows = list(scan(f, measure))
        assert len(rows) == total
        assert sum(1 for _, v in rows if not v.zero) == nonzero
        args, value = first_nonzero(f, measure)
        assert args == first_args
        assert value.vector == vec
        assert value.base == base


def test_multiaffine_curvature_vanishes():
    f = twist_field()
    for measure in ("curvature0", "curvature1"):
        rows = list(scan(f, measure))
        assert len(rows) == 81
        assert all(v.zero for _, v in rows)
    assert first_nonzero(f, "curvature0") is None


def test_skew_field_curvature_frozen():
    f = skew_field()
    rows0 = list(scan(f, "curvature0"))
    assert len(rows0) == 256
    assert sum(1 for _, v in rows0 if not v.zero) == 64
    rows1 = list(scan(f, "curvature1"))
    assert sum(1 for _, v in rows1 if not v.zero) == 48
    args, value = first_nonzero(f, "curvature1")
    assert args == ("0", "00", "10", "11")
    assert value.vector == "10"
    assert value.base == "1"


def test_constant_premonoidal_field_has_curvature0_but_no_curvature1():
    v = as_vector_group(catalog_group("Z2^2"))
    f = left_multiplication_field(v, cyclic(4), [(0, 1, 2, 3)] * 4)
    rows0 = list(scan(f, "curvature0"))
    assert sum(1 for _, v_ in rows0 if not v_.zero) == 64
    args, value = first_nonzero(f, "curvature0")
    assert args == ("0", "00", "01", "01")
    assert value.vector == "10"
    assert value.base == "2"
    # the swapped difference cancels when every point acts the same way
    assert first_nonzero(f, "curvature1") is None
    assert first_nonzero(f, "torsion1_field") is None


def test_curvature1_swap_gives_inverse_translation():
    f = skew_field()
    pts = f.carrier.elements
    vecs = f.vectors.base.carrier.elements
    for x in pts[:2]:
        for w in vecs:
            for u in vecs[:2]:
                for v in vecs[2:]:
                    t_uv = curvature1(f, x, w, u, v).translation
                    t_vu = curvature1(f, x, w, v, u).translation
                    assert compose(t_uv, t_vu).is_identity


def test_curvature1_base_override():
    f = twist_field()
    value = curvature1(f, "0", "0", "1", "2", base="1")
    assert value.base == "1"
    assert value.zero
    default = curvature1(f, "0", "0", "1", "2")
    assert default.base is not None


def test_drift_zero_laws():
    f = twist_field()
    zero = f.vectors.label(f.vectors.zero)
    for x in f.carrier.elements:
        for p in f.carrier.elements:
            for v in f.vectors.base.carrier.elements:
                assert evaluate(f, "drift", (x, p, zero, v)).zero
                assert evaluate(f, "drift", (x, p, v, zero)).zero


def test_transport_in_space():
    space = q_space()
    moved = transport(space, BoundVector("1", "i"), BoundVector("1", "j"))
    assert moved == BoundVector("j", "-k")
    with pytest.raises(DeformationError):
        transport(space, BoundVector("1", "i"), BoundVector("j", "k"))


def test_transport_in_field():
    f = twist_field()
    moved = transport_field(f, BoundVector("0", "1"), BoundVector("0", "1"))
    assert moved == BoundVector("1", "0")
    assert transport_by_vector(f, BoundVector("0", "1"), "1") == moved
    with pytest.raises(DeformationError):
        transport_field(f, BoundVector("0", "1"), BoundVector("1", "2"))


def test_flatness_and_torsion_witnesses():
    qs = q_space()
    assert is_flat(qs)
    assert flatness_witness(qs) is None
    assert torsion_free_witness(qs) == ("1", "001", "010")
    assert not is_torsion_free(qs)
    z8 = translation_space(as_vector_group(catalog_group("Z2^3")), catalog_group("Z8"))
    assert is_flat(z8)
    assert is_torsion_free(z8)
    reg = regular_space(as_vector_group(catalog_group("Z2^2")))
    assert is_flat(reg)
    assert is_torsion_free(reg)
    assert space_curvature(qs, "i", "1", "j", "-k").zero


def test_induced_space_measures():
    # the induced space of the twist field is neither flat nor torsion free
    ind = induced_action(twist_field())
    assert flatness_witness(ind) == ("0", "1", "2", "0")
    assert torsion_free_witness(ind) == ("0", "1", "2")


def test_scan_lexicographic_and_evaluate_arity():
    f = twist_field()
    args = [a for a, _ in scan(f, "torsion0_field")]
    assert args[:4] == [("0", "0", "0"), ("0", "0", "1"), ("0", "0", "2"), ("0", "1", "0")]
    with pytest.raises(DeformationError):
        evaluate(f, "drift", ("0", "0", "1"))
    with pytest.raises(DeformationError):
        evaluate(f, "nonsense", ("0", "0", "1"))
