"""Fields of point actions and their induced semipreaffine spaces."""

import pytest

from finact.affine import (
    regular_space,
    relabeled_left_multiplication,
    translation_space,
)
from finact.carriers import finite_set, set_carrier_cap
from finact.fields import (
    FieldError,
    automorphism_field,
    constant_field,
    induced_action,
    left_multiplication_field,
    verify_field,
)
from finact.groups import (
    as_vector_group,
    catalog_group,
    cyclic,
    elementary_abelian,
    validate_group,
)


def twist_field():
    # point 1 adds vectors through negation, points 0 and 2 directly
    return automorphism_field(
        elementary_abelian(3, 1), [(0, 1, 2), (0, 2, 1), (0, 1, 2)]
    )


def test_twist_field_basics():
    f = twist_field()
    assert f.pointwise_kind == "monoidal"
    assert not f.is_constant
    assert f.order == 3
    assert len(f.common_image) == 3
    assert f.apply_at("1", "1", "0") == "2"
    assert f.division_at("1", "0", "2") == "1"
    assert f.pullback("1", "0", "1") == "2"
    assert f.translation_at("1", "1").images == (2, 0, 1)
    assert f.point_action("0").maps[1].images == (1, 2, 0)


def test_pullback_reproduces_translations():
    # pullback(v, q, p) is defined by acting identically: check extensionally
    f = twist_field()
    labels = f.carrier.elements
    for v in f.vectors.base.carrier.elements:
        for q in labels:
            for p in labels:
                w = f.pullback(v, q, p)
                assert f.translation_at(p, w).images == f.translation_at(q, v).images


def test_vec_image_tables_inverse():
    f = twist_field()
    for p in range(f.order):
        for v in range(f.vectors.order):
            assert f.image_to_vec[p][f.vec_to_image[p][v]] == v


def test_induced_action_of_twist_is_strictly_semipreaffine():
    ind = induced_action(twist_field())
    assert ind.kind == "strictly_semipreaffine"
    assert not ind.closed
    assert [m.images for m in ind.action.maps] == [(0, 1, 2), (1, 0, 0), (2, 2, 1)]
    assert ind.division_table == ((0, 1, 2), (1, 0, 2), (1, 2, 0))
    assert ind.classification.flags["regular"]
    assert ind.classification.flags["unital_group"]


def test_constant_field_of_affine_space():
    field = constant_field(regular_space(as_vector_group(catalog_group("Z2^2"))))
    assert field.is_constant
    assert field.pointwise_kind == "monoidal"
    assert induced_action(field).kind == "affine"


def test_constant_field_of_strict_space():
    v = as_vector_group(catalog_group("Z2^2"))
    space = translation_space(v, cyclic(4), (0, 1, 2, 3))
    field = constant_field(space)
    assert field.is_constant
    assert field.pointwise_kind == "premonoidal"
    # translations stay closed pointwise, so the induced space keeps the
    # middle kind
    assert induced_action(field).kind == "preaffine"


def test_left_multiplication_field():
    v = as_vector_group(catalog_group("Z2^2"))
    field = left_multiplication_field(v, cyclic(4), [(0, 1, 2, 3)] * 4)
    assert field.pointwise_kind == "premonoidal"
    assert field.is_constant
    assert induced_action(field).kind == "preaffine"
    with pytest.raises(FieldError) as exc:
        left_multiplication_field(v, cyclic(4), [(0, 1, 2, 3)] * 3)
    assert exc.value.failed == "shape"


def test_verify_field_kind_and_shape_errors():
    v = as_vector_group(catalog_group("Z2^2"))
    action = relabeled_left_multiplication(v.base, v.base, (0, 1, 2, 3))
    with pytest.raises(FieldError) as exc:
        verify_field(v, v.base.carrier, [action] * 4, kind="coherent")
    assert exc.value.failed == "kind"
    with pytest.raises(FieldError) as exc:
        verify_field(v, v.base.carrier, [action] * 3)
    assert exc.value.failed == "shape"
    foreign = relabeled_left_multiplication(v.base, cyclic(4), (0, 1, 2, 3))
    with pytest.raises(FieldError) as exc:
        verify_field(v, v.base.carrier, [action, foreign, action, action])
    assert exc.value.failed == "shape"
    assert exc.value.point == "01"


def test_verify_field_wraps_point_failures():
    v = as_vector_group(catalog_group("Z2^2"))
    good = relabeled_left_multiplication(v.base, v.base, (0, 1, 2, 3))
    bad = relabeled_left_multiplication(v.base, v.base, (1, 0, 2, 3))
    with pytest.raises(FieldError) as exc:
        verify_field(v, v.base.carrier, [good, bad, good, good])
    assert exc.value.failed == "unitality"
    assert exc.value.point == "01"
    assert exc.value.witness == ("00",)


def test_verify_field_common_image():
    v = as_vector_group(catalog_group("Z2^2"))
    # a cyclic group structure on the same four labels has different
    # left multiplications
    z4ish = validate_group(
        "K",
        ["00", "01", "10", "11"],
        [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]],
    )
    acts = [relabeled_left_multiplication(v.base, v.base, (0, 1, 2, 3))] * 4
    acts = [acts[0], relabeled_left_multiplication(v.base, z4ish, (0, 1, 2, 3)), acts[2], acts[3]]
    with pytest.raises(FieldError) as exc:
        verify_field(v, v.base.carrier, acts)
    assert exc.value.failed == "common_image"
    assert exc.value.point == "01"


def test_monoidal_kind_rejects_strict_points():
    v5 = elementary_abelian(5, 1)
    ident = (0, 1, 2, 3, 4)
    with pytest.raises(FieldError) as exc:
        automorphism_field(v5, [ident, ident, ident, ident, (0, 1, 2, 4, 3)])
    assert exc.value.failed == "monoidality"
    assert exc.value.point == "4"


def test_automorphism_field_shape():
    with pytest.raises(FieldError) as exc:
        automorphism_field(elementary_abelian(3, 1), [(0, 1, 2)] * 2)
    assert exc.value.failed == "shape"


def test_field_cell_cap():
    old = set_carrier_cap(1600)
    try:
        big = finite_set("B", [f"x{i}" for i in range(1500)])
        with pytest.raises(FieldError) as exc:
            verify_field(as_vector_group(cyclic(2)), big, [None] * 1500)
        assert exc.value.failed == "size"
    finally:
        set_carrier_cap(old)
