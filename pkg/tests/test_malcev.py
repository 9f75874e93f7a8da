"""Ternary Malcev structures: identities, translations, group recovery."""

import pytest

from finact.groups import catalog_group, cyclic, is_isomorphic, opposite_group, as_vector_group
from finact.affine import translation_space
from finact.malcev import (
    BudgetExceeded,
    MalcevError,
    MalcevStructure,
    NonExpressibleError,
    as_translation,
    check_identities,
    count_malcev,
    default_carrier,
    enumerate_malcev,
    from_group,
    from_space,
    iteration_closure,
    phi_is_isomorphism,
    pointed_combination,
    pointed_inverse,
    pointed_sum,
    psi_is_isomorphism,
    recovered_group,
    sum_translations,
    table_from_candidate,
    translation,
    translations,
)


def q_heap() -> MalcevStructure:
    return from_group(catalog_group("Q"))


def test_structure_validation():
    c = default_carrier(2)
    with pytest.raises(MalcevError):
        MalcevStructure(c, (0,) * 7)
    with pytest.raises(MalcevError):
        MalcevStructure(c, (0,) * 7 + (5,))


def test_entry_and_value():
    s = q_heap()
    # [i, 1, j] = i * j = k
    assert s.value("i", "1", "j") == "k"
    assert s.entry(1, 0, 2) == 3


def test_quaternion_heap_identities():
    rep = check_identities(q_heap())
    assert rep.flags == {
        "a1": True,
        "a2": True,
        "a3": True,
        "a4": True,
        "k3": True,
        "k4": True,
        "commutative": False,
        "associative": True,
    }
    assert rep.witnesses == {"commutative": ("1", "i", "j")}
    assert rep.malcev


def test_abelian_heap_fully_commutative():
    rep = check_identities(from_group(cyclic(4)))
    assert all(rep.flags.values())
    assert rep.witnesses == {}


def test_non_heap_witnesses_frozen():
    s = MalcevStructure(default_carrier(2), table_from_candidate(2, 0))
    rep = check_identities(s)
    assert rep.flags == {
        "a1": True,
        "a2": True,
        "a3": False,
        "a4": False,
        "k3": False,
        "k4": False,
        "commutative": True,
        "associative": False,
    }
    assert rep.witnesses == {
        "a3": ("0", "1", "0", "1"),
        "a4": ("0", "1", "0", "1"),
        "k3": ("0", "1", "1"),
        "k4": ("0", "1", "1"),
        "associative": ("0", "1", "0", "0", "1"),
    }


def test_translations_of_group_heap_are_right_multiplications():
    q = catalog_group("Q")
    s = q_heap()
    ts = translations(s)
    assert len(ts) == 8
    assert [t.rep for t in ts] == [("1", b) for b in q.carrier.elements]
    # [-, i, j] multiplies on the right by inverse(i) * j = -k
    got = translation(s, "i", "j")
    assert got.func.images == tuple(q.table[x][q.index("-k")] for x in range(8))
    assert as_translation(s, got.func).rep == ("1", "-k")


def test_sum_translations_composes_left_to_right():
    s = q_heap()
    ti, tj = translation(s, "1", "i"), translation(s, "1", "j")
    combined = sum_translations(s, ti, tj)
    assert combined.images == translation(s, "1", "k").func.images


def test_iteration_closure_recovers_group_table():
    """Closing the heap translations under composition hands back the source
    group, table and labels included."""
    q = catalog_group("Q")
    clo = iteration_closure(q_heap())
    assert clo.size == 8
    assert clo.contains_identity
    assert clo.is_group
    assert clo.fixed_point_law
    assert clo.group.name == "closure(Q)"
    assert clo.group.carrier.elements == q.carrier.elements
    assert clo.group.table == q.table


def test_pointed_sum_and_inverse():
    s = q_heap()
    ti, tj = translation(s, "1", "i"), translation(s, "1", "j")
    total = pointed_sum(s, "1", ti, tj)
    assert total.rep == ("1", "k")
    inv = pointed_inverse(s, "1", ti)
    assert inv.rep == ("1", "-i")
    assert pointed_combination(s, "1", "i", "j") == "k"


def test_recovered_group_at_each_point():
    q = catalog_group("Q")
    s = q_heap()
    at_identity = recovered_group(s, "1")
    assert at_identity.table == q.table
    assert at_identity.name == "Q_at_1"
    # other base points recover an isomorphic copy on a different table
    at_i = recovered_group(s, "i")
    assert at_i.table != q.table
    assert is_isomorphic(at_i, q).isomorphic


def test_phi_and_psi_isomorphisms():
    s = q_heap()
    assert phi_is_isomorphism(s, "1")
    assert phi_is_isomorphism(s, "i")
    assert psi_is_isomorphism(s, "1", "i")


def test_rewrite_failure_on_degenerate_structure():
    s = MalcevStructure(default_carrier(3), table_from_candidate(3, 0))
    t = translation(s, "1", "2")
    assert t.func.images == (0, 2, 0)
    with pytest.raises(NonExpressibleError):
        pointed_sum(s, "0", t, t)


def test_from_space_regular_matches_group_heap():
    v = as_vector_group(catalog_group("Z2^2"))
    space = translation_space(v)
    assert from_space(space).table == from_group(catalog_group("Z2^2")).table


def test_from_space_left_multiplications_give_opposite_heap():
    # left multiplication translations divide on the other side, so the
    # combination lands in the heap of the opposite group
    q = catalog_group("Q")
    space = translation_space(as_vector_group(catalog_group("Z2^3")), q)
    assert from_space(space).table == from_group(opposite_group(q)).table


def test_count_malcev_frozen():
    assert count_malcev(1) == 1
    assert count_malcev(2) == 4
    assert count_malcev(3) == 531441
    assert count_malcev(3, ("a1", "a2", "associative")) == 1
    assert count_malcev(3, ("a1", "a2", "commutative")) == 19683
    assert count_malcev(3, ("a1", "a2", "k3")) == 8
    with pytest.raises(MalcevError):
        count_malcev(4)
    with pytest.raises(MalcevError):
        count_malcev(3, ("a1",))
    with pytest.raises(MalcevError):
        count_malcev(3, ("a1", "a2", "flat"))


def test_enumerate_order_two():
    structs = list(enumerate_malcev(2))
    assert len(structs) == 4
    assert [s.table for s in structs] == [table_from_candidate(2, c) for c in range(4)]
    heaps = list(enumerate_malcev(2, ("a1", "a2", "associative")))
    assert len(heaps) == 1
    assert heaps[0].table == table_from_candidate(2, 2)
    assert heaps[0].table == from_group(cyclic(2)).table


def test_enumerate_order_three_unique_full_structure():
    full = list(enumerate_malcev(3, ("a1", "a2", "a3", "a4", "k3", "k4", "commutative", "associative")))
    assert len(full) == 1
    assert full[0].table == from_group(cyclic(3)).table


def test_enumerate_order_four_heaps():
    # three relabelings of the cyclic heap plus the elementary abelian one
    heaps = list(enumerate_malcev(4, ("a1", "a2", "associative")))
    assert len(heaps) == 4
    tables = {h.table for h in heaps}
    assert from_group(cyclic(4)).table in tables
    assert from_group(catalog_group("Z2^2")).table in tables
    for h in heaps:
        assert check_identities(h).flags["a3"]
        assert check_identities(h).flags["a4"]


def test_enumerate_budget_and_range():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_malcev(4, budget=500))
    assert exc.value.visited == 500
    assert exc.value.budget == 500
    with pytest.raises(MalcevError):
        list(enumerate_malcev(5))


def test_table_from_candidate_range():
    with pytest.raises(MalcevError):
        table_from_candidate(2, 4)
    assert table_from_candidate(2, 2) == (0, 1, 1, 0, 1, 0, 0, 1)
