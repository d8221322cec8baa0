from itertools import product

import pytest

from skewring.semigroups import (
    StructureError,
    verify_inverse_semigroup,
    semigroup_from_json,
    min_semilattice,
    cyclic_group,
    snake_semigroup,
    symmetric_inverse_monoid,
    subsemigroup_closure,
)


def test_min_semilattice_accepted():
    sg = min_semilattice(2)
    assert sg.idempotents == (0, 1)
    assert sg.star == (0, 1)


def test_snake_accepted_and_structure():
    sg = snake_semigroup(3)
    z, inf = sg.index["z"], sg.index["inf"]
    assert sg.mul(z, z) == inf
    assert sg.mul(inf, inf) == inf
    assert sg.mul(z, inf) == z
    assert sg.mul(sg.index["2"], z) == sg.index["2"]
    assert sg.star[z] == z
    assert set(sg.idempotents) == {sg.index["1"], sg.index["2"], sg.index["3"], inf}


def test_left_zero_rejected_nonunique_inverse():
    with pytest.raises(StructureError) as exc:
        verify_inverse_semigroup(["a", "b"], [[0, 0], [1, 1]])
    assert exc.value.axiom == "inverse-not-unique"
    assert exc.value.witness == {"element": "a", "candidates": ["a", "b"]}


def test_nonassociative_rejected_with_witness():
    # x*y = x except 1*1 = 0: (1*1)*1 = 0*1 = 0 but 1*(1*1) = 1*0 = 1
    with pytest.raises(StructureError) as exc:
        verify_inverse_semigroup(["0", "1"], [[0, 0], [1, 0]])
    assert exc.value.axiom == "associativity"


def test_size_cap_overridable():
    sg, _ = symmetric_inverse_monoid(2)
    with pytest.raises(StructureError):
        verify_inverse_semigroup(sg.labels, [list(r) for r in sg.table], max_size=5)
    verify_inverse_semigroup(sg.labels, [list(r) for r in sg.table], max_size=7)


def test_unit_dominates_idempotents():
    sg = min_semilattice(3)
    assert sg.unit == 2
    for e in sg.idempotents:
        assert sg.leq(e, sg.unit)


def test_order_on_unital_semigroup():
    sg, _ = symmetric_inverse_monoid(2)
    unit = sg.unit
    for e in sg.idempotents:
        assert sg.leq(e, unit)


def test_min_semilattice_order_is_numeric():
    sg = min_semilattice(4)
    for i, j in product(range(4), repeat=2):
        assert sg.leq(i, j) == (i <= j)


def test_snake_order():
    sg = snake_semigroup(4)
    z, inf = sg.index["z"], sg.index["inf"]
    for n in range(1, 5):
        for m in range(1, 5):
            assert sg.leq(sg.index[str(n)], sg.index[str(m)]) == (n <= m)
        assert sg.leq(sg.index[str(n)], z)
        assert sg.leq(sg.index[str(n)], inf)
    assert not sg.leq(z, inf) and not sg.leq(inf, z)
    assert sg.natural_partial_order()["z"] == ["z"]


def test_symmetric_inverse_monoid_sizes():
    assert symmetric_inverse_monoid(1)[0].size == 2
    assert symmetric_inverse_monoid(2)[0].size == 7
    assert symmetric_inverse_monoid(3)[0].size == 34


def test_subsemigroup_closure_of_partial_shift():
    sim, pmaps = symmetric_inverse_monoid(2)
    shift = next(i for i, pm in enumerate(pmaps) if pm == {0: 1})
    sub, members = subsemigroup_closure(sim, [shift])
    assert sub.size == 5  # shift, its inverse, two partial identities, empty


@pytest.mark.parametrize(
    "sg",
    [min_semilattice(3), cyclic_group(3), snake_semigroup(3), symmetric_inverse_monoid(2)[0]],
    ids=["semilattice", "group", "snake", "sim2"],
)
def test_order_and_involution_invariants(sg):
    n = sg.size
    for s in range(n):
        assert sg.star[sg.star[s]] == s
    for s, t in product(range(n), repeat=2):
        assert sg.star[sg.mul(s, t)] == sg.mul(sg.star[t], sg.star[s])
        if sg.leq(s, t):
            assert sg.leq(sg.star[s], sg.star[t])
    for s, t, u, v in product(range(n), repeat=4):
        if sg.leq(s, t) and sg.leq(u, v):
            assert sg.leq(sg.mul(s, u), sg.mul(t, v))
    for e, f in product(sg.idempotents, repeat=2):
        meet = sg.mul(e, f)
        assert sg.is_idempotent(meet)
        assert sg.leq(meet, e) and sg.leq(meet, f)
        for g in sg.idempotents:
            if sg.leq(g, e) and sg.leq(g, f):
                assert sg.leq(g, meet)


def test_json_round_trip():
    sg = snake_semigroup(2)
    again = semigroup_from_json(sg.to_json())
    assert again.labels == sg.labels
    assert again.table == sg.table


def test_json_requires_fields():
    with pytest.raises(StructureError):
        semigroup_from_json({"elements": []})


def test_empty_rejected():
    with pytest.raises(StructureError):
        verify_inverse_semigroup([], [])
