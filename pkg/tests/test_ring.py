import random
from itertools import product

import pytest

from skewring.scalars import parse_carrier, CarrierError
from skewring.spaces import Space, LcFun
from skewring.semigroups import cyclic_group
from skewring.actions import (
    snake_action,
    induce_algebra_action,
    is_minimal,
    is_topologically_principal,
    verify_partial_action,
)
from skewring.ring import (
    SkewRing,
    SkewElement,
    tau,
    diagonal_embed,
    is_S_simple,
    is_diagonal_max_commutative,
    centralizer_of_diagonal,
    ideal_generated_by,
    exhaustive_ideal_scan,
    is_simple,
    lmul_basis,
    rmul_basis,
)
from conftest import z2_translation, z2_identity, semilattice_trivial


def make_ring(action, carrier_name="gf:2"):
    alg = induce_algebra_action(action, parse_carrier(carrier_name))
    return alg, SkewRing(alg)


@pytest.fixture
def snake4_gf2():
    return make_ring(snake_action(4))


@pytest.fixture
def z2_gf3():
    return make_ring(z2_translation(), "gf:3")


def indicator_term(alg, s, points, value=None):
    return SkewElement(
        alg, [(s, LcFun.indicator(alg.space, alg.carrier, frozenset(points), value))]
    )


def tail_interval(space, n):
    """The clopen set of naturals from n on, together with infinity."""
    pts = set(range(n, space.window + 1)) | {space.tail_point, space.inf_point}
    return frozenset(pts)


# --- multiplication -----------------------------------------------------------


def test_local_unit_absorbs(snake4_gf2):
    alg, ring = snake4_gf2
    e = alg.semigroup.index["2"]
    unit = SkewElement(alg, [(e, alg.local_unit(e))])
    a = indicator_term(alg, e, {1})
    assert ring.multiply(unit, a).terms == a.terms


def test_snake_product_of_z_slices(snake4_gf2):
    alg, ring = snake4_gf2
    sg, sp = alg.semigroup, alg.space
    z, inf = sg.index["z"], sg.index["inf"]
    x = indicator_term(alg, z, tail_interval(sp, 2))
    y = indicator_term(alg, z, tail_interval(sp, 3))
    expected = indicator_term(alg, inf, tail_interval(sp, 3))
    assert ring.multiply(x, y).terms == expected.terms


def test_swap_slice_squares_to_zero():
    alg, ring = make_ring(z2_translation())
    x = indicator_term(alg, 1, {0})
    assert ring.multiply(x, x).is_zero()


def test_raw_multiplication_is_associative(snake4_gf2):
    _, ring = snake4_gf2
    mono = ring.mono

    def m(i, j):
        return mono[i][j] if i >= 0 and j >= 0 else -1

    for i, j, k in product(range(ring.dim), repeat=3):
        assert m(m(i, j), k) == m(i, m(j, k))


def test_coefficients_must_respect_domains(snake4_gf2):
    alg, _ = snake4_gf2
    with pytest.raises(ValueError):
        indicator_term(alg, alg.semigroup.index["1"], {2})


# --- the two zero engines -----------------------------------------------------


def test_identified_pair_is_null(snake4_gf2):
    alg, ring = snake4_gf2
    sg = alg.semigroup
    r, s = sg.index["2"], sg.index["z"]
    assert sg.leq(r, s)
    a = LcFun.indicator(alg.space, alg.carrier, frozenset({1, 2}))
    x = SkewElement(alg, [(r, a)]) - SkewElement(alg, [(s, a)])
    assert ring.in_n_span(x)
    assert ring.germ_is_zero(x)


def test_single_slice_is_never_null(snake4_gf2):
    alg, ring = snake4_gf2
    for k in range(ring.dim):
        vec = [alg.carrier.zero] * ring.dim
        vec[k] = alg.carrier.one
        assert not ring.in_n_span(list(vec))
        assert not ring.germ_is_zero(list(vec))


def test_germ_form_of_snake_generator(snake4_gf2):
    alg, ring = snake4_gf2
    sg, sp = alg.semigroup, alg.space
    z, inf = sg.index["z"], sg.index["inf"]
    K = tail_interval(sp, 2)
    x = indicator_term(alg, z, K) - indicator_term(alg, inf, K)
    form = ring.germ_normal_form(x)
    # survives only at infinity, where the two heads have distinct germs
    assert set(form) == {(sp.inf_point, z), (sp.inf_point, inf)}
    assert not ring.germ_is_zero(x) and not ring.in_n_span(x)
    json_form = ring.germ_form_json(x)
    assert all(entry["point"] == "infinity" for entry in json_form)


def test_engine_agreement_on_random_vectors(snake4_gf2):
    alg, ring = snake4_gf2
    rng = random.Random(11)
    for _ in range(400):
        vec = [rng.randrange(2) for _ in range(ring.dim)]
        if rng.random() < 0.5:
            acc = [0] * ring.dim
            for row in ring.nspace.rows:
                if rng.random() < 0.5:
                    acc = [(a + b) % 2 for a, b in zip(acc, row)]
            vec = acc
        assert ring.in_n_span(list(vec)) == ring.germ_is_zero(list(vec))


def test_quotient_is_associative_and_distributive(z2_gf3):
    _, ring = z2_gf3
    units = [
        tuple(ring.carrier.one if i == a else ring.carrier.zero for i in range(ring.qdim))
        for a in range(ring.qdim)
    ]
    for a, b, c in product(units, repeat=3):
        assert ring.qmul(ring.qmul(a, b), c) == ring.qmul(a, ring.qmul(b, c))
        lhs = ring.qmul(a, ring.qadd(b, c))
        assert lhs == ring.qadd(ring.qmul(a, b), ring.qmul(a, c))


def test_basis_products_match_helpers(z2_gf3):
    _, ring = z2_gf3
    rng = random.Random(3)
    for _ in range(30):
        v = tuple(rng.randrange(3) for _ in range(ring.qdim))
        for a in range(ring.qdim):
            e = tuple(1 if i == a else 0 for i in range(ring.qdim))
            assert lmul_basis(ring, a, v) == ring.qmul(e, v)
            assert rmul_basis(ring, a, v) == ring.qmul(v, e)


# --- coefficient-sum map --------------------------------------------------------


def test_tau_of_single_term(snake4_gf2):
    alg, _ = snake4_gf2
    a = LcFun.indicator(alg.space, alg.carrier, frozenset({1, 3}))
    x = SkewElement(alg, [(alg.semigroup.index["3"], a)])
    assert tau(x) == a


def test_tau_kills_identified_pairs(snake4_gf2):
    alg, ring = snake4_gf2
    for row in ring.nspace.rows:
        assert tau(ring.vec_to_element(list(row))).is_zero()


def test_tau_constant_on_cosets(snake4_gf2):
    alg, ring = snake4_gf2
    rng = random.Random(7)
    for _ in range(50):
        vec = [rng.randrange(2) for _ in range(ring.dim)]
        shift = list(vec)
        for row in ring.nspace.rows:
            if rng.random() < 0.5:
                shift = [(a + b) % 2 for a, b in zip(shift, row)]
        assert tau(ring.vec_to_element(vec)) == tau(ring.vec_to_element(shift))


# --- diagonal --------------------------------------------------------------------


def test_embed_idempotent_domain_indicator(snake4_gf2):
    alg, ring = snake4_gf2
    e = alg.semigroup.index["3"]
    f = alg.local_unit(e)
    assert ring.phi(f) == ring.project(SkewElement(alg, [(e, f)]))


def test_embedding_is_a_split_injection(snake4_gf2):
    alg, ring = snake4_gf2
    sp, c = alg.space, alg.carrier
    cells = [LcFun.indicator(sp, c, sp.cells_to_set([cl])) for cl in sp.coords]
    assert ring.diagonal.dim == len(sp.coords)
    for f in cells:
        assert tau(diagonal_embed(alg, f)) == f
    for f, g in product(cells, repeat=2):
        assert ring.phi(f * g) == ring.qmul(ring.phi(f), ring.phi(g))
        assert ring.phi(f + g) == ring.qadd(ring.phi(f), ring.phi(g))


def test_snake_head_slice_outside_diagonal(snake4_gf2):
    alg, ring = snake4_gf2
    z = alg.semigroup.index["z"]
    x = indicator_term(alg, z, tail_interval(alg.space, 2))
    assert not ring.in_diagonal(ring.project(x))
    assert not ring.in_diagonal_by_germs(x)


def test_diagonal_membership_engines_agree(snake4_gf2):
    alg, ring = snake4_gf2
    rng = random.Random(13)
    for _ in range(200):
        vec = [rng.randrange(2) for _ in range(ring.dim)]
        q = ring.project(list(vec))
        assert ring.in_diagonal(q) == ring.in_diagonal_by_germs(list(vec))


# --- maximal commutativity -------------------------------------------------------


def test_snake_head_slice_commutes_with_diagonal(snake4_gf2):
    alg, ring = snake4_gf2
    z = alg.semigroup.index["z"]
    xq = ring.project(indicator_term(alg, z, tail_interval(alg.space, 2)))
    for g in ring.diagonal.rows:
        g = tuple(g)
        assert ring.qmul(xq, g) == ring.qmul(g, xq)


def test_snake_diagonal_not_maximal_commutative(snake4_gf2):
    _, ring = snake4_gf2
    verdict, witness = is_diagonal_max_commutative(ring)
    assert not verdict
    # the witness commutes with the diagonal but lies outside it
    assert not ring.in_diagonal(witness)
    for g in ring.diagonal.rows:
        g = tuple(g)
        assert ring.qmul(witness, g) == ring.qmul(g, witness)


def test_translation_diagonal_maximal_commutative(z2_gf3):
    _, ring = z2_gf3
    assert is_diagonal_max_commutative(ring) == (True, None)


def test_semilattice_ring_equals_diagonal(gf2):
    alg, ring = make_ring(semilattice_trivial())
    assert ring.diagonal.dim == ring.qdim
    assert is_diagonal_max_commutative(ring) == (True, None)


def test_centralizer_contains_diagonal(snake4_gf2):
    _, ring = snake4_gf2
    cen = centralizer_of_diagonal(ring)
    from skewring.linalg import RowSpace

    space = RowSpace(ring.carrier, ring.qdim)
    for v in cen:
        space.add(list(v))
    for g in ring.diagonal.rows:
        assert space.contains(list(g))


# --- invariant ideals --------------------------------------------------------------


def test_snake_not_s_simple_with_witness(snake4_gf2):
    alg, _ = snake4_gf2
    verdict, witness = is_S_simple(alg)
    assert not verdict
    assert witness == frozenset({1})


def test_translation_s_simple(z2_gf3):
    alg, _ = z2_gf3
    assert is_S_simple(alg) == (True, None)


def test_single_point_s_simple(gf2):
    sg = cyclic_group(1)
    sp = Space.finite(1)
    act = verify_partial_action(sg, sp, [sp.universe], [{0: 0}])
    alg = induce_algebra_action(act, gf2)
    assert is_S_simple(alg) == (True, None)


def test_minimal_iff_s_simple_on_samples():
    for build in (z2_translation, z2_identity, semilattice_trivial,
                  lambda: snake_action(3)):
        act = build()
        alg = induce_algebra_action(act, parse_carrier("gf:2"))
        assert is_minimal(act)[0] == is_S_simple(alg)[0]


# --- principal ideals ----------------------------------------------------------------


def test_zero_generates_zero_ideal(z2_gf3):
    _, ring = z2_gf3
    assert ideal_generated_by(ring, ring.qzero).dim == 0


def test_snake_principal_ideal_matches_description(snake4_gf2):
    alg, ring = snake4_gf2
    sg, sp = alg.semigroup, alg.space
    z, inf = sg.index["z"], sg.index["inf"]
    n = 2
    K = tail_interval(sp, n)
    x = indicator_term(alg, z, K) - indicator_term(alg, inf, K)
    J = ideal_generated_by(ring, ring.project(x))
    from skewring.linalg import RowSpace

    described = RowSpace(ring.carrier, ring.qdim)
    for m in range(n, sp.window + 2):  # window tails plus the beyond-window tail
        Km = tail_interval(sp, m)
        gen = indicator_term(alg, z, Km) - indicator_term(alg, inf, Km)
        described.add(list(ring.project(gen)))
    assert J.equals(described)
    # the whole ideal is killed by the coefficient-sum map and misses the diagonal
    for row in J.rows:
        assert ring.tau_q(tuple(row)).is_zero()
    joined = J.copy()
    for row in ring.diagonal.rows:
        joined.add(list(row))
    assert J.dim + ring.diagonal.dim == joined.dim  # trivial intersection


def test_matrix_like_ring_every_vector_generates_everything(z2_gf3):
    _, ring = z2_gf3
    scan = exhaustive_ideal_scan(ring)
    assert scan["all_full"] and scan["all_meet_diagonal"]
    assert scan["count"] == 3 ** ring.qdim - 1


# --- simplicity -------------------------------------------------------------------


def test_translation_simple_both_modes(z2_gf3):
    _, ring = z2_gf3
    crit, crit_rep = is_simple(ring, "criterion")
    brute, brute_rep = is_simple(ring, "bruteforce")
    assert crit and brute
    assert crit_rep["s_simple"] and crit_rep["max_commutative"]
    assert ring.qdim == 4  # two-by-two matrices


def test_translation_simple_over_gf2_and_q():
    for carrier in ("gf:2", "q"):
        _, ring = make_ring(z2_translation(), carrier)
        assert is_simple(ring, "criterion")[0]


def test_snake_not_simple(snake4_gf2):
    _, ring = snake4_gf2
    crit, rep = is_simple(ring, "criterion")
    brute, brep = is_simple(ring, "bruteforce")
    assert not crit and not brute
    assert not rep["max_commutative"] and not rep["s_simple"]
    assert brep["witness"]["kind"] == "proper_ideal_generator"


def test_semilattice_not_simple():
    _, ring = make_ring(semilattice_trivial())
    crit, rep = is_simple(ring, "criterion")
    assert not crit
    assert rep["max_commutative"] and not rep["s_simple"]
    assert not is_simple(ring, "bruteforce")[0]


def test_bruteforce_needs_finite_carrier():
    from skewring.ring import CapExceeded

    _, ring = make_ring(z2_translation(), "q")
    with pytest.raises(CapExceeded):
        is_simple(ring, "bruteforce")


def test_bruteforce_respects_cap(z2_gf3):
    from skewring.ring import CapExceeded

    _, ring = z2_gf3
    with pytest.raises(CapExceeded):
        is_simple(ring, "bruteforce", cap=3)


def test_ring_needs_field():
    act = z2_translation()
    alg = induce_algebra_action(act, parse_carrier("zmod:4"))
    with pytest.raises(CarrierError):
        SkewRing(alg)


def test_simplicity_chain_on_samples():
    """simple iff minimal, principal, and every principal ideal carries an
    element with nonzero coefficient sum."""
    for build, carrier in (
        (z2_translation, "gf:2"),
        (z2_translation, "gf:3"),
        (z2_identity, "gf:2"),
        (semilattice_trivial, "gf:2"),
        (lambda: snake_action(3), "gf:2"),
    ):
        act = build()
        alg = induce_algebra_action(act, parse_carrier(carrier))
        ring = SkewRing(alg)
        simple = is_simple(ring, "bruteforce")[0]
        minimal = is_minimal(act)[0]
        principal = is_topologically_principal(act)[0]
        support_condition = True
        if ring.qdim <= 8:
            c = ring.carrier
            for q in product(list(c.elements()), repeat=ring.qdim):
                if all(v == c.zero for v in q):
                    continue
                ideal = ideal_generated_by(ring, q)
                if all(ring.tau_q(tuple(row)).is_zero() for row in ideal.rows):
                    support_condition = False
                    break
        assert simple == (minimal and principal and support_condition)


def test_germ_representative_is_in_the_same_coset(snake4_gf2):
    alg, ring = snake4_gf2
    rng = random.Random(21)
    for _ in range(150):
        vec = [rng.randrange(2) for _ in range(ring.dim)]
        rep = ring.germ_representative(list(vec))
        diff = [
            (a - b) % 2
            for a, b in zip(vec, ring.element_to_vec(rep))
        ]
        assert ring.in_n_span(diff)
        assert ring.germ_is_zero(diff)


def test_germ_representative_over_gf3():
    alg, ring = make_ring(z2_translation(), "gf:3")
    rng = random.Random(22)
    for _ in range(100):
        vec = [rng.randrange(3) for _ in range(ring.dim)]
        rep = ring.germ_representative(list(vec))
        diff = [(a - b) % 3 for a, b in zip(vec, ring.element_to_vec(rep))]
        assert ring.in_n_span(diff) and ring.germ_is_zero(diff)


def test_snake_scan_finds_diagonal_avoiding_ideal(snake4_gf2):
    _, ring = snake4_gf2
    scan = exhaustive_ideal_scan(ring)
    assert not scan["all_full"]
    assert not scan["all_meet_diagonal"]
    witness = scan["nonmeet_witness"]
    J = ideal_generated_by(ring, witness)
    joined = J.copy()
    for row in ring.diagonal.rows:
        joined.add(list(row))
    assert joined.dim == J.dim + ring.diagonal.dim
