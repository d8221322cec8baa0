from skewring.corpus import generate_corpus
from skewring.actions import verify_partial_action


def test_deterministic_for_a_seed():
    a = generate_corpus(20, 5)
    b = generate_corpus(20, 5)
    assert [(n, c) for n, _, c in a] == [(n, c) for n, _, c in b]
    assert all(x[1].to_json() == y[1].to_json() for x, y in zip(a, b))


def test_respects_bounds():
    for _, action, carrier in generate_corpus(40, 123):
        assert action.semigroup.size <= 6
        assert len(action.space.points) <= 5
        assert carrier in ("gf:2", "gf:3")


def test_instances_revalidate():
    for _, action, _ in generate_corpus(10, 77):
        verify_partial_action(
            action.semigroup, action.space, action.domains, action.maps,
            action.tail_idem_below,
        )


def test_contains_both_verdicts():
    from skewring.actions import induce_algebra_action
    from skewring.scalars import parse_carrier
    from skewring.ring import SkewRing, is_simple

    verdicts = set()
    for _, action, carrier in generate_corpus(12, 1):
        ring = SkewRing(induce_algebra_action(action, parse_carrier(carrier)))
        verdicts.add(is_simple(ring, "criterion")[0])
    assert verdicts == {True, False}
