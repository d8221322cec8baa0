import pytest

from skewring import (
    Space,
    cyclic_group,
    min_semilattice,
    parse_carrier,
    verify_partial_action,
)


@pytest.fixture
def gf2():
    return parse_carrier("gf:2")


@pytest.fixture
def gf3():
    return parse_carrier("gf:3")


@pytest.fixture
def rationals():
    return parse_carrier("q")


def z2_translation():
    """The free transitive action of the two-element group on two points."""
    sg = cyclic_group(2)
    sp = Space.finite(2)
    return verify_partial_action(
        sg, sp, [sp.universe, sp.universe], [{0: 0, 1: 1}, {0: 1, 1: 0}]
    )


def z2_identity():
    """Both group elements acting as the identity on two points."""
    sg = cyclic_group(2)
    sp = Space.finite(2)
    return verify_partial_action(
        sg, sp, [sp.universe, sp.universe], [{0: 0, 1: 1}, {0: 0, 1: 1}]
    )


def semilattice_trivial():
    """The two-element chain acting trivially on two points."""
    sg = min_semilattice(2)
    sp = Space.finite(2)
    return verify_partial_action(
        sg, sp, [frozenset({0}), sp.universe], [{0: 0}, {0: 0, 1: 1}]
    )
