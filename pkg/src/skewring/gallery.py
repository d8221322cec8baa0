"""The curated example gallery, regenerated from built-in constructors."""

from .semigroups import cyclic_group, min_semilattice
from .actions import snake_action, munn_action, verify_partial_action
from .spaces import Space
from .groupoids import pair_groupoid, unit_groupoid


def build_gallery_input(name, window=4):
    """Returns (input JSON object, forced carrier name or None)."""
    if name == "snake":
        return snake_action(window).to_json(), None
    if name == "pair-groupoid":
        return pair_groupoid(2).to_json(), None
    if name == "z2-translation":
        sg = cyclic_group(2)
        sp = Space.finite(2)
        action = verify_partial_action(
            sg, sp, [sp.universe, sp.universe], [{0: 0, 1: 1}, {0: 1, 1: 0}]
        )
        return action.to_json(), None
    if name == "munn-semilattice":
        return munn_action(min_semilattice(2)).to_json(), None
    if name == "z4-coefficients":
        return pair_groupoid(2).to_json(), "zmod:4"
    if name == "unit-groupoid":
        return unit_groupoid(3).to_json(), None
    raise ValueError(f"unknown gallery entry {name!r}")
