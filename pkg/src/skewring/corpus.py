"""Seeded generation of valid partial actions for the property suites.

Random multiplication tables essentially never satisfy the inverse
semigroup axioms, so instances are drawn from guaranteed-valid families:
sub-inverse-semigroups of the symmetric inverse monoid on up to three
points, acting either tautologically (each partial injection moves the
points it touches) or on their own idempotent sets.  A few fixed anchors
(a group translation, a semilattice, a partial shift on two points) are
always included so that both simple and non-simple rings occur.
"""

import random

from .scalars import parse_carrier
from .semigroups import symmetric_inverse_monoid, min_semilattice, cyclic_group
from .actions import (
    verify_partial_action,
    munn_action,
    canonical_action,
    induce_algebra_action,
    ActionError,
)
from .spaces import Space
from .ring import SkewRing


_SIM_CACHE = {}


def _sim(n):
    if n not in _SIM_CACHE:
        _SIM_CACHE[n] = symmetric_inverse_monoid(n)
    return _SIM_CACHE[n]


def _anchors():
    sg = cyclic_group(2)
    sp = Space.finite(2)
    translation = verify_partial_action(
        sg, sp, [sp.universe, sp.universe], [{0: 0, 1: 1}, {0: 1, 1: 0}]
    )
    sim2, pmaps2 = _sim(2)
    shift = next(i for i, pm in enumerate(pmaps2) if pm == {0: 1})
    return [
        ("z2-translation", translation, "gf:3"),
        ("partial-shift-canonical", canonical_action(sim2, pmaps2, [shift]), "gf:2"),
        ("semilattice-munn", munn_action(min_semilattice(3)), "gf:2"),
    ]


def generate_corpus(count, seed, max_semigroup=6, max_points=5, max_qdim=11):
    """Deterministic list of (name, action, carrier_name) instances."""
    rng = random.Random(seed)
    out = list(_anchors())[: max(0, count)]
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        base = rng.choice((2, 2, 3, 3, 3))
        sim, pmaps = _sim(base)
        k = rng.randint(1, 3)
        chosen = sorted(rng.sample(range(sim.size), k))
        kind = rng.choice(("canonical", "canonical", "munn"))
        try:
            if kind == "canonical":
                action = canonical_action(sim, pmaps, chosen)
            else:
                from .semigroups import subsemigroup_closure

                sub, _ = subsemigroup_closure(sim, chosen)
                action = munn_action(sub)
        except ActionError:
            continue
        sg = action.semigroup
        if sg.size > max_semigroup:
            continue
        if len(action.space.points) > max_points:
            continue
        ring = SkewRing(induce_algebra_action(action, parse_carrier("gf:2")))
        if ring.qdim > max_qdim:
            continue
        if ring.qdim <= 7 and rng.random() < 0.4:
            carrier = "gf:3"
        else:
            carrier = "gf:2"
        name = f"{kind}-{base}pt-{'_'.join(map(str, chosen))}"
        out.append((f"{name}-#{len(out)}", action, carrier))
    return out[:count]
