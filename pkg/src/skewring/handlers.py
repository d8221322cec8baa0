"""Orchestration: parse inputs, run the verdict stacks, assemble reports.

Reports are plain dicts with deterministic content: no wall-clock data,
witnesses from fixed iteration orders, and seeded sampling only.  The
cross-check section re-derives every equivalence the package promises; a
failed cross-check is a bug signal and maps to its own exit code.

Exit codes: 0 valid/complete, 1 invalid input, 2 cross-check failure,
3 a cap was exceeded where a verdict was mandatory.
"""

import random

from .scalars import parse_carrier, CarrierError
from .spaces import LcFun, SpaceError
from .semigroups import StructureError, semigroup_from_json
from .actions import (
    ActionError,
    action_from_json,
    induce_algebra_action,
    is_minimal,
    is_topologically_principal,
    is_topologically_free,
    munn_action,
)
from .groupoids import GroupoidError, groupoid_from_json, SteinbergModel, steinberg_simplicity, CapExceeded
from .ring import (
    SkewRing,
    diagonal_embed,
    tau,
    is_simple,
    is_S_simple,
    is_diagonal_max_commutative,
)
from . import corpus as corpus_mod

OK, INVALID_INPUT, PROPERTY_FAILURE, CAP_EXCEEDED = 0, 1, 2, 3

_PARSE_ERRORS = (StructureError, ActionError, GroupoidError, SpaceError, CarrierError, KeyError, ValueError)


def detect_kind(obj):
    if not isinstance(obj, dict):
        return None
    if "arrows" in obj:
        return "groupoid"
    if "domains" in obj or ("semigroup" in obj and "space" in obj):
        return "action"
    if "table" in obj:
        return "semigroup"
    return None


def _check(name, passed, detail=None):
    entry = {"name": name, "passed": bool(passed)}
    if detail is not None:
        entry["detail"] = detail
    return entry


def _diagnose(e):
    if hasattr(e, "to_json"):
        return e.to_json()
    if isinstance(e, KeyError):
        return {"axiom": "parse", "witness": str(e.args[0]) if e.args else None,
                "message": f"missing or unknown field: {e.args[0]!r}" if e.args else "missing field"}
    return {"axiom": "parse", "witness": None, "message": str(e)}


# --- verify ---------------------------------------------------------------


def run_verify(obj):
    kind = detect_kind(obj)
    if kind is None:
        return {
            "command": "verify",
            "kind": None,
            "valid": False,
            "diagnostic": {"axiom": "parse", "witness": None,
                           "message": "input is not a semigroup, action, or groupoid"},
        }, INVALID_INPUT
    try:
        if kind == "semigroup":
            sg = semigroup_from_json(obj)
            detail = {
                "size": sg.size,
                "idempotents": [sg.labels[e] for e in sg.idempotents],
                "involution": {sg.labels[s]: sg.labels[sg.star[s]] for s in range(sg.size)},
                "natural_order": sg.natural_partial_order(),
                "unit": sg.labels[sg.unit] if sg.unit is not None else None,
            }
        elif kind == "action":
            act = action_from_json(obj)
            detail = {
                "semigroup_size": act.semigroup.size,
                "space": act.space.to_json(),
            }
        else:
            g = groupoid_from_json(obj)
            detail = {
                "arrows": g.size,
                "units": [g.labels[u] for u in g.units],
                "isotropy": [g.labels[b] for b in g.iso],
            }
    except _PARSE_ERRORS as e:
        return {"command": "verify", "kind": kind, "valid": False,
                "diagnostic": _diagnose(e)}, INVALID_INPUT
    return {"command": "verify", "kind": kind, "valid": True, "structure": detail}, OK


# --- action analysis --------------------------------------------------------


def _engine_agreement(ring, seed, samples):
    """Seeded cross-check of the two zero-mod-identifications engines."""
    rng = random.Random(seed)
    c = ring.carrier
    if c.is_finite:
        values = list(c.elements())
    else:
        from fractions import Fraction

        values = [Fraction(k) for k in range(-2, 3)]
    checked = 0
    for _ in range(samples):
        vec = [rng.choice(values) for _ in range(ring.dim)]
        if rng.random() < 0.4:
            blend = [c.zero] * ring.dim
            for row in ring.nspace.rows:
                coeff = rng.choice(values)
                blend = [c.add(a, c.mul(coeff, b)) for a, b in zip(blend, row)]
            vec = blend
        if ring.in_n_span(list(vec)) != ring.germ_is_zero(list(vec)):
            return False, checked, [c.encode_value(v) for v in vec]
        checked += 1
    return True, checked, None


def _diagonal_checks(ring):
    """The embedding of the function ring onto the diagonal: injective,
    multiplicative, split by the coefficient-sum map; full spanning set."""
    alg, sp, c = ring.alg, ring.space, ring.carrier
    cells = [LcFun.indicator(sp, c, sp.cells_to_set([cl])) for cl in sp.coords]
    if ring.diagonal.dim != len(sp.coords):
        return False, "diagonal dimension differs from the function ring"
    for f in cells:
        if tau(diagonal_embed(alg, f)) != f:
            return False, "coefficient-sum does not split the embedding"
        if not ring.in_diagonal(ring.phi(f)):
            return False, "embedded function leaves the diagonal"
    for f in cells:
        for g in cells:
            lhs = ring.phi(f * g)
            rhs = ring.qmul(ring.phi(f), ring.phi(g))
            if lhs != rhs:
                return False, "embedding is not multiplicative"
            if ring.qadd(ring.phi(f), ring.phi(g)) != ring.phi(f + g):
                return False, "embedding is not additive"
    return True, None


def analyze_action(action, carrier, bruteforce_cap=14, seed=0, engine_samples=200):
    sg, sp = action.semigroup, action.space
    minimal, min_wit = is_minimal(action)
    principal, certs = is_topologically_principal(action)
    free, free_wit, group_certs = is_topologically_free(action)
    result = {
        "kind": "action",
        "carrier": carrier.name,
        "semigroup": {"size": sg.size, "elements": list(sg.labels)},
        "space": sp.to_json(),
        "minimal": {
            "verdict": minimal,
            "witness": sp.open_to_json(min_wit) if min_wit is not None else None,
        },
        "topologically_principal": {"verdict": principal, "certificates": certs},
        "topologically_free": {"verdict": free, "witness": free_wit},
    }
    if group_certs is not None:
        result["topologically_free"]["group_certificates"] = group_certs

    checks = [_check("free_implies_principal", (not free) or principal)]

    alg = induce_algebra_action(action, carrier)
    if not carrier.is_field:
        result["ring"] = {"skipped": f"carrier {carrier.name} is not a field"}
        result["cross_checks"] = checks
        return result, OK

    ring = SkewRing(alg)
    s_ok, s_wit = is_S_simple(alg)
    m_ok, m_wit = is_diagonal_max_commutative(ring)
    crit, crit_report = is_simple(ring, "criterion")
    result["ring"] = {
        "dim": ring.dim,
        "quotient_dim": ring.qdim,
        "diagonal_dim": ring.diagonal.dim,
    }
    result["s_simple"] = {
        "verdict": s_ok,
        "witness": sp.open_to_json(s_wit) if s_wit is not None else None,
    }
    result["max_commutative"] = {
        "verdict": m_ok,
        "witness": ring.lift(m_wit).to_json() if m_wit is not None else None,
    }
    result["simplicity"] = crit_report

    bruteforce = {"ran": False}
    if carrier.is_finite and ring.qdim <= bruteforce_cap:
        brute, brute_report = is_simple(ring, "bruteforce", cap=bruteforce_cap)
        bruteforce = {
            "ran": True,
            "simple": brute,
            "vectors": brute_report["vectors"],
            "witness": brute_report["witness"],
        }
        checks.append(_check("criterion_matches_bruteforce", brute == crit))
    else:
        reason = (
            "carrier is not finite"
            if not carrier.is_finite
            else f"quotient dimension {ring.qdim} exceeds cap {bruteforce_cap}"
        )
        bruteforce["reason"] = reason
    result["bruteforce"] = bruteforce

    checks.append(_check("minimal_iff_invariant_ideal_free", minimal == s_ok))
    agree, n_samples, counter = _engine_agreement(ring, seed, engine_samples)
    checks.append(
        _check("engine_agreement", agree,
               {"samples": n_samples} if agree else {"counterexample": counter})
    )
    slices_ok = all(
        not ring.germ_is_zero(
            [carrier.one if i == k else carrier.zero for i in range(ring.dim)]
        )
        and not ring.in_n_span(
            [carrier.one if i == k else carrier.zero for i in range(ring.dim)]
        )
        for k in range(ring.dim)
    )
    checks.append(_check("homogeneous_slices_survive_quotient", slices_ok))
    taus_ok = all(
        tau(ring.vec_to_element(list(row))).is_zero() for row in ring.nspace.rows
    )
    checks.append(_check("coefficient_sum_kills_identifications", taus_ok))
    diag_ok, diag_msg = _diagonal_checks(ring)
    checks.append(_check("diagonal_embedding_splits", diag_ok, diag_msg))

    result["work"] = {
        "engine_samples": n_samples,
        "vectors_scanned": bruteforce.get("vectors", 0),
    }
    result["cross_checks"] = checks
    code = OK if all(ch["passed"] for ch in checks) else PROPERTY_FAILURE
    return result, code


# --- groupoid analysis -------------------------------------------------------


def _transport_checks(model):
    ring = model.ring
    c = ring.carrier
    units = [
        tuple(c.one if i == a else c.zero for i in range(ring.qdim))
        for a in range(ring.qdim)
    ]
    from .groupoids import SteinbergFun, convolve

    for q in units:
        if ring.project(model.to_element(model.to_fun(q))) != q:
            return False, "transport does not round-trip from the skew ring"
    for b in range(model.groupoid.size):
        f = SteinbergFun.indicator(model.groupoid, c, [b])
        if model.to_fun(ring.project(model.to_element(f))) != f:
            return False, "transport does not round-trip from the convolution side"
    for qa in units:
        for qb in units:
            lhs = model.to_fun(ring.qmul(qa, qb))
            rhs = convolve(model.to_fun(qa), model.to_fun(qb))
            if lhs != rhs:
                return False, "transport is not multiplicative"
    return True, None


def analyze_groupoid(groupoid, carrier, bruteforce_cap=14, bisection_cap=16, seed=0):
    model = None
    if carrier.is_field:
        model = SteinbergModel(groupoid, carrier, bisection_cap=bisection_cap)
    verdict, rep = steinberg_simplicity(
        groupoid, carrier, bisection_cap=bisection_cap, dim_cap=bruteforce_cap,
        model=model,
    )
    result = {
        "kind": "groupoid",
        "carrier": carrier.name,
        "arrows": groupoid.size,
        "units": [groupoid.labels[u] for u in groupoid.units],
        "effective": {"verdict": rep["effective"], "witness": rep["effective_witness"]},
        "minimal": {"verdict": rep["minimal"], "witness": rep["minimal_witness"]},
        "field": rep["field"],
        "simplicity": {
            "simple": verdict,
            "mode": "groupoid-criterion",
            "criterion": rep["criterion"],
            "bruteforce": rep["bruteforce"],
            "witness": rep.get("witness"),
        },
    }
    checks = []
    if carrier.is_field:
        ring = model.ring
        result["bisections"] = model.semigroup.size
        result["ring"] = {
            "dim": ring.dim,
            "quotient_dim": ring.qdim,
            "diagonal_dim": ring.diagonal.dim,
        }
        rt_ok, rt_msg = _transport_checks(model)
        checks.append(_check("transport_round_trip", rt_ok, rt_msg))
        s_ok, _ = is_S_simple(model.alg)
        checks.append(_check("minimal_iff_invariant_ideal_free", s_ok == rep["minimal"]))
        m_ok, _ = is_diagonal_max_commutative(ring)
        checks.append(_check("effective_iff_diagonal_max_commutative", m_ok == rep["effective"]))
        checks.append(_check("criterion_agreement", rep["criterion"] == verdict))
        if rep["bruteforce"] is not None:
            checks.append(_check("bruteforce_agreement", rep["bruteforce"] == verdict))
    else:
        wit = result["simplicity"]["witness"]
        checks.append(
            _check("non_field_ideal_witness",
                   bool(wit and wit["nonzero"] and wit["proper"] and wit["closed"]))
        )
    result["cross_checks"] = checks
    code = OK if all(ch["passed"] for ch in checks) else PROPERTY_FAILURE
    return result, code


# --- semigroup analysis ------------------------------------------------------


def analyze_semigroup(sg, carrier, bruteforce_cap=14, seed=0):
    """Structure summary plus a full analysis of the canonical action on the
    idempotent set."""
    result = {
        "kind": "semigroup",
        "size": sg.size,
        "idempotents": [sg.labels[e] for e in sg.idempotents],
        "involution": {sg.labels[s]: sg.labels[sg.star[s]] for s in range(sg.size)},
        "natural_order": sg.natural_partial_order(),
    }
    action = munn_action(sg)
    sub, code = analyze_action(action, carrier, bruteforce_cap=bruteforce_cap, seed=seed)
    result["idempotent_action"] = sub
    result["cross_checks"] = sub["cross_checks"]
    return result, code


# --- entry points -------------------------------------------------------------


def run_analyze(obj, carrier_name="gf:2", bruteforce_cap=14, bisection_cap=16, seed=0):
    kind = detect_kind(obj)
    if kind is None:
        return {
            "command": "analyze",
            "valid": False,
            "diagnostic": {"axiom": "parse", "witness": None,
                           "message": "input is not a semigroup, action, or groupoid"},
        }, INVALID_INPUT
    try:
        carrier = parse_carrier(carrier_name)
        if kind == "semigroup":
            parsed = semigroup_from_json(obj)
            result, code = analyze_semigroup(parsed, carrier, bruteforce_cap, seed)
        elif kind == "action":
            parsed = action_from_json(obj)
            result, code = analyze_action(parsed, carrier, bruteforce_cap, seed)
        else:
            parsed = groupoid_from_json(obj)
            result, code = analyze_groupoid(parsed, carrier, bruteforce_cap, bisection_cap, seed)
    except CapExceeded as e:
        return {"command": "analyze", "valid": True, "cap_exceeded": str(e)}, CAP_EXCEEDED
    except _PARSE_ERRORS as e:
        return {"command": "analyze", "valid": False, "diagnostic": _diagnose(e)}, INVALID_INPUT
    result["command"] = "analyze"
    result["valid"] = True
    return result, code


GALLERY = ("snake", "pair-groupoid", "z2-translation", "munn-semilattice",
           "z4-coefficients", "unit-groupoid")


def run_gallery(name, carrier_name="gf:2", window=4, bruteforce_cap=14,
                bisection_cap=16, seed=0):
    from .gallery import build_gallery_input

    if name not in GALLERY:
        return {
            "command": "gallery",
            "valid": False,
            "diagnostic": {
                "axiom": "unknown-name", "witness": name,
                "message": f"unknown gallery entry {name!r}; available: {', '.join(GALLERY)}",
            },
        }, INVALID_INPUT
    obj, forced_carrier = build_gallery_input(name, window)
    report, code = run_analyze(
        obj,
        carrier_name=forced_carrier or carrier_name,
        bruteforce_cap=bruteforce_cap,
        bisection_cap=bisection_cap,
        seed=seed,
    )
    report["command"] = "gallery"
    report["gallery"] = name
    return report, code


def run_corpus(count, seed, bruteforce_cap=14, engine_samples=120):
    instances = corpus_mod.generate_corpus(count, seed)
    per_instance = []
    worst = OK
    tallies = {"simple": 0, "not_simple": 0, "checks_failed": 0}
    for name, action, carrier_name in instances:
        carrier = parse_carrier(carrier_name)
        result, code = analyze_action(
            action, carrier, bruteforce_cap=bruteforce_cap, seed=seed,
            engine_samples=engine_samples,
        )
        worst = max(worst, code)
        simple = result["simplicity"]["simple"]
        tallies["simple" if simple else "not_simple"] += 1
        failed = [ch["name"] for ch in result["cross_checks"] if not ch["passed"]]
        tallies["checks_failed"] += len(failed)
        per_instance.append(
            {
                "name": name,
                "carrier": carrier_name,
                "semigroup_size": action.semigroup.size,
                "points": len(action.space.points),
                "quotient_dim": result["ring"]["quotient_dim"],
                "minimal": result["minimal"]["verdict"],
                "principal": result["topologically_principal"]["verdict"],
                "free": result["topologically_free"]["verdict"],
                "s_simple": result["s_simple"]["verdict"],
                "max_commutative": result["max_commutative"]["verdict"],
                "simple": simple,
                "bruteforce_ran": result["bruteforce"]["ran"],
                "failed_checks": failed,
            }
        )
    report = {
        "command": "corpus",
        "valid": True,
        "count": len(per_instance),
        "seed": seed,
        "tallies": tallies,
        "instances": per_instance,
    }
    return report, worst
