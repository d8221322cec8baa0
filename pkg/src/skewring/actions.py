"""Topological partial actions of inverse semigroups on base spaces.

An action assigns to every semigroup element s a clopen domain X_s and a
bijection theta_s from X_{s*} onto X_s.  Validation checks the three
defining axioms exhaustively over the model's points, then re-derives the
standard consequences (idempotents act as identities, theta_{s*} inverts
theta_s, the natural order restricts domains and maps) as a consistency
check rather than assuming them.

``omega_plus`` actions must declare identity behaviour beyond the window;
the optional ``tail_idempotents_below`` declaration records, for the one
countable family supported here, which elements have idempotents below
them covering every natural beyond the window.  Topological verdicts on
such models are relative to the declared window.
"""

from itertools import product

from .spaces import Space, LcFun
from .semigroups import semigroup_from_json


class ActionError(ValueError):
    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness

    def to_json(self):
        return {"axiom": self.axiom, "witness": self.witness, "message": str(self)}


class PartialAction:
    """A validated topological partial action."""

    def __init__(self, semigroup, space, domains, maps, tail_idem_below):
        self.semigroup = semigroup
        self.space = space
        self.domains = tuple(frozenset(d) for d in domains)
        self.maps = tuple(dict(m) for m in maps)
        self.tail_idem_below = frozenset(tail_idem_below)

    def theta(self, s, point):
        return self.maps[s][point]

    def theta_set(self, s, pts):
        m = self.maps[s]
        return frozenset(m[p] for p in pts)

    def domain(self, s):
        return self.domains[s]

    def source(self, s):
        """X_{s*}, the set theta_s is defined on."""
        return self.domains[self.semigroup.star[s]]

    def to_json(self):
        sg = self.semigroup
        obj = {
            "semigroup": sg.to_json(),
            "space": self.space.to_json(),
            "domains": {
                sg.labels[s]: self.space.clopen_to_json(self.domains[s])
                for s in range(sg.size)
            },
            "maps": {},
        }
        for s in range(sg.size):
            pts = {
                str(p): self.maps[s][p]
                for p in sorted(self.source(s))
                if self.space.kind == "finite" or p <= self.space.window
            }
            entry = {"points": pts}
            if self.space.kind == "omega_plus":
                entry["tail"] = "identity"
            obj["maps"][sg.labels[s]] = entry
        if self.tail_idem_below:
            obj["tail_idempotents_below"] = sorted(
                sg.labels[s] for s in self.tail_idem_below
            )
        return obj


def verify_partial_action(semigroup, space, domains, maps, tail_idem_below=()):
    """Check the partial-action axioms; raises ActionError with a witness."""
    sg = semigroup
    n = sg.size
    lab = sg.labels
    if len(domains) != n or len(maps) != n:
        raise ActionError("total", None, "domains and maps must cover every element")

    domains = [frozenset(d) for d in domains]
    for s in range(n):
        if not domains[s] <= space.universe:
            raise ActionError(
                "domain", lab[s], f"domain of {lab[s]} leaves the space"
            )
        if not space.is_clopen(domains[s]):
            raise ActionError(
                "domain", lab[s], f"domain of {lab[s]} is not clopen"
            )

    maps = [dict(m) for m in maps]
    for s in range(n):
        src = domains[sg.star[s]]
        if set(maps[s]) != src:
            raise ActionError(
                "map-domain",
                lab[s],
                f"theta_{lab[s]} must be defined exactly on the domain of {lab[sg.star[s]]}",
            )
        img = set(maps[s].values())
        if img != domains[s] or len(img) != len(src):
            raise ActionError(
                "map-bijective",
                lab[s],
                f"theta_{lab[s]} is not a bijection onto the domain of {lab[s]}",
            )
        if space.kind == "omega_plus":
            for p, q in maps[s].items():
                if (p > space.window or q > space.window) and p != q:
                    raise ActionError(
                        "tail-identity",
                        [lab[s], p],
                        f"theta_{lab[s]} moves a point beyond the window; "
                        "only identity-beyond-window actions are supported",
                    )

    covered = frozenset().union(*(domains[e] for e in sg.idempotents)) if sg.idempotents else frozenset()
    if covered != space.universe:
        raise ActionError(
            "cover",
            sorted(space.universe - covered),
            "idempotent domains do not cover the space",
        )

    for s, t in product(range(n), repeat=2):
        lhs = frozenset(maps[s][p] for p in domains[sg.star[s]] & domains[t])
        rhs = domains[s] & domains[sg.mul(s, t)]
        if lhs != rhs:
            raise ActionError(
                "intertwine",
                [lab[s], lab[t]],
                f"theta_{lab[s]} does not carry X_{lab[sg.star[s]]} n X_{lab[t]} "
                f"onto X_{lab[s]} n X_{lab[sg.mul(s, t)]}",
            )

    for s, t in product(range(n), repeat=2):
        st = sg.mul(s, t)
        dom = domains[sg.star[t]] & domains[sg.star[st]]
        for x in dom:
            y = maps[t][x]
            if y not in maps[s]:
                raise ActionError(
                    "compose",
                    [lab[s], lab[t], x],
                    f"theta_{lab[s]}(theta_{lab[t]}({x})) is undefined",
                )
            if maps[s][y] != maps[st][x]:
                raise ActionError(
                    "compose",
                    [lab[s], lab[t], x],
                    f"theta_{lab[s]} o theta_{lab[t]} and theta_{lab[st]} disagree at {x}",
                )

    # consequences of the axioms; failures indicate an inconsistent table
    for e in sg.idempotents:
        for x in domains[e]:
            if maps[e][x] != x:
                raise ActionError(
                    "derived-idempotent-identity",
                    [lab[e], x],
                    f"theta_{lab[e]} is not the identity at {x}",
                )
    for s in range(n):
        inv = maps[sg.star[s]]
        for x, y in maps[s].items():
            if inv.get(y) != x:
                raise ActionError(
                    "derived-inverse",
                    [lab[s], x],
                    f"theta_{lab[sg.star[s]]} does not invert theta_{lab[s]}",
                )
    for s, t in product(range(n), repeat=2):
        if s != t and sg.leq(s, t):
            if not domains[s] <= domains[t]:
                raise ActionError(
                    "derived-monotone",
                    [lab[s], lab[t]],
                    f"{lab[s]} <= {lab[t]} but the domains are not nested",
                )
            for x in domains[sg.star[s]]:
                if maps[s][x] != maps[t][x]:
                    raise ActionError(
                        "derived-restriction",
                        [lab[s], lab[t], x],
                        f"theta_{lab[s]} and theta_{lab[t]} disagree at {x}",
                    )

    tail_idx = frozenset(tail_idem_below)
    if tail_idx:
        if space.kind != "omega_plus":
            raise ActionError(
                "tail-declaration", None,
                "tail_idempotents_below only applies to omega_plus models",
            )
        for s in tail_idx:
            if space.tail_point not in domains[sg.star[s]]:
                raise ActionError(
                    "tail-declaration",
                    lab[s],
                    f"{lab[s]} is declared tail-witnessed but its source misses the tail",
                )

    return PartialAction(sg, space, domains, maps, tail_idx)


def action_from_json(obj, max_size=64):
    sg = semigroup_from_json(obj["semigroup"], max_size=max_size)
    space = Space.from_json(obj["space"])
    domains, maps = [], []
    dom_json = obj.get("domains", {})
    map_json = obj.get("maps", {})
    for s, label in enumerate(sg.labels):
        if label not in dom_json:
            raise ActionError("total", label, f"missing domain for {label!r}")
        domains.append(space.clopen_from_json(dom_json[label]))
    for s, label in enumerate(sg.labels):
        if label not in map_json:
            raise ActionError("total", label, f"missing map for {label!r}")
        entry = map_json[label]
        pts = {int(p): int(q) for p, q in entry.get("points", {}).items()}
        if space.kind == "omega_plus":
            if entry.get("tail", "identity") != "identity":
                raise ActionError(
                    "tail-identity", label,
                    "only 'identity' tail behaviour is supported",
                )
            src = domains[sg.star[s]]
            for p in (space.tail_point, space.inf_point):
                if p in src:
                    pts[p] = p
        maps.append(pts)
    tail_decl = [sg.index[x] for x in obj.get("tail_idempotents_below", [])]
    return verify_partial_action(sg, space, domains, maps, tail_decl)


# --- built-in actions --------------------------------------------------------


def munn_action(semigroup):
    """The action of a finite inverse semigroup on its idempotent set:
    X = E(S) discrete, X_s = {e <= s s*}, theta_s(e) = s e s*."""
    sg = semigroup
    idem = sg.idempotents
    point_of = {e: i for i, e in enumerate(idem)}
    space = Space.finite(len(idem))
    domains, maps = [], []
    for s in range(sg.size):
        ss = sg.mul(s, sg.star[s])
        domains.append(frozenset(point_of[e] for e in idem if sg.leq(e, ss)))
    for s in range(sg.size):
        src = domains[sg.star[s]]
        maps.append(
            {x: point_of[sg.mul(sg.mul(s, idem[x]), sg.star[s])] for x in src}
        )
    return verify_partial_action(sg, space, domains, maps)


def snake_action(window):
    """The built-in countable example: the two-headed chain acting on the
    compactified naturals, resolved at the given window.  Every natural
    beyond the window carries an idempotent below both 'z' and 'inf', which
    the declaration records."""
    from .semigroups import snake_semigroup

    sg = snake_semigroup(window)
    space = Space.omega_plus(window)
    i_inf, i_z = sg.index["inf"], sg.index["z"]
    domains = []
    for s in range(sg.size):
        if s in (i_inf, i_z):
            domains.append(space.universe)
        else:
            domains.append(frozenset(range(1, s + 2)))  # element k has index k-1
    maps = [{p: p for p in domains[sg.star[s]]} for s in range(sg.size)]
    return verify_partial_action(sg, space, domains, maps, [i_inf, i_z])


def canonical_action(sim_semigroup, pmaps, element_indices=None):
    """The defining action of a sub-inverse-semigroup of partial injections:
    points are the naturals the maps touch, X_s is the image of s."""
    if element_indices is None:
        sg, chosen = sim_semigroup, list(range(len(pmaps)))
    else:
        from .semigroups import subsemigroup_closure

        sg, chosen = subsemigroup_closure(sim_semigroup, element_indices)
    sub_pmaps = [pmaps[i] for i in chosen]
    touched = sorted({x for pm in sub_pmaps for x in pm} | {y for pm in sub_pmaps for y in pm.values()})
    point_of = {x: i for i, x in enumerate(touched)}
    space = Space.finite(max(1, len(touched)))
    domains, maps = [], []
    for s in range(sg.size):
        pm = sub_pmaps[s]
        domains.append(frozenset(point_of[y] for y in pm.values()))
    for s in range(sg.size):
        pm = sub_pmaps[s]
        maps.append({point_of[x]: point_of[pm[x]] for x in pm})
    if not touched:
        raise ActionError("cover", None, "the chosen elements are all empty maps")
    return verify_partial_action(sg, space, domains, maps)


# --- the induced action on the function ring ---------------------------------


class AlgebraAction:
    """The action on locally constant functions induced by a point action:
    D_s = functions supported in X_s, alpha_s(f) = f o theta_{s*}."""

    def __init__(self, action, carrier):
        self.action = action
        self.carrier = carrier
        self.semigroup = action.semigroup
        self.space = action.space
        sp = self.space
        self.domain_cells = tuple(
            sp.clopen_cells(action.domains[s]) for s in range(self.semigroup.size)
        )

    def alpha(self, s, f):
        """alpha_s(f) for f supported in X_{s*}, extended by zero."""
        act, sp, c = self.action, self.space, self.carrier
        if not f.support() <= act.source(s):
            raise ActionError(
                "alpha-domain",
                self.semigroup.labels[s],
                "function is not supported in the source domain",
            )
        inv = act.maps[self.semigroup.star[s]]
        vals = [c.zero] * len(sp.coords)
        for i, cell in enumerate(sp.coords):
            rep = sp.cell_points(cell)[0]
            if rep in act.domains[s]:
                vals[i] = f(inv[rep])
        return LcFun(sp, c, vals)

    def local_unit(self, s):
        return LcFun.indicator(self.space, self.carrier, self.action.domains[s])

    def cell_cover(self):
        """For every resolution cell, an idempotent whose domain contains it
        (exists because idempotent domains cover the space)."""
        sg, sp = self.semigroup, self.space
        cover = {}
        for cell in sp.coords:
            pts = set(sp.cell_points(cell))
            for e in sg.idempotents:
                if pts <= self.action.domains[e]:
                    cover[cell] = e
                    break
            else:
                raise ActionError("cover", cell, "cell not covered by any idempotent domain")
        return cover


def induce_algebra_action(action, carrier):
    """Build the function-ring action and re-check its axioms on the
    spanning indicator functions."""
    alg = AlgebraAction(action, carrier)
    sg, sp = action.semigroup, action.space
    alg.cell_cover()  # non-degeneracy: every cell decomposes into some D_e
    for s, t in product(range(sg.size), repeat=2):
        lhs = sp.clopen_cells(action.theta_set(s, action.source(s) & action.domains[t]))
        rhs = sp.clopen_cells(action.domains[s] & action.domains[sg.mul(s, t)])
        if lhs != rhs:
            raise ActionError("alpha-intertwine", [sg.labels[s], sg.labels[t]], "induced action broken")
    for s, t in product(range(sg.size), repeat=2):
        st = sg.mul(s, t)
        dom = action.source(t) & action.domains[sg.star[st]]
        for cell in sp.clopen_cells(dom):
            f = LcFun.indicator(sp, carrier, sp.cells_to_set([cell]))
            if alg.alpha(s, alg.alpha(t, f)) != alg.alpha(st, f):
                raise ActionError(
                    "alpha-compose", [sg.labels[s], sg.labels[t], cell], "induced action broken"
                )
    return alg


# --- dynamical predicates -----------------------------------------------------


def _open_invariant_closure(action, start):
    """Smallest open invariant subset containing the given points."""
    sp = action.space
    sg = action.semigroup
    u = set(start)
    changed = True
    while changed:
        changed = False
        if sp.kind == "omega_plus" and sp.inf_point in u and sp.tail_point not in u:
            u.add(sp.tail_point)  # every neighbourhood of infinity meets the tail
            changed = True
        for s in range(sg.size):
            for p in list(u & action.source(s)):
                q = action.maps[s][p]
                if q not in u:
                    u.add(q)
                    changed = True
    return frozenset(u)


def is_minimal(action):
    """No nonempty proper open invariant subset; returns (bool, witness)."""
    sp = action.space
    for p in sp.points:
        u = _open_invariant_closure(action, [p])
        if u != sp.universe:
            return False, u
    return True, None


def _idempotent_witnessed(action, s):
    """Points of X_{s*} covered by the domain of some idempotent below s;
    on the tail this includes the declared beyond-window witnesses."""
    sg, sp = action.semigroup, action.space
    out = set()
    for e in sg.idempotents:
        if sg.leq(e, s):
            out |= action.domains[e]
    if sp.kind == "omega_plus" and s in action.tail_idem_below:
        out.add(sp.tail_point)
    return frozenset(out & action.source(s))


def lambda_set(action, s):
    """Points of X_{s*} where s either moves the point or is witnessed by an
    idempotent below it."""
    witnessed = _idempotent_witnessed(action, s)
    return frozenset(
        p for p in action.source(s) if action.maps[s][p] != p or p in witnessed
    )


def is_topologically_principal(action):
    """Each lambda set must be dense in its source; returns (bool, certs)."""
    sg, sp = action.semigroup, action.space
    certs = []
    verdict = True
    for s in range(sg.size):
        lam = lambda_set(action, s)
        src = action.source(s)
        dense = sp.is_dense_in(lam, src)
        verdict = verdict and dense
        certs.append(
            {
                "s": sg.labels[s],
                "lambda": sp.open_to_json(lam),
                "source": sp.clopen_to_json(src),
                "dense": dense,
            }
        )
    return verdict, certs


def fixed_set(action, s):
    return frozenset(p for p in action.source(s) if action.maps[s][p] == p)


def is_topologically_free(action):
    """Interior of each fixed set must equal its idempotent-witnessed part;
    returns (bool, witness, group_certs)."""
    sg, sp = action.semigroup, action.space
    witness = None
    verdict = True
    group_certs = None
    for s in range(sg.size):
        fixed = fixed_set(action, s)
        inside = sp.interior(fixed)
        witnessed = _idempotent_witnessed(action, s)
        if inside != witnessed and witness is None:
            verdict = False
            bad = sorted(inside ^ witnessed)[0]
            witness = {"s": sg.labels[s], "point": sp.point_json(bad)}
    if sg.is_group():
        unit = sg.idempotents[0]
        group_certs = []
        for t in range(sg.size):
            if t == unit:
                continue
            src = action.source(t)
            moved = frozenset(p for p in src if action.maps[t][p] != p)
            group_certs.append(
                {
                    "t": sg.labels[t],
                    "moved": sp.open_to_json(moved),
                    "fixed": sp.open_to_json(src - moved),
                    "moved_dense": sp.is_dense_in(moved, src),
                }
            )
    return verdict, witness, group_certs
