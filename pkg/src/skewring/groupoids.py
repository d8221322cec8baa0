"""Finite discrete groupoids, their convolution algebras, and the bridge to
skew rings via the inverse semigroup of bisections.

A finite groupoid with the discrete topology has every subset compact-open,
so the convolution algebra of finitely supported functions is the whole
story, and the set of bisections (arrow subsets on which source and range
are injective) is a finite inverse semigroup acting on the unit space.
Transporting functions along that action identifies the convolution
algebra with the skew ring of the action, and the identification is
checked here on full spanning sets.
"""

from itertools import product

from .scalars import CarrierError
from .semigroups import verify_inverse_semigroup
from .spaces import Space, LcFun
from .actions import verify_partial_action, induce_algebra_action
from .ring import SkewRing, SkewElement, CapExceeded, is_simple


class GroupoidError(ValueError):
    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness

    def to_json(self):
        return {"axiom": self.axiom, "witness": self.witness, "message": str(self)}


class Groupoid:
    def __init__(self, labels, src, rng, inv, comp):
        self.labels = tuple(labels)
        self.index = {a: i for i, a in enumerate(self.labels)}
        self.src = tuple(src)
        self.rng = tuple(rng)
        self.inv = tuple(inv)
        self.comp = dict(comp)  # (i, j) -> k for src(i) == rng(j)
        self.units = tuple(sorted(set(self.src) | set(self.rng)))
        self.unit_pos = {u: i for i, u in enumerate(self.units)}
        self.iso = tuple(b for b in range(len(labels)) if self.src[b] == self.rng[b])

    @property
    def size(self):
        return len(self.labels)

    def compose(self, i, j):
        return self.comp[(i, j)]

    def orbits(self):
        """Connected components of the unit space under the arrows."""
        parent = {u: u for u in self.units}

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for b in range(self.size):
            parent[find(self.src[b])] = find(self.rng[b])
        comps = {}
        for u in self.units:
            comps.setdefault(find(u), []).append(u)
        return [sorted(c) for c in comps.values()]

    def to_json(self):
        lab = self.labels
        return {
            "arrows": list(lab),
            "src": {lab[b]: lab[self.src[b]] for b in range(self.size)},
            "rng": {lab[b]: lab[self.rng[b]] for b in range(self.size)},
            "inv": {lab[b]: lab[self.inv[b]] for b in range(self.size)},
            "compose": sorted(
                [lab[i], lab[j], lab[k]] for (i, j), k in self.comp.items()
            ),
        }

    def __repr__(self):
        return f"Groupoid({list(self.labels)})"


def verify_groupoid(labels, src, rng, inv, comp):
    """Validate groupoid structure maps; raises GroupoidError with a witness."""
    labels = list(labels)
    n = len(labels)
    if n == 0:
        raise GroupoidError("nonempty", None, "arrow list is empty")
    if len(set(labels)) != n:
        raise GroupoidError("unique-labels", None, "arrow labels must be distinct")
    for m, name in ((src, "src"), (rng, "rng"), (inv, "inv")):
        if len(m) != n or any(not 0 <= v < n for v in m):
            raise GroupoidError("total", name, f"{name} must map every arrow to an arrow")

    units = sorted(set(src) | set(rng))
    for u in units:
        if src[u] != u or rng[u] != u:
            raise GroupoidError(
                "units", labels[u],
                f"{labels[u]} appears as a source or range but is not a unit",
            )

    composable = {(i, j) for i in range(n) for j in range(n) if src[i] == rng[j]}
    if set(comp) != composable:
        bad = sorted(composable ^ set(comp))[0]
        raise GroupoidError(
            "compose-domain", [labels[bad[0]], labels[bad[1]]],
            "composition must be defined exactly on pairs with matching source and range",
        )
    for (i, j), k in comp.items():
        if not 0 <= k < n:
            raise GroupoidError("compose-domain", [labels[i], labels[j]], "bad composite")
        if src[k] != src[j] or rng[k] != rng[i]:
            raise GroupoidError(
                "compose-maps", [labels[i], labels[j]],
                f"composite {labels[k]} has wrong source or range",
            )
    for i, j in composable:
        k = comp[(i, j)]
        for l in range(n):
            if src[j] == rng[l]:
                if comp[(k, l)] != comp[(i, comp[(j, l)])]:
                    raise GroupoidError(
                        "associativity", [labels[i], labels[j], labels[l]],
                        "composition is not associative",
                    )
    for b in range(n):
        if comp[(rng[b], b)] != b or comp[(b, src[b])] != b:
            raise GroupoidError(
                "units-neutral", labels[b], f"units do not act neutrally on {labels[b]}"
            )
    for b in range(n):
        ib = inv[b]
        if src[ib] != rng[b] or rng[ib] != src[b]:
            raise GroupoidError(
                "inverse", labels[b], f"inverse of {labels[b]} has wrong source or range"
            )
        if comp[(ib, b)] != src[b] or comp[(b, ib)] != rng[b]:
            raise GroupoidError(
                "inverse", labels[b], f"{labels[ib]} does not invert {labels[b]}"
            )
    return Groupoid(labels, src, rng, inv, comp)


def groupoid_from_json(obj):
    if not isinstance(obj, dict) or "arrows" not in obj:
        raise GroupoidError("parse", None, "groupoid JSON needs 'arrows'")
    labels = [str(a) for a in obj["arrows"]]
    idx = {a: i for i, a in enumerate(labels)}

    def lookup(table, name):
        out = []
        for a in labels:
            if a not in table or table[a] not in idx:
                raise GroupoidError("total", a, f"{name} missing or invalid for {a!r}")
            out.append(idx[table[a]])
        return out

    src = lookup(obj.get("src", {}), "src")
    rng = lookup(obj.get("rng", {}), "rng")
    inv = lookup(obj.get("inv", {}), "inv")
    comp = {}
    for triple in obj.get("compose", []):
        a, b, c = (str(x) for x in triple)
        if a not in idx or b not in idx or c not in idx:
            raise GroupoidError("compose-domain", triple, "unknown arrow in composition")
        comp[(idx[a], idx[b])] = idx[c]
    return verify_groupoid(labels, src, rng, inv, comp)


# --- built-in groupoids -------------------------------------------------------


def pair_groupoid(n):
    """Arrows (i,j) on n points with (i,j)(j,k) = (i,k)."""
    pts = range(1, n + 1)
    labels = [f"({i},{j})" for i in pts for j in pts]
    idx = {lab: k for k, lab in enumerate(labels)}
    src, rng, inv = [], [], []
    for i in pts:
        for j in pts:
            src.append(idx[f"({j},{j})"])
            rng.append(idx[f"({i},{i})"])
            inv.append(idx[f"({j},{i})"])
    comp = {}
    for i, j, k in product(pts, repeat=3):
        comp[(idx[f"({i},{j})"], idx[f"({j},{k})"])] = idx[f"({i},{k})"]
    return verify_groupoid(labels, src, rng, inv, comp)


def unit_groupoid(n):
    labels = [f"u{i}" for i in range(1, n + 1)]
    ids = list(range(n))
    comp = {(i, i): i for i in ids}
    return verify_groupoid(labels, ids, ids, ids, comp)


def group_groupoid(group):
    """A group as a one-object groupoid; expects a validated group."""
    if len(group.idempotents) != 1:
        raise GroupoidError("group", None, "input semigroup is not a group")
    unit = group.unit
    n = group.size
    src = [unit] * n
    rng = [unit] * n
    comp = {(i, j): group.mul(i, j) for i in range(n) for j in range(n)}
    return verify_groupoid(list(group.labels), src, rng, list(group.star), comp)


# --- the convolution algebra ---------------------------------------------------


class SteinbergFun:
    """A finitely supported scalar function on the arrows."""

    def __init__(self, groupoid, carrier, vals):
        self.groupoid = groupoid
        self.carrier = carrier
        self.vals = {b: v for b, v in vals.items() if v != carrier.zero}

    @classmethod
    def zero(cls, groupoid, carrier):
        return cls(groupoid, carrier, {})

    @classmethod
    def indicator(cls, groupoid, carrier, arrows, value=None):
        v = carrier.one if value is None else value
        return cls(groupoid, carrier, {b: v for b in arrows})

    @classmethod
    def unit(cls, groupoid, carrier):
        return cls.indicator(groupoid, carrier, groupoid.units)

    def _check(self, other):
        if self.groupoid is not other.groupoid or self.carrier != other.carrier:
            raise CarrierError("mismatched groupoid or carrier")

    def __add__(self, other):
        self._check(other)
        c = self.carrier
        vals = dict(self.vals)
        for b, v in other.vals.items():
            vals[b] = c.add(vals.get(b, c.zero), v)
        return SteinbergFun(self.groupoid, c, vals)

    def __neg__(self):
        c = self.carrier
        return SteinbergFun(self.groupoid, c, {b: c.neg(v) for b, v in self.vals.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        c = self.carrier
        return SteinbergFun(self.groupoid, c, {b: c.mul(s, v) for b, v in self.vals.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SteinbergFun)
            and other.groupoid is self.groupoid
            and other.carrier == self.carrier
            and other.vals == self.vals
        )

    def __hash__(self):
        return hash((id(self.groupoid), self.carrier, tuple(sorted(self.vals.items()))))

    def is_zero(self):
        return not self.vals

    def support(self):
        return frozenset(self.vals)

    def to_json(self):
        g, c = self.groupoid, self.carrier
        return {g.labels[b]: c.encode_value(v) for b, v in sorted(self.vals.items())}

    @classmethod
    def from_json(cls, groupoid, carrier, obj):
        vals = {}
        for a, v in obj.items():
            if a not in groupoid.index:
                raise GroupoidError("parse", a, f"unknown arrow {a!r}")
            vals[groupoid.index[a]] = carrier.parse_value(v)
        return cls(groupoid, carrier, vals)

    def __repr__(self):
        return f"SteinbergFun({self.to_json()})"


def convolve(f, g):
    """(f * g)(b) = sum of f(c) g(d) over factorizations b = cd."""
    f._check(g)
    G, c = f.groupoid, f.carrier
    out = {}
    for i, fv in f.vals.items():
        for j, gv in g.vals.items():
            if G.src[i] == G.rng[j]:
                k = G.comp[(i, j)]
                out[k] = c.add(out.get(k, c.zero), c.mul(fv, gv))
    return SteinbergFun(G, c, out)


# --- bisections and the induced skew ring --------------------------------------


def _is_bisection(G, arrows):
    srcs = [G.src[b] for b in arrows]
    rngs = [G.rng[b] for b in arrows]
    return len(set(srcs)) == len(srcs) and len(set(rngs)) == len(rngs)


def _bisection_label(G, arrows):
    return "{" + ";".join(sorted(G.labels[b] for b in arrows)) + "}"


def compact_bisections(G, cap=16, generating=None):
    """The inverse semigroup of bisections: all of them (arrow count under
    the cap), or the closure of a generating family.  Returns the validated
    semigroup together with the arrow subsets in element order."""
    if generating is None:
        if G.size > cap:
            raise CapExceeded(
                f"groupoid has {G.size} arrows; full bisection enumeration "
                f"is capped at {cap} (give a generating family instead)"
            )
        subsets = []
        for mask in range(1 << G.size):
            arrows = frozenset(b for b in range(G.size) if mask >> b & 1)
            if _is_bisection(G, arrows):
                subsets.append(arrows)
    else:
        seen = set()
        frontier = []
        for arrows in generating:
            arrows = frozenset(arrows)
            if not _is_bisection(G, arrows):
                raise GroupoidError(
                    "bisection", sorted(G.labels[b] for b in arrows),
                    "generating family contains a non-bisection",
                )
            frontier.append(arrows)
        while frontier:
            B = frontier.pop()
            if B in seen:
                continue
            seen.add(B)
            frontier.append(frozenset(G.inv[b] for b in B))
            for C in list(seen):
                for P, Q in ((B, C), (C, B)):
                    prod = frozenset(
                        G.comp[(p, q)] for p in P for q in Q if G.src[p] == G.rng[q]
                    )
                    frontier.append(prod)
        subsets = sorted(seen, key=lambda s: (len(s), sorted(s)))

    subsets = sorted(set(subsets), key=lambda s: (len(s), sorted(s)))
    pos = {s: i for i, s in enumerate(subsets)}
    labels = [_bisection_label(G, s) for s in subsets]
    table = []
    for B in subsets:
        row = []
        for C in subsets:
            prod = frozenset(
                G.comp[(p, q)] for p in B for q in C if G.src[p] == G.rng[q]
            )
            if prod not in pos:
                raise GroupoidError(
                    "bisection-closure", [_bisection_label(G, B), _bisection_label(G, C)],
                    "generating family is not closed under products",
                )
            row.append(pos[prod])
        table.append(row)
    sg = verify_inverse_semigroup(labels, table, max_size=max(64, len(subsets)))
    return sg, subsets


def theta_of_bisections(G, semigroup, bisections):
    """The action of the bisection semigroup on the unit space: a bisection
    moves the source of each of its arrows to the range."""
    space = Space.finite(len(G.units))
    domains, maps = [], []
    for B in bisections:
        domains.append(frozenset(G.unit_pos[G.rng[b]] for b in B))
    for B in bisections:
        maps.append({G.unit_pos[G.src[b]]: G.unit_pos[G.rng[b]] for b in B})
    return verify_partial_action(semigroup, space, domains, maps)


class SteinbergModel:
    """The convolution algebra seen through the skew ring of the bisection
    action, with the two transport maps between the pictures."""

    def __init__(self, groupoid, carrier, bisection_cap=16, generating=None):
        self.groupoid = groupoid
        self.carrier = carrier
        self.restricted = generating is not None
        self.semigroup, self.bisections = compact_bisections(
            groupoid, cap=bisection_cap, generating=generating
        )
        self.action = theta_of_bisections(groupoid, self.semigroup, self.bisections)
        self.alg = induce_algebra_action(self.action, carrier)
        self.ring = SkewRing(self.alg)
        # each ring basis slice names exactly one arrow: the member of the
        # bisection whose range is the slice's unit
        G = groupoid
        self._arrow_of_slice = []
        for s, cell in self.ring.basis:
            unit = G.units[cell]
            arrows = [b for b in self.bisections[s] if G.rng[b] == unit]
            self._arrow_of_slice.append(arrows[0])

    def to_fun(self, x):
        """Transport a formal sum (or quotient vector) to a function on arrows."""
        if isinstance(x, tuple):
            x = self.ring.lift(x)
        vec = self.ring.element_to_vec(x)
        c = self.carrier
        out = {}
        for k, v in enumerate(vec):
            if v != c.zero:
                b = self._arrow_of_slice[k]
                out[b] = c.add(out.get(b, c.zero), v)
        return SteinbergFun(self.groupoid, c, out)

    def disjoint_bisection_pieces(self, f):
        """Greedy decomposition of a function into constant-value indicator
        pieces on disjoint bisections, in fixed arrow order."""
        G = self.groupoid
        remaining = dict(f.vals)
        pieces = []
        while remaining:
            first = min(remaining)
            v = remaining[first]
            srcs, rngs = {G.src[first]}, {G.rng[first]}
            piece = [first]
            for b in sorted(remaining):
                if b == first or remaining[b] != v:
                    continue
                if G.src[b] in srcs or G.rng[b] in rngs:
                    continue
                piece.append(b)
                srcs.add(G.src[b])
                rngs.add(G.rng[b])
            for b in piece:
                del remaining[b]
            pieces.append((frozenset(piece), v))
        return pieces

    def to_element(self, f):
        """Transport a function on arrows to a formal sum over bisections."""
        sp, c = self.alg.space, self.carrier
        terms = []
        for B, v in self.disjoint_bisection_pieces(f):
            try:
                s = self.bisections.index(B)
            except ValueError:
                raise GroupoidError(
                    "bisection", _bisection_label(self.groupoid, B),
                    "decomposition piece is outside the bisection family "
                    "(restricted model)",
                )
            rng_pts = frozenset(self.groupoid.unit_pos[self.groupoid.rng[b]] for b in B)
            terms.append((s, LcFun.indicator(sp, c, rng_pts, v)))
        return SkewElement(self.alg, terms)


def groupoid_properties(G):
    """Effectiveness (trivial isotropy off the units) and minimality (one
    orbit of units), with witnesses."""
    iso_extra = [b for b in G.iso if b not in G.units]
    effective = not iso_extra
    orbits = G.orbits()
    minimal = len(orbits) == 1
    return {
        "effective": effective,
        "effective_witness": G.labels[iso_extra[0]] if iso_extra else None,
        "minimal": minimal,
        "minimal_witness": [G.labels[u] for u in orbits[0]] if not minimal else None,
    }


def _multiple_ideal_witness(G, carrier):
    """Over a modular non-field carrier, scaling by a proper divisor of the
    modulus gives a nonzero proper ideal; verify the closure on spanning
    indicator pairs."""
    n = carrier.n
    p = next(d for d in range(2, n) if n % d == 0)
    closed = True
    for i in range(G.size):
        f = SteinbergFun.indicator(G, carrier, [i], p % n)
        for j in range(G.size):
            g = SteinbergFun.indicator(G, carrier, [j])
            for h in (convolve(f, g), convolve(g, f)):
                if any(v % p for v in h.vals.values()):
                    closed = False
    proper = all((p * k) % n != 1 % n for k in range(n))
    return {
        "kind": "multiple_of",
        "factor": p,
        "nonzero": p % n != 0,
        "proper": proper,
        "closed": closed,
    }


def steinberg_simplicity(G, carrier, bisection_cap=16, dim_cap=14, model=None):
    """The groupoid simplicity verdict (effective + minimal + field), with
    the independent skew ring verdicts for cross-checking."""
    props = groupoid_properties(G)
    verdict = props["effective"] and props["minimal"] and carrier.is_field
    report = {
        "simple": verdict,
        "effective": props["effective"],
        "minimal": props["minimal"],
        "field": carrier.is_field,
        "effective_witness": props["effective_witness"],
        "minimal_witness": props["minimal_witness"],
        "criterion": None,
        "bruteforce": None,
        "agree": None,
    }
    if not carrier.is_field:
        report["witness"] = _multiple_ideal_witness(G, carrier)
        report["agree"] = True  # nothing to cross-check without a field
        return verdict, report
    if model is None:
        model = SteinbergModel(G, carrier, bisection_cap=bisection_cap)
    crit, _ = is_simple(model.ring, "criterion")
    report["criterion"] = crit
    agree = crit == verdict
    try:
        brute, _ = is_simple(model.ring, "bruteforce", cap=dim_cap)
        report["bruteforce"] = brute
        agree = agree and brute == verdict
    except CapExceeded:
        report["bruteforce"] = None
    report["agree"] = agree
    return verdict, report
