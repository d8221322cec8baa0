"""Finite inverse semigroups given by multiplication tables.

Elements are opaque string labels mapped to dense integer indices at load
time; all internal arithmetic is on indices.  Validation is exhaustive:
associativity, existence and uniqueness of generalized inverses,
commutativity of idempotents, and the natural partial order axioms are all
checked, and the first violation is reported with a witness.
"""

from itertools import product


class StructureError(ValueError):
    def __init__(self, axiom, witness, message):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness

    def to_json(self):
        return {"axiom": self.axiom, "witness": self.witness, "message": str(self)}


class InverseSemigroup:
    """A validated inverse semigroup: table, involution and natural order."""

    def __init__(self, labels, table, star, idempotents, unit, below_mask):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.star = tuple(star)
        self.idempotents = tuple(idempotents)
        self.unit = unit
        self.below_mask = tuple(below_mask)  # below_mask[t] has bit s iff s <= t
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.idem_mask = 0
        for e in idempotents:
            self.idem_mask |= 1 << e

    @property
    def size(self):
        return len(self.labels)

    def mul(self, a, b):
        return self.table[a][b]

    def leq(self, s, t):
        return bool(self.below_mask[t] >> s & 1)

    def below(self, t):
        """Indices s with s <= t."""
        m = self.below_mask[t]
        return [s for s in range(self.size) if m >> s & 1]

    def is_idempotent(self, s):
        return bool(self.idem_mask >> s & 1)

    def is_group(self):
        return len(self.idempotents) == 1

    def natural_partial_order(self):
        """The full relation as {label: sorted labels above it}."""
        return {
            self.labels[s]: sorted(
                self.labels[t] for t in range(self.size) if self.leq(s, t)
            )
            for s in range(self.size)
        }

    def to_json(self):
        obj = {"elements": list(self.labels), "table": [list(r) for r in self.table]}
        if self.unit is not None:
            obj["unit"] = self.labels[self.unit]
        return obj

    def __repr__(self):
        return f"InverseSemigroup({list(self.labels)})"


def verify_inverse_semigroup(labels, table, unit=None, max_size=64):
    """Validate a multiplication table; raises StructureError with a witness."""
    labels = list(labels)
    n = len(labels)
    if n == 0:
        raise StructureError("nonempty", None, "element list is empty")
    if len(set(labels)) != n:
        raise StructureError("unique-labels", None, "element labels must be distinct")
    if n > max_size:
        raise StructureError(
            "size-cap", n, f"semigroup has {n} elements, cap is {max_size}"
        )
    if len(table) != n or any(len(row) != n for row in table):
        raise StructureError("total-table", None, f"table must be {n}x{n}")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise StructureError(
                    "total-table",
                    [labels[i], labels[j]],
                    f"table entry ({labels[i]},{labels[j]}) = {v!r} is not an element index",
                )

    def mul(a, b):
        return table[a][b]

    for a, b, c in product(range(n), repeat=3):
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            raise StructureError(
                "associativity",
                [labels[a], labels[b], labels[c]],
                f"({labels[a]}{labels[b]}){labels[c]} != {labels[a]}({labels[b]}{labels[c]})",
            )

    star = []
    for s in range(n):
        inverses = [t for t in range(n) if mul(mul(s, t), s) == s and mul(mul(t, s), t) == t]
        if len(inverses) != 1:
            kind = "inverse-missing" if not inverses else "inverse-not-unique"
            raise StructureError(
                kind,
                {"element": labels[s], "candidates": [labels[t] for t in inverses]},
                f"element {labels[s]} has {len(inverses)} generalized inverses",
            )
        star.append(inverses[0])

    idempotents = [e for e in range(n) if mul(e, e) == e]
    for e, f in product(idempotents, repeat=2):
        if mul(e, f) != mul(f, e):
            raise StructureError(
                "idempotents-commute",
                [labels[e], labels[f]],
                f"idempotents {labels[e]} and {labels[f]} do not commute",
            )

    # natural partial order: s <= t iff s = t s* s
    below_mask = [0] * n
    for s, t in product(range(n), repeat=2):
        if mul(t, mul(star[s], s)) == s:
            below_mask[t] |= 1 << s
    for s in range(n):
        if not below_mask[s] >> s & 1:
            raise StructureError(
                "order-reflexive", labels[s], f"{labels[s]} is not below itself"
            )
    for s, t in product(range(n), repeat=2):
        if s != t and below_mask[t] >> s & 1 and below_mask[s] >> t & 1:
            raise StructureError(
                "order-antisymmetric",
                [labels[s], labels[t]],
                f"{labels[s]} and {labels[t]} are below each other",
            )
    for s, t, u in product(range(n), repeat=3):
        if below_mask[t] >> s & 1 and below_mask[u] >> t & 1 and not below_mask[u] >> s & 1:
            raise StructureError(
                "order-transitive",
                [labels[s], labels[t], labels[u]],
                "natural order is not transitive",
            )

    unit_idx = None
    if unit is not None:
        if unit not in labels:
            raise StructureError("unit", unit, f"unit {unit!r} is not an element")
        unit_idx = labels.index(unit)
        for s in range(n):
            if mul(unit_idx, s) != s or mul(s, unit_idx) != s:
                raise StructureError(
                    "unit", [unit, labels[s]], f"{unit!r} does not act as an identity"
                )
        for e in idempotents:
            if not below_mask[unit_idx] >> e & 1:
                raise StructureError(
                    "unit",
                    [unit, labels[e]],
                    f"idempotent {labels[e]} is not below the unit",
                )

    return InverseSemigroup(labels, table, star, idempotents, unit_idx, below_mask)


def semigroup_from_json(obj, max_size=64):
    if not isinstance(obj, dict) or "elements" not in obj or "table" not in obj:
        raise StructureError(
            "parse", None, "semigroup JSON needs 'elements' and 'table'"
        )
    return verify_inverse_semigroup(
        [str(x) for x in obj["elements"]],
        obj["table"],
        unit=obj.get("unit"),
        max_size=max_size,
    )


# --- built-in families ------------------------------------------------------


def min_semilattice(n):
    """The chain 0 < 1 < ... < n-1 with xy = min(x, y)."""
    labels = [str(i) for i in range(n)]
    table = [[min(i, j) for j in range(n)] for i in range(n)]
    return verify_inverse_semigroup(labels, table, unit=labels[-1])


def cyclic_group(n):
    labels = ["1"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return verify_inverse_semigroup(labels, table, unit="1")


def snake_semigroup(window):
    """The two-headed chain: naturals 1..window with min, plus elements
    'inf' and 'z' acting as two incomparable tops of the idempotent chain."""
    if window < 1:
        raise ValueError("window must be at least 1")
    labels = [str(k) for k in range(1, window + 1)] + ["inf", "z"]
    w, i_inf, i_z = window, window, window + 1

    def mul(a, b):
        if a < w and b < w:
            return min(a, b)
        if a < w or b < w:
            return min(a, b)  # n*inf = n*z = n
        if a == b:
            return i_inf  # zz = inf inf = inf
        return i_z  # z*inf = inf*z = z

    table = [[mul(a, b) for b in range(w + 2)] for a in range(w + 2)]
    return verify_inverse_semigroup(labels, table)


def _pmap_label(pmap):
    if not pmap:
        return "()"
    return "(" + ",".join(f"{a}>{b}" for a, b in sorted(pmap.items())) + ")"


def symmetric_inverse_monoid(n):
    """All partial injections on {0..n-1}.

    Returns (semigroup, pmaps) where pmaps[i] is the partial map of element i
    as a dict; composition is (s*t)(x) = s(t(x)).
    """
    points = range(n)
    pmaps = []
    seen = set()

    def add(pm):
        key = tuple(sorted(pm.items()))
        if key not in seen:
            seen.add(key)
            pmaps.append(dict(pm))

    def extend(pm, remaining_dom, used_img):
        add(pm)
        for a in remaining_dom:
            for b in points:
                if b not in used_img:
                    pm2 = dict(pm)
                    pm2[a] = b
                    extend(pm2, [x for x in remaining_dom if x > a], used_img | {b})

    extend({}, list(points), set())
    pmaps.sort(key=lambda pm: (len(pm), sorted(pm.items())))
    index = {tuple(sorted(pm.items())): i for i, pm in enumerate(pmaps)}

    def compose(s, t):
        return {x: s[t[x]] for x in t if t[x] in s}

    table = [
        [index[tuple(sorted(compose(pmaps[i], pmaps[j]).items()))] for j in range(len(pmaps))]
        for i in range(len(pmaps))
    ]
    labels = [_pmap_label(pm) for pm in pmaps]
    unit = _pmap_label({x: x for x in points})
    sg = verify_inverse_semigroup(labels, table, unit=unit)
    return sg, pmaps


def subsemigroup_closure(semigroup, seed_indices):
    """Close a set of elements under product and involution; returns the
    sub-inverse-semigroup with its own labels and the index map into the
    parent."""
    members = set()
    frontier = list(dict.fromkeys(seed_indices))
    while frontier:
        s = frontier.pop()
        if s in members:
            continue
        members.add(s)
        frontier.append(semigroup.star[s])
        for t in list(members):
            frontier.append(semigroup.mul(s, t))
            frontier.append(semigroup.mul(t, s))
    order = sorted(members)
    pos = {s: i for i, s in enumerate(order)}
    labels = [semigroup.labels[s] for s in order]
    table = [[pos[semigroup.mul(a, b)] for b in order] for a in order]
    return verify_inverse_semigroup(labels, table), order
