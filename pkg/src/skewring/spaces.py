"""Zero-dimensional base spaces and their locally constant function rings.

Two models are supported:

* ``finite``: n isolated points 0..n-1; every subset is clopen.
* ``omega_plus``: the naturals together with a point at infinity, resolved
  up to a finite window W.  Points 1..W are explicit; all naturals beyond
  the window are represented by a single tail point (index W+1), and the
  point at infinity by index W+2.  A set is clopen exactly when it treats
  the tail and infinity the same way (finite subsets of the naturals, or
  cofinite sets containing infinity); open sets may contain the tail
  without infinity (e.g. the copy of the naturals itself).

Functions are stored as one exact value per resolution cell; in the
``omega_plus`` model the tail and infinity share a cell, which encodes the
fact that a locally constant compactly supported function is eventually
equal to its value at infinity.
"""

from .scalars import CarrierError


class SpaceError(ValueError):
    pass


class Space:
    def __init__(self, kind, size):
        if kind not in ("finite", "omega_plus"):
            raise SpaceError(f"unknown space kind {kind!r}")
        if size < 1:
            raise SpaceError("space needs at least one point")
        self.kind = kind
        if kind == "finite":
            self.n = size
            self.points = tuple(range(size))
            self.coords = tuple(range(size))
            self.tail_point = None
            self.inf_point = None
        else:
            self.window = size
            self.tail_point = size + 1
            self.inf_point = size + 2
            self.points = tuple(range(1, size + 1)) + (self.tail_point, self.inf_point)
            # the tail and infinity share one resolution cell, keyed by tail
            self.coords = tuple(range(1, size + 1)) + (self.tail_point,)
        self.universe = frozenset(self.points)
        self.coord_index = {c: i for i, c in enumerate(self.coords)}

    @classmethod
    def finite(cls, n):
        return cls("finite", n)

    @classmethod
    def omega_plus(cls, window):
        return cls("omega_plus", window)

    def __eq__(self, other):
        return (
            isinstance(other, Space)
            and other.kind == self.kind
            and other.points == self.points
        )

    def __hash__(self):
        return hash((self.kind, self.points))

    def __repr__(self):
        if self.kind == "finite":
            return f"Space.finite({self.n})"
        return f"Space.omega_plus({self.window})"

    # --- point/cell bookkeeping -------------------------------------------

    def coord_of(self, point):
        if self.kind == "omega_plus" and point == self.inf_point:
            return self.tail_point
        return point

    def cell_points(self, coord):
        if self.kind == "omega_plus" and coord == self.tail_point:
            return (self.tail_point, self.inf_point)
        return (coord,)

    def cells_to_set(self, coords):
        pts = []
        for c in coords:
            pts.extend(self.cell_points(c))
        return frozenset(pts)

    def clopen_cells(self, s):
        """The resolution cells making up a clopen set."""
        if not self.is_clopen(s):
            raise SpaceError(f"not a clopen set: {sorted(s)}")
        return tuple(c for c in self.coords if self.cell_points(c)[0] in s)

    # --- topology -----------------------------------------------------------

    def is_open(self, s):
        if self.kind == "finite":
            return True
        # a neighbourhood of infinity must contain all large naturals
        return self.inf_point not in s or self.tail_point in s

    def is_closed(self, s):
        if self.kind == "finite":
            return True
        # infinitely many naturals accumulate at infinity
        return self.tail_point not in s or self.inf_point in s

    def is_clopen(self, s):
        return self.is_open(s) and self.is_closed(s)

    def closure(self, s):
        if self.kind == "omega_plus" and self.tail_point in s:
            return frozenset(s) | {self.inf_point}
        return frozenset(s)

    def interior(self, s):
        if self.kind == "omega_plus" and self.tail_point not in s:
            return frozenset(s) - {self.inf_point}
        return frozenset(s)

    def complement(self, s):
        return self.universe - s

    def is_dense_in(self, s, region):
        """Whether s is dense in region (both subsets of the space)."""
        return frozenset(region) <= self.closure(s)

    # --- JSON ----------------------------------------------------------------

    def to_json(self):
        if self.kind == "finite":
            return {"kind": "finite", "n": self.n}
        return {"kind": "omega_plus", "window": self.window}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise SpaceError(f"bad space description: {obj!r}")
        if obj["kind"] == "finite":
            return cls.finite(int(obj["n"]))
        if obj["kind"] == "omega_plus":
            return cls.omega_plus(int(obj["window"]))
        raise SpaceError(f"unknown space kind {obj['kind']!r}")

    def clopen_from_json(self, obj):
        if self.kind == "finite":
            pts = obj["points"] if isinstance(obj, dict) else obj
            s = frozenset(int(p) for p in pts)
            if not s <= self.universe:
                raise SpaceError(f"points outside the space: {sorted(s - self.universe)}")
            return s
        if not isinstance(obj, dict):
            raise SpaceError("omega_plus clopen sets need {'points': [...], 'tail': bool}")
        pts = frozenset(int(p) for p in obj.get("points", ()))
        if not all(1 <= p <= self.window for p in pts):
            raise SpaceError(f"window points must lie in 1..{self.window}")
        if obj.get("tail", False):
            pts = pts | {self.tail_point, self.inf_point}
        return pts

    def clopen_to_json(self, s):
        if self.kind == "finite":
            return sorted(s)
        return {
            "points": sorted(p for p in s if p <= self.window),
            "tail": self.tail_point in s,
        }

    def open_to_json(self, s):
        if self.kind == "finite":
            return sorted(s)
        return {
            "points": sorted(p for p in s if p <= self.window),
            "tail": self.tail_point in s,
            "infinity": self.inf_point in s,
        }

    def point_json(self, p):
        if self.kind == "omega_plus":
            if p == self.tail_point:
                return "tail"
            if p == self.inf_point:
                return "infinity"
        return p


class LcFun:
    """A locally constant function with clopen support, one value per cell."""

    __slots__ = ("space", "carrier", "vals")

    def __init__(self, space, carrier, vals):
        self.space = space
        self.carrier = carrier
        self.vals = tuple(vals)
        if len(self.vals) != len(space.coords):
            raise SpaceError("value vector does not match the space resolution")

    @classmethod
    def zero(cls, space, carrier):
        return cls(space, carrier, [carrier.zero] * len(space.coords))

    @classmethod
    def indicator(cls, space, carrier, s, value=None):
        cells = set(space.clopen_cells(s))
        v = carrier.one if value is None else value
        return cls(space, carrier, [v if c in cells else carrier.zero for c in space.coords])

    def _check(self, other):
        if self.space != other.space or self.carrier != other.carrier:
            raise CarrierError("mismatched carriers or spaces")

    def __add__(self, other):
        self._check(other)
        c = self.carrier
        return LcFun(self.space, c, [c.add(a, b) for a, b in zip(self.vals, other.vals)])

    def __sub__(self, other):
        self._check(other)
        c = self.carrier
        return LcFun(self.space, c, [c.sub(a, b) for a, b in zip(self.vals, other.vals)])

    def __mul__(self, other):
        self._check(other)
        c = self.carrier
        return LcFun(self.space, c, [c.mul(a, b) for a, b in zip(self.vals, other.vals)])

    def __neg__(self):
        c = self.carrier
        return LcFun(self.space, c, [c.neg(a) for a in self.vals])

    def scale(self, scalar):
        c = self.carrier
        return LcFun(self.space, c, [c.mul(scalar, a) for a in self.vals])

    def __call__(self, point):
        return self.vals[self.space.coord_index[self.space.coord_of(point)]]

    def __eq__(self, other):
        return (
            isinstance(other, LcFun)
            and other.space == self.space
            and other.carrier == self.carrier
            and other.vals == self.vals
        )

    def __hash__(self):
        return hash((self.space, self.carrier, self.vals))

    def is_zero(self):
        z = self.carrier.zero
        return all(v == z for v in self.vals)

    def support(self):
        z = self.carrier.zero
        cells = [c for c, v in zip(self.space.coords, self.vals) if v != z]
        return self.space.cells_to_set(cells)

    def pieces(self):
        """Canonical disjoint pieces: one clopen set per distinct value."""
        z = self.carrier.zero
        by_value = {}
        for c, v in zip(self.space.coords, self.vals):
            if v != z:
                by_value.setdefault(v, []).append(c)
        out = [(self.space.cells_to_set(cells), v) for v, cells in by_value.items()]
        out.sort(key=lambda pv: min(pv[0]))
        return out

    def to_json(self):
        return [
            {"piece": self.space.clopen_to_json(s), "value": self.carrier.encode_value(v)}
            for s, v in self.pieces()
        ]

    @classmethod
    def from_json(cls, space, carrier, obj):
        f = cls.zero(space, carrier)
        seen = set()
        for item in obj:
            s = space.clopen_from_json(item["piece"])
            if s & seen:
                raise SpaceError("function pieces must be pairwise disjoint")
            seen |= s
            f = f + cls.indicator(space, carrier, s, carrier.parse_value(item["value"]))
        return f

    def __repr__(self):
        return f"LcFun({self.pieces()!r})"


def atoms(space, sets):
    """Coarsest clopen partition of the space refining every given set.

    Cells are grouped by their membership signature; the tail cell of an
    ``omega_plus`` space is always kept as its own block.
    """
    sets = [frozenset(s) for s in sets]
    for s in sets:
        if not space.is_clopen(s):
            raise SpaceError(f"atoms needs clopen inputs, got {sorted(s)}")
    groups = {}
    for c in space.coords:
        rep = space.cell_points(c)[0]
        sig = tuple(rep in s for s in sets)
        if space.kind == "omega_plus" and c == space.tail_point:
            sig = sig + ("tail",)
        groups.setdefault(sig, []).append(c)
    out = [space.cells_to_set(cells) for cells in groups.values()]
    out.sort(key=min)
    return out


def ideal_of_open(space, carrier, open_set):
    """Basis of {f : supp(f) inside the given open set}; field carriers only."""
    if not carrier.is_field:
        raise CarrierError("ideal computations need a field carrier")
    if not space.is_open(open_set):
        raise SpaceError(f"not an open set: {sorted(open_set)}")
    basis = []
    for c in space.coords:
        if set(space.cell_points(c)) <= open_set:
            basis.append(LcFun.indicator(space, carrier, space.cells_to_set([c])))
    return basis


def open_of_ideal(gens):
    """Union of supports of the ideal generated by the given functions.

    Closing under multiplication by cell indicators never grows the support,
    so the union of the generators' supports is already the answer; the loop
    below verifies that on the way.
    """
    if not gens:
        return frozenset()
    space, carrier = gens[0].space, gens[0].carrier
    if not carrier.is_field:
        raise CarrierError("ideal computations need a field carrier")
    u = set()
    frontier = list(gens)
    while frontier:
        f = frontier.pop()
        supp = f.support()
        new = supp - u
        if not new:
            continue
        u |= new
        for c in space.clopen_cells(frozenset(supp)):
            frontier.append(f * LcFun.indicator(space, carrier, space.cells_to_set([c])))
    return frozenset(u)
