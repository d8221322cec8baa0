"""Exact Gaussian elimination over a field carrier.

RowSpace keeps a subspace in reduced row echelon form, which is canonical,
so two row spaces are equal iff their row lists are equal.  A bitmask
variant over GF(2) backs the exhaustive ideal enumerations, where vectors
are plain ints and row reduction is a handful of xors.
"""


class RowSpace:
    """A subspace of carrier^width held in reduced row echelon form."""

    def __init__(self, carrier, width):
        self.carrier = carrier
        self.width = width
        self.rows = []        # RREF rows, sorted by pivot column
        self.pivots = []      # pivot column of each row

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residual of vec after eliminating all pivot columns."""
        c = self.carrier
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            coeff = v[p]
            if coeff != c.zero:
                v = [c.sub(a, c.mul(coeff, b)) for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Insert vec; returns True when it enlarged the space."""
        c = self.carrier
        v = self.reduce(vec)
        p = next((i for i, a in enumerate(v) if a != c.zero), None)
        if p is None:
            return False
        scale = c.inv(v[p])
        v = [c.mul(scale, a) for a in v]
        # back-eliminate the new pivot column from the existing rows
        for i, row in enumerate(self.rows):
            coeff = row[p]
            if coeff != c.zero:
                self.rows[i] = [c.sub(a, c.mul(coeff, b)) for a, b in zip(row, v)]
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.rows))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        return True

    def contains(self, vec):
        c = self.carrier
        return all(a == c.zero for a in self.reduce(vec))

    def copy(self):
        other = RowSpace(self.carrier, self.width)
        other.rows = [list(r) for r in self.rows]
        other.pivots = list(self.pivots)
        return other

    def equals(self, other):
        return self.pivots == other.pivots and self.rows == other.rows


class Gf2RowSpace:
    """RowSpace over GF(2) with vectors encoded as int bitmasks."""

    def __init__(self, width):
        self.width = width
        self.rows = []     # sorted by pivot bit, RREF
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        for row, p in zip(self.rows, self.pivots):
            if (v >> p) & 1:
                v ^= row
        return v

    def add(self, v):
        v = self.reduce(v)
        if v == 0:
            return False
        # lowest set bit as pivot, matching the dense RowSpace convention
        p = (v & -v).bit_length() - 1
        for i, row in enumerate(self.rows):
            if (row >> p) & 1:
                self.rows[i] = row ^ v
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.rows))
        self.rows.insert(at, v)
        self.pivots.insert(at, p)
        return True

    def contains(self, v):
        return self.reduce(v) == 0

    def copy(self):
        other = Gf2RowSpace(self.width)
        other.rows = list(self.rows)
        other.pivots = list(self.pivots)
        return other


def nullspace(carrier, rows, width):
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    c = carrier
    rref = RowSpace(c, width)
    for row in rows:
        rref.add(row)
    pivot_set = set(rref.pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [c.zero] * width
        v[free] = c.one
        for row, p in zip(rref.rows, rref.pivots):
            v[p] = c.neg(row[free])
        basis.append(v)
    return basis
