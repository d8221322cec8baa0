"""The skew ring of a partial action and its exact simplicity tests.

Construction: formal sums of coefficient-times-delta terms form a ring L
with the twisted product (a ds)(b dt) = alpha_s(alpha_{s*}(a) b) d_{st};
identifying a d_r with a d_s whenever r <= s and a is supported in X_r cuts
out a subspace N, and the object of interest is the quotient L/N.

Everything here is plain linear algebra over the scalar carrier.  L is
spanned by cell slices (one resolution cell of the base space, one
semigroup element), and on that spanning set the product of two slices is
again a slice or zero, so the whole ring is encoded by an integer table.
N has a reduced row basis; canonical coset representatives are supported
on the non-pivot positions, which gives concrete coordinates on L/N.

Two independent zero tests mod N are provided: exact row reduction against
the basis of N, and a pointwise germ normal form.  Their agreement is a
standing cross-check.
"""

from itertools import product

from .linalg import RowSpace, Gf2RowSpace
from .scalars import CarrierError
from .spaces import LcFun


class CapExceeded(RuntimeError):
    pass


class SkewElement:
    """A formal finite sum of terms (semigroup element, coefficient function),
    each coefficient supported in the domain of its element."""

    def __init__(self, alg, terms):
        self.alg = alg
        merged = {}
        for s, f in terms:
            if s in merged:
                merged[s] = merged[s] + f
            else:
                merged[s] = f
        for s, f in merged.items():
            if not f.support() <= alg.action.domains[s]:
                raise ValueError(
                    f"coefficient of {alg.semigroup.labels[s]} leaves its domain"
                )
        self.terms = {s: f for s, f in merged.items() if not f.is_zero()}

    @classmethod
    def from_json(cls, alg, obj):
        sg = alg.semigroup
        terms = []
        for item in obj:
            s = sg.index[str(item["s"])]
            terms.append((s, LcFun.from_json(alg.space, alg.carrier, item["coeff"])))
        return cls(alg, terms)

    def to_json(self):
        sg = self.alg.semigroup
        return [
            {"s": sg.labels[s], "coeff": self.terms[s].to_json()}
            for s in sorted(self.terms)
        ]

    def __add__(self, other):
        return SkewElement(
            self.alg, list(self.terms.items()) + list(other.terms.items())
        )

    def __neg__(self):
        return SkewElement(self.alg, [(s, -f) for s, f in self.terms.items()])

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        sg = self.alg.semigroup
        return " + ".join(f"({f!r}) d_{sg.labels[s]}" for s, f in sorted(self.terms.items())) or "0"


def tau(x):
    """Sum of the coefficient functions of a formal sum."""
    out = LcFun.zero(x.alg.space, x.alg.carrier)
    for f in x.terms.values():
        out = out + f
    return out


def diagonal_embed(alg, f):
    """The canonical copy of a function inside the skew ring: split f over
    the covering idempotent domains and tag each piece accordingly."""
    cover = alg.cell_cover()
    sp, c = alg.space, alg.carrier
    terms = []
    for cell, v in zip(sp.coords, f.vals):
        if v != c.zero:
            terms.append(
                (cover[cell], LcFun.indicator(sp, c, sp.cells_to_set([cell]), v))
            )
    return SkewElement(alg, terms)


class SkewRing:
    """The quotient ring, with exact coordinates and both zero engines."""

    def __init__(self, alg):
        if not alg.carrier.is_field:
            raise CarrierError("the quotient engine needs a field carrier")
        self.alg = alg
        self.carrier = alg.carrier
        sg, sp = alg.semigroup, alg.space
        self.semigroup, self.space = sg, sp

        self.basis = [
            (s, cell) for s in range(sg.size) for cell in alg.domain_cells[s]
        ]
        self.bindex = {sk: k for k, sk in enumerate(self.basis)}
        self.dim = len(self.basis)

        # cell-level maps: where theta_s sends each resolution cell of X_{s*}
        self.cell_map = []
        for s in range(sg.size):
            m = {}
            for cell in alg.domain_cells[sg.star[s]]:
                m[cell] = sp.coord_of(alg.action.maps[s][sp.cell_points(cell)[0]])
            self.cell_map.append(m)

        # slice times slice is a slice or zero
        self.mono = [[-1] * self.dim for _ in range(self.dim)]
        star = sg.star
        for i, (s, k_cell) in enumerate(self.basis):
            pulled = self.cell_map[star[s]][k_cell]
            for j, (t, m_cell) in enumerate(self.basis):
                if pulled == m_cell:
                    self.mono[i][j] = self.bindex[(sg.mul(s, t), k_cell)]

        # the identified-pairs subspace and its reduced row basis
        c = self.carrier
        self.nspace = RowSpace(c, self.dim)
        for r, s in product(range(sg.size), repeat=2):
            if r != s and sg.leq(r, s):
                for cell in alg.domain_cells[r]:
                    vec = [c.zero] * self.dim
                    vec[self.bindex[(r, cell)]] = c.one
                    vec[self.bindex[(s, cell)]] = c.neg(c.one)
                    self.nspace.add(vec)
        pivots = set(self.nspace.pivots)
        self.free = [k for k in range(self.dim) if k not in pivots]
        self.qdim = len(self.free)
        self.free_index = {k: a for a, k in enumerate(self.free)}

        # canonical residue of every spanning slice, in quotient coordinates
        self.residue = []
        for k in range(self.dim):
            vec = [c.zero] * self.dim
            vec[k] = c.one
            red = self.nspace.reduce(vec)
            self.residue.append(tuple(red[f] for f in self.free))

        zero_q = tuple([c.zero] * self.qdim)
        self.qzero = zero_q
        self.struct = [
            [
                self.residue[self.mono[self.free[a]][self.free[b]]]
                if self.mono[self.free[a]][self.free[b]] >= 0
                else zero_q
                for b in range(self.qdim)
            ]
            for a in range(self.qdim)
        ]

        # the diagonal: residues of all idempotent slices
        self.diagonal = RowSpace(c, self.qdim)
        self.diagonal_gens = []
        for e in sg.idempotents:
            for cell in alg.domain_cells[e]:
                q = self.residue[self.bindex[(e, cell)]]
                self.diagonal_gens.append(q)
                self.diagonal.add(list(q))

        self._cover = alg.cell_cover()
        self._build_germ_tables()

    # --- raw (pre-quotient) vectors ---------------------------------------

    def element_to_vec(self, x):
        c = self.carrier
        vec = [c.zero] * self.dim
        sp = self.space
        for s, f in x.terms.items():
            for cell in self.alg.domain_cells[s]:
                v = f.vals[sp.coord_index[cell]]
                if v != c.zero:
                    vec[self.bindex[(s, cell)]] = v
        return vec

    def vec_to_element(self, vec):
        sp, c = self.space, self.carrier
        terms = []
        for k, v in enumerate(vec):
            if v != c.zero:
                s, cell = self.basis[k]
                terms.append(
                    (s, LcFun.indicator(sp, c, sp.cells_to_set([cell]), v))
                )
        return SkewElement(self.alg, terms)

    def multiply_vec(self, x, y):
        c = self.carrier
        out = [c.zero] * self.dim
        for i, xv in enumerate(x):
            if xv == c.zero:
                continue
            row = self.mono[i]
            for j, yv in enumerate(y):
                if yv == c.zero:
                    continue
                k = row[j]
                if k >= 0:
                    out[k] = c.add(out[k], c.mul(xv, yv))
        return out

    def multiply(self, x, y):
        """The twisted product of two formal sums."""
        return self.vec_to_element(
            self.multiply_vec(self.element_to_vec(x), self.element_to_vec(y))
        )

    def in_n_span(self, x):
        """Exact row-reduction test: does x lie in the identified subspace?"""
        vec = x if isinstance(x, list) else self.element_to_vec(x)
        return self.nspace.contains(vec)

    # --- quotient coordinates ----------------------------------------------

    def project(self, x):
        """Canonical quotient coordinates of a formal sum or raw vector."""
        vec = x if isinstance(x, list) else self.element_to_vec(x)
        red = self.nspace.reduce(vec)
        return tuple(red[f] for f in self.free)

    def lift(self, q):
        """The canonical representative of a quotient vector."""
        c = self.carrier
        vec = [c.zero] * self.dim
        for a, v in enumerate(q):
            vec[self.free[a]] = v
        return self.vec_to_element(vec)

    def qadd(self, x, y):
        c = self.carrier
        return tuple(c.add(a, b) for a, b in zip(x, y))

    def qscale(self, s, x):
        c = self.carrier
        return tuple(c.mul(s, a) for a in x)

    def qmul(self, x, y):
        c = self.carrier
        out = list(self.qzero)
        for a, xv in enumerate(x):
            if xv == c.zero:
                continue
            row = self.struct[a]
            for b, yv in enumerate(y):
                if yv == c.zero:
                    continue
                t = row[b]
                coeff = c.mul(xv, yv)
                for i, tv in enumerate(t):
                    if tv != c.zero:
                        out[i] = c.add(out[i], c.mul(coeff, tv))
        return tuple(out)

    def tau_q(self, q):
        """The coefficient-sum map on the quotient, via the canonical lift."""
        return tau(self.lift(q))

    def phi(self, f):
        """Quotient coordinates of the diagonal copy of a function."""
        return self.project(diagonal_embed(self.alg, f))

    def in_diagonal(self, q):
        return self.diagonal.contains(list(q))

    # --- germ normal form ----------------------------------------------------

    def _build_germ_tables(self):
        sg, sp = self.semigroup, self.space
        act = self.alg.action
        dom_mask = {}
        for p in sp.points:
            m = 0
            for s in range(sg.size):
                if p in act.domains[s]:
                    m |= 1 << s
            dom_mask[p] = m
        self.germ_class = {}
        self.germ_members = {}
        for p in sp.points:
            members = [s for s in range(sg.size) if dom_mask[p] >> s & 1]
            parent = {s: s for s in members}

            def find(s):
                while parent[s] != s:
                    parent[s] = parent[parent[s]]
                    s = parent[s]
                return s

            for i, s in enumerate(members):
                for t in members[i + 1:]:
                    if sg.below_mask[s] & sg.below_mask[t] & dom_mask[p]:
                        parent[find(s)] = find(t)
            if sp.kind == "omega_plus" and p == sp.tail_point:
                declared = [s for s in members if s in act.tail_idem_below]
                for s in declared[1:]:
                    parent[find(declared[0])] = find(s)
            classes = {}
            for s in members:
                classes.setdefault(find(s), []).append(s)
            rep_of = {}
            for mem in classes.values():
                rep = min(mem)
                for s in mem:
                    rep_of[s] = rep
            self.germ_class[p] = rep_of
            self.germ_members[p] = {min(mem): sorted(mem) for mem in classes.values()}

    def germ_normal_form(self, x):
        """Accumulate the coefficient values of x per point and germ class;
        x is zero in the quotient iff everything cancels."""
        vec = x if isinstance(x, list) else self.element_to_vec(x)
        c, sp = self.carrier, self.space
        out = {}
        for k, v in enumerate(vec):
            if v == c.zero:
                continue
            s, cell = self.basis[k]
            for p in sp.cell_points(cell):
                key = (p, self.germ_class[p][s])
                out[key] = c.add(out.get(key, c.zero), v)
        return {k: v for k, v in out.items() if v != c.zero}

    def germ_is_zero(self, x):
        return not self.germ_normal_form(x)

    def germ_form_json(self, x):
        sg, sp = self.semigroup, self.space
        form = self.germ_normal_form(x)
        return [
            {
                "point": sp.point_json(p),
                "class": [sg.labels[s] for s in self.germ_members[p][rep]],
                "value": self.carrier.encode_value(v),
            }
            for (p, rep), v in sorted(form.items())
        ]

    def in_diagonal_by_germs(self, x):
        """Diagonal membership read off the germ form: every surviving germ
        class must contain an idempotent."""
        sg = self.semigroup
        for (p, rep), _v in self.germ_normal_form(x).items():
            if not any(sg.is_idempotent(s) for s in self.germ_members[p][rep]):
                return False
        return True

    def germ_representative(self, x):
        """Re-expand the germ form into a formal sum: one slice per surviving
        class, named by the class representative.  The result lies in the
        same coset as x (their difference is null in both engines)."""
        c, sp = self.carrier, self.space
        vec = [c.zero] * self.dim
        for (p, rep), v in self.germ_normal_form(x).items():
            if sp.kind == "omega_plus" and p == sp.tail_point:
                continue  # the infinity entry already carries the tail block
            k = self.bindex[(rep, sp.coord_of(p))]
            vec[k] = c.add(vec[k], v)
        return self.vec_to_element(vec)


# --- simplicity stack ---------------------------------------------------------


def _unit_q(ring, a):
    c = ring.carrier
    return tuple(c.one if i == a else c.zero for i in range(ring.qdim))


def lmul_basis(ring, a, v):
    """Product (basis a) * v in quotient coordinates."""
    c = ring.carrier
    out = [c.zero] * ring.qdim
    row = ring.struct[a]
    for b, vb in enumerate(v):
        if vb == c.zero:
            continue
        for i, tv in enumerate(row[b]):
            if tv != c.zero:
                out[i] = c.add(out[i], c.mul(vb, tv))
    return tuple(out)


def rmul_basis(ring, a, v):
    """Product v * (basis a) in quotient coordinates."""
    c = ring.carrier
    out = [c.zero] * ring.qdim
    for b, vb in enumerate(v):
        if vb == c.zero:
            continue
        for i, tv in enumerate(ring.struct[b][a]):
            if tv != c.zero:
                out[i] = c.add(out[i], c.mul(vb, tv))
    return tuple(out)


def centralizer_of_diagonal(ring):
    """Basis of {x : x d = d x for every diagonal d}, solved exactly."""
    from .linalg import nullspace

    c = ring.carrier
    d = ring.qdim
    rows = []
    for g in ring.diagonal.rows:
        g = tuple(g)
        cols = []
        for a in range(d):
            gv = lmul_basis_vec(ring, g, a)
            vg = rmul_basis_vec(ring, g, a)
            cols.append(tuple(c.sub(x, y) for x, y in zip(gv, vg)))
        for out in range(d):
            rows.append([cols[a][out] for a in range(d)])
    return [tuple(v) for v in nullspace(c, rows, d)]


def lmul_basis_vec(ring, g, a):
    """g * (basis a) for a fixed quotient vector g."""
    c = ring.carrier
    out = [c.zero] * ring.qdim
    for b, gb in enumerate(g):
        if gb == c.zero:
            continue
        for i, tv in enumerate(ring.struct[b][a]):
            if tv != c.zero:
                out[i] = c.add(out[i], c.mul(gb, tv))
    return tuple(out)


def rmul_basis_vec(ring, g, a):
    """(basis a) * g for a fixed quotient vector g."""
    c = ring.carrier
    out = [c.zero] * ring.qdim
    row = ring.struct[a]
    for b, gb in enumerate(g):
        if gb == c.zero:
            continue
        for i, tv in enumerate(row[b]):
            if tv != c.zero:
                out[i] = c.add(out[i], c.mul(gb, tv))
    return tuple(out)


def is_diagonal_max_commutative(ring):
    """Whether the diagonal equals its own centralizer; on failure the
    witness is a commuting element outside the diagonal."""
    cen = centralizer_of_diagonal(ring)
    cen_space = RowSpace(ring.carrier, ring.qdim)
    for v in cen:
        cen_space.add(list(v))
    for g in ring.diagonal.rows:
        if not cen_space.contains(list(g)):
            raise AssertionError("diagonal does not commute with itself")
    if cen_space.dim == ring.diagonal.dim:
        return True, None
    witness = next(
        tuple(v) for v in cen_space.rows if not ring.diagonal.contains(list(v))
    )
    return False, witness


def is_S_simple(alg):
    """Whether the function ring has no proper nonzero ideal carried into
    itself by every alpha_s; decided by closing each cell's ideal."""
    if not alg.carrier.is_field:
        raise CarrierError("invariant-ideal tests need a field carrier")
    sg, sp, c = alg.semigroup, alg.space, alg.carrier
    all_cells = set(sp.coords)
    for start in sp.coords:
        cells = {start}
        frontier = [start]
        while frontier:
            cl = frontier.pop()
            ind = LcFun.indicator(sp, c, sp.cells_to_set([cl]))
            for s in range(sg.size):
                clipped = ind * alg.local_unit(sg.star[s])
                if clipped.is_zero():
                    continue
                g = alg.alpha(s, clipped)
                for c2 in sp.clopen_cells(g.support()):
                    if c2 not in cells:
                        cells.add(c2)
                        frontier.append(c2)
        if cells != all_cells:
            return False, sp.cells_to_set(sorted(cells))
    return True, None


def ideal_generated_by(ring, q):
    """Reduced basis of the two-sided ideal generated by one quotient vector."""
    space = RowSpace(ring.carrier, ring.qdim)
    if all(v == ring.carrier.zero for v in q):
        return space
    stack = [tuple(q)]
    while stack:
        v = stack.pop()
        if space.add(list(v)):
            for a in range(ring.qdim):
                stack.append(lmul_basis(ring, a, v))
                stack.append(rmul_basis(ring, a, v))
    return space


def _gf2_encode(ring, q):
    return sum(1 << a for a, v in enumerate(q) if v)


def _gf2_decode(ring, m):
    return tuple(1 if m >> a & 1 else 0 for a in range(ring.qdim))


def _gf2_scan(ring, cap, stop_on_nonfull):
    d = ring.qdim
    T = [[_gf2_encode(ring, ring.struct[a][b]) for b in range(d)] for a in range(d)]
    dspace = Gf2RowSpace(d)
    for row in ring.diagonal.rows:
        dspace.add(_gf2_encode(ring, tuple(row)))
    ddim = dspace.dim
    drows = list(dspace.rows)

    def closure(v0):
        basis = Gf2RowSpace(d)
        stack = [v0]
        while stack:
            v = stack.pop()
            if basis.add(v):
                for a in range(d):
                    left = 0
                    right = 0
                    b = v
                    while b:
                        low = b & -b
                        j = low.bit_length() - 1
                        left ^= T[a][j]
                        right ^= T[j][a]
                        b ^= low
                    stack.append(left)
                    stack.append(right)
        return basis

    out = {
        "all_full": True, "nonfull_witness": None,
        "all_meet_diagonal": True, "nonmeet_witness": None, "count": 0,
    }
    for m in range(1, 1 << d):
        out["count"] += 1
        ideal = closure(m)
        if ideal.dim < d:
            if out["all_full"]:
                out["all_full"] = False
                out["nonfull_witness"] = _gf2_decode(ring, m)
            if stop_on_nonfull:
                out["all_meet_diagonal"] = None
                out["nonmeet_witness"] = None
                return out
        # dim(I n D) = dim I + dim D - dim(I + D)
        joint = ideal.copy()
        for row in drows:
            joint.add(row)
        if ideal.dim + ddim - joint.dim == 0 and out["all_meet_diagonal"]:
            out["all_meet_diagonal"] = False
            out["nonmeet_witness"] = _gf2_decode(ring, m)
    return out


def _generic_scan(ring, cap, stop_on_nonfull):
    c = ring.carrier
    d = ring.qdim
    out = {
        "all_full": True, "nonfull_witness": None,
        "all_meet_diagonal": True, "nonmeet_witness": None, "count": 0,
    }
    ddim = ring.diagonal.dim
    for q in product(c.elements(), repeat=d):
        if all(v == c.zero for v in q):
            continue
        out["count"] += 1
        ideal = ideal_generated_by(ring, q)
        if ideal.dim < d:
            if out["all_full"]:
                out["all_full"] = False
                out["nonfull_witness"] = q
            if stop_on_nonfull:
                out["all_meet_diagonal"] = None
                out["nonmeet_witness"] = None
                return out
        joint = ideal.copy()
        for row in ring.diagonal.rows:
            joint.add(list(row))
        if ideal.dim + ddim - joint.dim == 0 and out["all_meet_diagonal"]:
            out["all_meet_diagonal"] = False
            out["nonmeet_witness"] = q
    return out


def exhaustive_ideal_scan(ring, cap=14, stop_on_nonfull=False):
    """Walk every nonzero quotient vector, close its two-sided ideal, and
    record whether all such ideals are the whole ring and whether all of
    them meet the diagonal.  This is the oracle; it needs a finite field
    and a dimension under the cap."""
    c = ring.carrier
    if not c.is_finite:
        raise CapExceeded("exhaustive enumeration needs a finite carrier")
    if ring.qdim > cap:
        raise CapExceeded(
            f"quotient dimension {ring.qdim} exceeds the enumeration cap {cap}"
        )
    if c.n == 2:
        return _gf2_scan(ring, cap, stop_on_nonfull)
    return _generic_scan(ring, cap, stop_on_nonfull)


def is_simple(ring, mode="criterion", cap=14):
    """Simplicity of the quotient ring.

    criterion: no invariant ideal on the function side and the diagonal is
    its own centralizer.  bruteforce: exhaustive ideal enumeration (finite
    field, dimension-capped).  Returns (verdict, report dict).
    """
    if mode == "criterion":
        s_ok, s_wit = is_S_simple(ring.alg)
        m_ok, m_wit = is_diagonal_max_commutative(ring)
        verdict = s_ok and m_ok
        report = {
            "simple": verdict,
            "mode": "criterion",
            "s_simple": s_ok,
            "max_commutative": m_ok,
            "witness": None,
        }
        if not s_ok:
            report["witness"] = {
                "kind": "invariant_open_set",
                "open_set": ring.space.open_to_json(s_wit),
            }
        elif not m_ok:
            report["witness"] = {
                "kind": "commutant_outside_diagonal",
                "element": ring.lift(m_wit).to_json(),
            }
        return verdict, report
    if mode == "bruteforce":
        scan = exhaustive_ideal_scan(ring, cap=cap, stop_on_nonfull=True)
        verdict = scan["all_full"]
        report = {
            "simple": verdict,
            "mode": "bruteforce",
            "vectors": scan["count"],
            "witness": None,
        }
        if not verdict:
            report["witness"] = {
                "kind": "proper_ideal_generator",
                "element": ring.lift(scan["nonfull_witness"]).to_json(),
            }
        return verdict, report
    raise ValueError(f"unknown mode {mode!r}")
