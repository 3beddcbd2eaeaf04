"""Triangular-array state models matching the charged grid systems.

States carry three equivalent forms: a map m from positive roots (i, j),
1 <= i < j <= r, to nonnegative integers, a strict interleaved triangular
array whose top row is lambda + rho, and a grid filling from the lattice
module.  Each form carries the same weight data, and the class pieces of
the generating sum reproduce the grid partition functions per left-edge
charge class after a fixed monomial normalization.
"""

from . import scalar as S
from . import lattice as L
from . import metaplectic as MP


def _root_order(r):
    return [(i, j) for i in range(1, r) for j in range(i + 1, r + 1)]


def _long_word(r):
    # fixed reduced word (r, r-1, r, ..., 1, 2, ..., r)
    word = []
    for start in range(r, 0, -1):
        word.extend(range(start, r + 1))
    return tuple(word)


def _check_partition(lam, r):
    lam = tuple(lam)
    if r < 1:
        raise ValueError("rank must be a positive integer")
    if len(lam) != r:
        raise ValueError("partition length %d does not match r=%d" % (len(lam), r))
    if any(a < 0 for a in lam) or any(lam[i] < lam[i + 1] for i in range(r - 1)):
        raise ValueError("lambda must be weakly decreasing and nonnegative")
    return lam


class CrystalNode:
    """Nonnegative integer on every positive root (i, j), i < j <= r,
    listed against the fixed reduced word."""

    __slots__ = ["r", "m"]

    def __init__(self, r, m):
        if r < 1:
            raise ValueError("rank must be a positive integer")
        m = dict(m)
        if set(m) != set(_root_order(r)):
            raise ValueError("m must assign exactly the roots (i, j), 1 <= i < j <= %d" % r)
        if any(v < 0 for v in m.values()):
            raise ValueError("root values must be nonnegative")
        self.r = r
        self.m = m

    def vector(self):
        return tuple(self.m[ij] for ij in _root_order(self.r))

    def z_exponent(self):
        """Exponent vector of the node monomial: root (i, j) adds its
        value to slot i and subtracts it from slot j; entries sum to 0."""
        p = [0] * self.r
        for (i, j), m in self.m.items():
            p[i - 1] += m
            p[j - 1] -= m
        return tuple(p)

    def __eq__(self, other):
        return (isinstance(other, CrystalNode)
                and self.r == other.r and self.m == other.m)

    __hash__ = None

    def __repr__(self):
        return "CrystalNode(%d, %r)" % (self.r, self.m)

    def to_json(self):
        return {"longWord": list(_long_word(self.r)),
                "m": [[i, j, self.m[(i, j)]] for i, j in _root_order(self.r)]}


class GTPattern:
    """Triangular array, rows 0..r-1; row k holds a_{k,l} for l = k..r-1
    and interleaves with the row above: a_{k-1,l} <= a_{k,l} <= a_{k-1,l-1}.
    Strict patterns also decrease strictly within every row."""

    __slots__ = ["r", "rows"]

    def __init__(self, rows, strict=True):
        rows = tuple(tuple(row) for row in rows)
        r = len(rows)
        if r < 1:
            raise ValueError("pattern needs at least one row")
        for k, row in enumerate(rows):
            if len(row) != r - k:
                raise ValueError("row %d must have %d entries" % (k, r - k))
        for k in range(1, r):
            for t in range(r - k):
                below = rows[k][t]
                if not rows[k - 1][t + 1] <= below <= rows[k - 1][t]:
                    raise ValueError("rows %d and %d do not interleave" % (k - 1, k))
        if strict and not _rows_strict(rows):
            raise ValueError("pattern rows must strictly decrease")
        self.r = r
        self.rows = rows

    def entry(self, k, l):
        return self.rows[k][l - k]

    def is_strict(self):
        return _rows_strict(self.rows)

    def __eq__(self, other):
        return isinstance(other, GTPattern) and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return "GTPattern(%r)" % (self.rows,)

    def to_json(self):
        return [list(row) for row in self.rows]


def _rows_strict(rows):
    return all(row[t] > row[t + 1] for row in rows for t in range(len(row) - 1))


class Decoration:
    """Per-root flags: circled when the root value is zero, boxed when
    the membership bound is tight."""

    __slots__ = ["circled", "boxed"]

    def __init__(self, circled, boxed):
        self.circled = bool(circled)
        self.boxed = bool(boxed)

    def __eq__(self, other):
        return (isinstance(other, Decoration)
                and self.circled == other.circled and self.boxed == other.boxed)

    __hash__ = None

    def __repr__(self):
        return "Decoration(circled=%r, boxed=%r)" % (self.circled, self.boxed)

    def to_json(self):
        return {"circled": self.circled, "boxed": self.boxed}


def _row_fills(diff, j_lo, r, below_suffix):
    """All value tuples for one root row (i, j_lo) .. (i, r): every tail
    sum from position j stays within diff + 1 + below_suffix[j + 1], and
    within diff + below_suffix[j] for j > j_lo (row strictness)."""
    fills = []

    def rec(j, tail, acc):
        if j < j_lo:
            fills.append(tuple(acc))
            return
        cap = diff + 1 + below_suffix[j + 1] - tail
        if j > j_lo:
            cap = min(cap, diff + below_suffix[j] - tail)
        for m in range(cap + 1):
            rec(j - 1, tail + m, (m,) + acc)

    rec(r, 0, ())
    return fills


def crystal_enumerate(lam, r):
    """All root assignments whose triangular array is strict, filled
    bottom row up since each row's bound reads the row below; sorted by
    value vector in root order.  Dropping the strictness bound admits
    extra assignments, but each of those carries a boxed-and-circled
    root, so the generating sum is unchanged."""
    lam = _check_partition(lam, r)
    nodes = []

    def build(i, below, acc):
        if i == 0:
            nodes.append(CrystalNode(r, acc))
            return
        suffix = [0] * (r + 2)
        for t in range(r, i + 1, -1):
            suffix[t] = suffix[t + 1] + below[t - (i + 2)]
        diff = lam[r - i - 1] - lam[r - i]
        for fill in _row_fills(diff, i + 1, r, suffix):
            row = dict(acc)
            for j in range(i + 1, r + 1):
                row[(i, j)] = fill[j - (i + 1)]
            build(i - 1, fill, row)

    build(r - 1, (), {})
    nodes.sort(key=CrystalNode.vector)
    return nodes


def root_data(node, lam):
    """Per-root (column sum, slack, Decoration); slack is the membership
    bound minus the tail sum minus one, so boxed means slack == -1 and
    slack < -1 is not a member."""
    r = node.r
    lam = _check_partition(lam, r)
    out = {}
    for (i, j) in _root_order(r):
        col = sum(node.m[(k, j)] for k in range(1, i + 1))
        diff = lam[r - i - 1] - lam[r - i]
        upper = sum(node.m[(i + 1, k)] for k in range(j + 1, r + 1)) if i + 1 < r else 0
        tail = sum(node.m[(i, k)] for k in range(j, r + 1))
        slack = diff + upper - tail
        if slack < -1:
            raise ValueError("membership bound fails at root %r" % ((i, j),))
        out[(i, j)] = (col, slack, Decoration(node.m[(i, j)] == 0, slack == -1))
    return out


def node_weight(node, lam, nq):
    """Product over roots: boxed and circled kills the node, circled
    alone contributes 1, otherwise the two-argument Gauss symbol at
    (column sum, slack)."""
    data = root_data(node, lam)
    w = S.one(nq)
    for ij in _root_order(node.r):
        col, slack, dec = data[ij]
        if dec.circled and dec.boxed:
            return S.zero(nq)
        if not dec.circled:
            w = w * S.gauss_eval(col, slack, nq)
        if w.is_zero():
            return w
    return w


def i_lambda(lam, r, nq):
    """Generating sum over all nodes of weight times node monomial."""
    lam = _check_partition(lam, r)
    total = S.zero(nq)
    for node in crystal_enumerate(lam, r):
        w = node_weight(node, lam, nq)
        if w.is_zero():
            continue
        total = total + w * S.z_mono(node.z_exponent(), nq)
    return total


def _z_vector(zex, r):
    vec = [0] * r
    for i, e in zex:
        if i > r:
            raise ValueError("monomial uses z_%d beyond rank %d" % (i, r))
        vec[i - 1] = e
    return vec


def coset_piece(I, gamma, lam, cosets):
    """Sub-sum of I over monomials with z exponent in gamma - w0(lam) +
    the coset lattice; exponents must sum to zero (trace-free support)."""
    r = cosets.params.r
    lam = _check_partition(lam, r)
    gamma = tuple(gamma)
    if len(gamma) != r:
        raise ValueError("gamma must have %d entries" % r)
    w0lam = tuple(reversed(lam))
    keep = {}
    for key, coeff in I.terms.items():
        vec = _z_vector(key[1], r)
        if sum(vec) != 0:
            raise ValueError("monomial exponent %r has nonzero sum" % (vec,))
        if cosets.contains([vec[t] - gamma[t] + w0lam[t] for t in range(r)]):
            keep[key] = coeff
    return S.Scalar(keep, I.nq)


def node_to_gt(node, lam):
    """Stack lambda + rho on top and add each root value below its
    slot: a_{k,l} = a_{k-1,l} + m_{r-l, r-k+1}; the constructor rejects
    assignments outside membership."""
    r = node.r
    lam = _check_partition(lam, r)
    rows = [tuple(lam[t] + (r - 1 - t) for t in range(r))]
    for k in range(1, r):
        prev = rows[k - 1]
        rows.append(tuple(prev[l - (k - 1)] + node.m[(r - l, r - k + 1)]
                          for l in range(k, r)))
    return GTPattern(rows)


def gt_to_node(pattern):
    """Row differences read back as root values:
    m_{i,j} = a_{r-j+1, r-i} - a_{r-j, r-i}."""
    r = pattern.r
    m = {}
    for (i, j) in _root_order(r):
        m[(i, j)] = pattern.entry(r - j + 1, r - i) - pattern.entry(r - j, r - i)
    return CrystalNode(r, m)


def _lam_from_top(pattern):
    r = pattern.r
    lam = tuple(pattern.rows[0][t] - (r - 1 - t) for t in range(r))
    return _check_partition(lam, r)


def ice_to_gt(state):
    """Column labels with - spin on each band of vertical edges, top
    band first; the bottom boundary must be all +."""
    r, N = state.r, state.N
    if any(s == -1 for s in state.vertical[0]):
        raise ValueError("bottom boundary must carry + spins")
    rows = []
    for k in range(r):
        band = state.vertical[r - k]
        rows.append(tuple(N - 1 - j for j in range(N) if band[j] == -1))
    return GTPattern(rows)


def gt_to_ice(pattern, N=None):
    """Grid filling with - vertical spins at the pattern's column labels,
    horizontal spins propagated right to left from the - right boundary."""
    r = pattern.r
    if not pattern.is_strict():
        raise ValueError("pattern rows must strictly decrease")
    if N is None:
        N = pattern.entry(0, 0) + 1
    if N < pattern.entry(0, 0) + 1:
        raise ValueError("need N > the top row maximum")
    if pattern.rows[r - 1][0] < 0:
        raise ValueError("column labels must be nonnegative")
    vertical = [[1] * N for _ in range(r + 1)]
    for k in range(r):
        for label in pattern.rows[k]:
            vertical[r - k][N - 1 - label] = -1
    horizontal = []
    for i in range(r):
        row = [0] * (N + 1)
        row[N] = -1
        for j in range(N - 1, -1, -1):
            north, south, east = vertical[i + 1][j], vertical[i][j], row[j + 1]
            if north == south:
                row[j] = east
            elif east != (1 if north == 1 else -1):
                raise ValueError("spins do not propagate in row %d" % (i + 1,))
            else:
                row[j] = -east
        if row[0] != 1:
            raise ValueError("left boundary must close with a + spin")
        horizontal.append(tuple(row))
    return L.IceState(vertical, horizontal)


def gt_bijections(x, lam=None, N=None):
    """All three forms of one state, keyed node / pattern / ice; a node
    input needs the partition to fix the top row."""
    if isinstance(x, CrystalNode):
        if lam is None:
            raise ValueError("a node input needs lam to fix the top row")
        pattern = node_to_gt(x, lam)
        return {"node": x, "pattern": pattern, "ice": gt_to_ice(pattern, N)}
    if isinstance(x, GTPattern):
        _lam_from_top(x)
        return {"node": gt_to_node(x), "pattern": x, "ice": gt_to_ice(x, N)}
    if isinstance(x, L.IceState):
        pattern = ice_to_gt(x)
        _lam_from_top(pattern)
        return {"node": gt_to_node(pattern), "pattern": pattern, "ice": x}
    raise ValueError("expected a CrystalNode, GTPattern or IceState")


def gt_weight(pattern, nq):
    """Product over below-top entries of the four-way factor: equal to
    the upper right gives 1, equal to the upper left gives the formal
    symbol g(e), strict on both sides gives g(e, 0), equal on both
    sides kills the pattern; e is the tail row-difference sum."""
    r = pattern.r
    total = S.one(nq)
    for i in range(1, r):
        for j in range(i, r):
            e = sum(pattern.entry(i, k) - pattern.entry(i - 1, k) for k in range(j, r))
            left_eq = pattern.entry(i - 1, j - 1) == pattern.entry(i, j)
            right_eq = pattern.entry(i, j) == pattern.entry(i - 1, j)
            if left_eq and right_eq:
                return S.zero(nq)
            if right_eq:
                pass
            elif left_eq:
                total = total * S.gauss_eval(e, -1, nq)
            else:
                total = total * S.gauss_eval(e, 0, nq)
            if total.is_zero():
                return total
    return total


def charge_from_gt(pattern, N):
    """Unreduced left-edge charges, bottom grid row first:
    c'_i = N - a_{r-i,r-i} + sum_{j>r-i} (a_{r-i+1,j} - a_{r-i,j})."""
    r = pattern.r
    if N < pattern.entry(0, 0) + 1:
        raise ValueError("need N > the top row maximum")
    out = []
    for i in range(1, r + 1):
        k = r - i
        c = N - pattern.entry(k, k)
        for j in range(k + 1, r):
            c += pattern.entry(k + 1, j) - pattern.entry(k, j)
        out.append(c)
    return tuple(out)


def verify_thm82(lam, r, N, params):
    """Charge-class partition functions against normalized class pieces.

    For each coset class with a nonzero piece, the charge vector is read
    off a support exponent: all exponents of one piece share a residue
    class mod nq because trace-free coset-lattice vectors have every
    entry divisible by nq.  The grid partition function at that charge
    vector must equal z^{-N + w0(rho) + c} z^{w0(lam)} times the piece.
    """
    lam = _check_partition(lam, r)
    if params.r != r:
        raise ValueError("cover rank %d does not match r=%d" % (params.r, r))
    nq = params.nq
    cosets = MP.lattice_and_cosets(params)
    ilam = i_lambda(lam, r, nq)
    system = L.System(lam, r, N, nq)
    w0rho = range(r)
    w0lam = tuple(reversed(lam))
    checks = []
    skipped = 0
    for gamma in cosets.gamma:
        piece = coset_piece(ilam, gamma, lam, cosets)
        if piece.is_zero():
            skipped += 1
            continue
        support = sorted(_z_vector(key[1], r) for key in piece.terms)
        base = support[0]
        for vec in support:
            if any((vec[t] - base[t]) % nq for t in range(r)):
                raise AssertionError("coset piece mixes charge classes")
        aligned = [base[t] + w0lam[t] for t in range(r)]
        if not cosets.contains([aligned[t] - gamma[t] for t in range(r)]):
            raise AssertionError("support exponent left its coset class")
        c = tuple(L.reduce_charge(N - aligned[t] - w0rho[t], nq) for t in range(r))
        lhs = L.partition_function(system, c)
        rhs = S.z_mono([c[t] - N + w0rho[t] + w0lam[t] for t in range(r)], nq) * piece
        entry = {"gamma": list(gamma), "c": list(c), "ok": lhs == rhs}
        if not entry["ok"]:
            entry["lhs"] = lhs.to_json()
            entry["rhs"] = rhs.to_json()
        checks.append(entry)
    return {"lambda": list(lam), "r": r, "N": N, "params": params.to_json(),
            "nq": nq, "checks": checks, "skipped": skipped,
            "ok": all(ch["ok"] for ch in checks)}
