"""Charged six-vertex grid systems.

Boundary conditions come from a partition: on an r x N grid with columns
labeled N-1 .. 0 left to right, the top vertical edges at columns
(lambda + rho)_i carry - spins (rho = (r-1, ..., 1, 0)), the bottom and
left edges are +, the right edges are -.  Horizontal edges carry a charge
(the number of + horizontal spins at or to the right in the same row) and
a state is admissible for modulus nq when every - horizontal edge has
charge divisible by nq.  Rows are indexed bottom to top by z_1 .. z_r.
"""

from functools import lru_cache

from . import scalar as S


# vertex patterns keyed (north, south, west, east), spins +-1
VERTEX_TYPES = {
    (1, 1, 1, 1): "a1",
    (-1, -1, -1, -1): "a2",
    (-1, -1, 1, 1): "b1",
    (1, 1, -1, -1): "b2",
    (1, -1, -1, 1): "c1",
    (-1, 1, 1, -1): "c2",
}


def reduce_charge(c, nq):
    """Residue of c in the window (0, nq]; multiples of nq map to nq."""
    return (c - 1) % nq + 1


def vertex_weight(north, south, west, east, east_charge, row, nq):
    """Weight of one grid vertex; east_charge is the unreduced charge on
    the east edge and row is the 1-based z index of the vertex's row."""
    kind = VERTEX_TYPES.get((north, south, west, east))
    if kind is None:
        return S.zero(nq)
    divisible = east_charge % nq == 0
    if kind == "a1":
        return S.z_pow(row, -nq, nq) if divisible else S.one(nq)
    if kind == "a2" or kind == "b2" or kind == "c2":
        return S.one(nq)
    if kind == "b1":
        g = S.gauss(east_charge, nq)
        return g * S.z_pow(row, -nq, nq) if divisible else g
    # c1
    return (S.one(nq) - S.v_pow(1, nq)) * S.z_pow(row, -nq, nq)


class System:
    """Grid shape, boundary data and modulus; states are built from it."""

    __slots__ = ["r", "N", "nq", "lam", "top_minus", "left_charges"]

    def __init__(self, lam, r, N, nq, left_charges=None):
        lam = tuple(lam)
        if r is None:
            r = len(lam)
        if len(lam) != r:
            raise ValueError("partition length %d does not match r=%d" % (len(lam), r))
        if any(a < 0 for a in lam) or any(lam[i] < lam[i + 1] for i in range(r - 1)):
            raise ValueError("lambda must be weakly decreasing and nonnegative")
        if N is None:
            N = (lam[0] if lam else 0) + r
        if N < (lam[0] if lam else 0) + r:
            raise ValueError("need N >= lambda_1 + r, got N=%d" % N)
        if nq < 1:
            raise ValueError("modulus must be a positive integer")
        self.lam = lam
        self.r = r
        self.N = N
        self.nq = nq
        self.top_minus = frozenset(lam[i] + r - 1 - i for i in range(r))
        if left_charges is not None:
            left_charges = tuple(left_charges)
            if len(left_charges) != r or any(not 0 < c <= nq for c in left_charges):
                raise ValueError("left charges must be r residues in (0, nq]")
        self.left_charges = left_charges


def boundary_from_partition(lam, r=None, N=None, nq=1, left_charges=None):
    return System(lam, r, N, nq, left_charges)


class IceState:
    """One admissible filling of the grid.

    vertical[k][j] is the spin of the vertical edge between row k and
    row k+1 (k = 0 is the bottom boundary, k = r the top), j = 0 at the
    left.  horizontal[i][j] is the spin of horizontal edge j in row i+1
    (i = 0 is the bottom row), j = 0 the left boundary edge, j = N the
    right boundary edge.
    """

    __slots__ = ["vertical", "horizontal", "r", "N"]

    def __init__(self, vertical, horizontal):
        self.vertical = tuple(tuple(row) for row in vertical)
        self.horizontal = tuple(tuple(row) for row in horizontal)
        self.r = len(horizontal)
        self.N = len(vertical[0])

    def charge_grid(self):
        """Unreduced charge of every horizontal edge, same indexing as
        horizontal; entry j counts + spins at or to the right of edge j."""
        rows = []
        for hrow in self.horizontal:
            ch = [0] * (self.N + 1)
            acc = 0
            for j in range(self.N, -1, -1):
                if hrow[j] == 1:
                    acc += 1
                ch[j] = acc
            rows.append(tuple(ch))
        return tuple(rows)

    def left_charges(self, nq=None):
        """Per-row left-boundary charges, bottom to top; reduced into
        (0, nq] when a modulus is given."""
        raw = tuple(row[0] for row in self.charge_grid())
        if nq is None:
            return raw
        return tuple(reduce_charge(c, nq) for c in raw)

    def vertex_kind(self, i, j):
        return VERTEX_TYPES[(self.vertical[i + 1][j], self.vertical[i][j],
                             self.horizontal[i][j], self.horizontal[i][j + 1])]

    def is_admissible(self, nq):
        charges = self.charge_grid()
        for i in range(self.r):
            for j in range(self.N + 1):
                if self.horizontal[i][j] == -1 and charges[i][j] % nq:
                    return False
        return True

    def sort_key(self):
        return self.vertical

    def __eq__(self, other):
        return (isinstance(other, IceState)
                and self.vertical == other.vertical
                and self.horizontal == other.horizontal)

    __hash__ = None

    def to_json(self, nq=None):
        obj = {
            "vertical": [list(row) for row in self.vertical],
            "horizontal": [list(row) for row in self.horizontal],
            "charges": [list(row) for row in self.charge_grid()],
            "vertex_kinds": [[self.vertex_kind(i, j) for j in range(self.N)]
                             for i in range(self.r)],
        }
        if nq is not None:
            obj["left_charges"] = list(self.left_charges(nq))
            obj["weight"] = boltzmann_weight(self, nq).to_json()
        return obj


def boltzmann_weight(state, nq):
    """Product of the per-vertex weights over the whole grid."""
    charges = state.charge_grid()
    w = S.one(nq)
    for i in range(state.r):
        vrow_n = state.vertical[i + 1]
        vrow_s = state.vertical[i]
        hrow = state.horizontal[i]
        crow = charges[i]
        for j in range(state.N):
            w = w * vertex_weight(vrow_n[j], vrow_s[j], hrow[j], hrow[j + 1],
                                  crow[j + 1], i + 1, nq)
    return w


def _row_completions(north, bottom_row, nq, N):
    """All legal (south spins, horizontal row) fillings under a fixed row
    of north spins.  Walks right to left so each new horizontal edge's
    charge is already determined, pruning - edges with charge not
    divisible by nq and rows whose left edge is not +."""
    results = []

    def step(j, east, echarge, south, hedges):
        if j < 0:
            if east == 1:
                results.append((tuple(south), tuple(hedges) + (-1,)))
            return
        n_ = north[j]
        if n_ == 1 and east == 1:
            cands = ((1, 1), (-1, -1))     # a1, c1
        elif n_ == -1 and east == 1:
            cands = ((-1, 1),)              # b1
        elif n_ == 1 and east == -1:
            cands = ((1, -1),)              # b2
        else:
            cands = ((-1, -1), (1, 1))      # a2, c2
        for s_, w_ in cands:
            if bottom_row and s_ != 1:
                continue
            if w_ == -1 and echarge % nq:
                continue
            step(j - 1, w_, echarge + (1 if w_ == 1 else 0),
                 (s_,) + south, (w_,) + hedges)

    step(N - 1, -1, 0, (), ())
    return results


@lru_cache(maxsize=None)
def _enumerate(lam, r, N, nq):
    top = tuple(-1 if (N - 1 - j) in {lam[i] + r - 1 - i for i in range(r)} else 1
                for j in range(N))
    states = []

    def rec(vrows, hrows):
        depth = len(hrows)
        if depth == r:
            vertical = tuple(reversed(vrows))
            horizontal = tuple(reversed(hrows))
            states.append(IceState(vertical, horizontal))
            return
        for south, hrow in _row_completions(vrows[-1], depth == r - 1, nq, N):
            rec(vrows + (south,), hrows + (hrow,))

    rec((top,), ())
    states.sort(key=IceState.sort_key)
    return tuple(states)


def enumerate_states(system):
    """All nq-admissible states with the system's boundary, in a fixed
    lexicographic order on vertical spins; filtered by the system's left
    charge classes when present."""
    states = _enumerate(system.lam, system.r, system.N, system.nq)
    if system.left_charges is None:
        return list(states)
    want = tuple(system.left_charges)
    return [s for s in states if s.left_charges(system.nq) == want]


def partition_function(system, charges=None):
    """Z(S; c): sum of state weights over the boundary's states, filtered
    to the left-charge class c (entries in (0, nq]) when given."""
    nq = system.nq
    if charges is None:
        charges = system.left_charges
    total = S.zero(nq)
    for state in _enumerate(system.lam, system.r, system.N, nq):
        if charges is not None and state.left_charges(nq) != tuple(charges):
            continue
        total = total + boltzmann_weight(state, nq)
    return total


def partition_by_class(system):
    """Map from reduced left-charge vectors to their class partition
    functions; keys cover exactly the inhabited classes."""
    nq = system.nq
    out = {}
    for state in _enumerate(system.lam, system.r, system.N, nq):
        c = state.left_charges(nq)
        out[c] = out.get(c, S.zero(nq)) + boltzmann_weight(state, nq)
    return out
