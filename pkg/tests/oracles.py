"""Independent brute-force oracles used to cross-check the package.

Everything here is deliberately written in a different shape from the
package code (literal tables, direct enumeration, no shared helpers
beyond the modular assignment point), so that agreement is evidence and
not tautology.
"""

import itertools


# -- raw Gauss-symbol evaluation (periodicity only, no rewriting) --------

def eval_gauss_raw(exps, asg):
    """Evaluate a raw product of Gauss symbols at an assignment point.

    exps maps arbitrary integer indices to doubled exponents.  Applies
    only the definitional periodicity (index mod modulus); the rewrite
    rules are NOT used, so comparing against the normalized form tests
    the normalizer.  Indices congruent to 0 or to modulus/2 must carry
    even doubled exponents here.
    """
    p = asg.p
    nq = asg.nq
    val = 1
    for a, e2 in exps.items():
        r = a % nq
        if r == 0:
            assert e2 % 2 == 0
            g0 = (-pow(asg.u, 4, p)) % p
            val = val * pow(g0, (e2 // 2) % (p - 1), p) % p
        elif 2 * r == nq:
            assert e2 % 2 == 0
            val = val * pow(asg.gmid, (e2 // 2) % (p - 1), p) % p
        else:
            val = val * pow(asg.ghalf[r], e2 % (p - 1), p) % p
    return val


# -- strict interleaving triangular patterns -----------------------------

def enumerate_strict_patterns(top):
    """All strict triangular arrays with the given strictly decreasing
    top row, where each lower entry lies between its upper-right and
    upper-left neighbours (weakly) and rows strictly decrease."""
    top = tuple(top)
    assert all(top[i] > top[i + 1] for i in range(len(top) - 1))

    def extend(rows):
        prev = rows[-1]
        if len(prev) == 1:
            yield tuple(rows)
            return
        # next row entry j sits in [prev[j+1], prev[j]]
        ranges = [range(prev[j + 1], prev[j] + 1) for j in range(len(prev) - 1)]
        for cand in itertools.product(*ranges):
            if all(cand[i] > cand[i + 1] for i in range(len(cand) - 1)):
                yield from extend(rows + [list(cand)])

    return [tuple(tuple(row) for row in pat) for pat in extend([list(top)])]


# -- residue-key coset scan ----------------------------------------------

def bform_matrix(r, b, c):
    """Gram matrix with diagonal c and off-diagonal c - b."""
    return [[c if i == j else c - b for j in range(r)] for i in range(r)]


def coset_scan(n, b, c, r):
    """Brute-force coset data for the kernel of x -> Bx mod n.

    Returns (key_of, classes): key_of(x) is the defining residue tuple,
    classes maps each distinct key to the list of box vectors in
    [0,n)^r carrying it.  Two integer vectors are congruent mod the
    kernel lattice iff their keys agree.
    """
    B = bform_matrix(r, b, c)

    def key_of(x):
        return tuple(sum(B[i][j] * x[j] for j in range(r)) % n for i in range(r))

    classes = {}
    for x in itertools.product(range(n), repeat=r):
        classes.setdefault(key_of(x), []).append(x)
    return key_of, classes


# -- literal six-vertex weight walk ---------------------------------------

def vertex_weight_oracle(north, south, west, east, east_charge, row, nq, S):
    """Independently coded per-vertex weight lookup.

    Spins are +1/-1 for vertical (north, south) and for the sign part of
    the horizontal edges; east_charge is the charge on the east edge.
    S is the scalar module (passed in to avoid an import cycle in the
    oracle file).  Returns a Scalar or None when the configuration is
    not one of the six admissible patterns.
    """
    a = east_charge
    div = (a % nq == 0)
    pat = (north, south, west, east)
    if pat == (1, 1, 1, 1):
        return S.z_pow(row, -nq, nq) if div else S.one(nq)
    if pat == (-1, -1, -1, -1):
        return S.one(nq)
    if pat == (-1, -1, 1, 1):
        g = S.gauss(a, nq)
        return g * S.z_pow(row, -nq, nq) if div else g
    if pat == (1, 1, -1, -1):
        return S.one(nq)
    if pat == (1, -1, -1, 1):
        return (S.one(nq) - S.v_pow(1, nq)) * S.z_pow(row, -nq, nq)
    if pat == (-1, 1, 1, -1):
        return S.one(nq)
    return None


def brute_force_states(r, N, top_minus_columns, nq):
    """Enumerate admissible grid states by raw search over all edges.

    Returns a list of (vertical, horizontal) matrices in the same layout
    the lattice module uses: vertical[k][j] for boundaries k = 0..r
    (bottom row of vertical edges first), horizontal[i][j] for rows
    i = 1..r stored at index i-1, entries left-to-right j = 0..N.
    Only feasible for small r*N.
    """
    # vertical edge spins: rows of boundaries, bottom (all +) to top
    # horizontal: per row, N+1 edges, left + and right -
    columns = list(range(N - 1, -1, -1))  # labels, left to right
    top = [(-1 if lbl in top_minus_columns else 1) for lbl in columns]
    bottom = [1] * N
    states = []
    inner_v = r - 1
    for v_bits in itertools.product((1, -1), repeat=inner_v * N):
        vertical = [bottom]
        for k in range(inner_v):
            vertical.append(list(v_bits[k * N:(k + 1) * N]))
        vertical.append(top)
        for h_bits in itertools.product((1, -1), repeat=r * (N - 1)):
            horizontal = []
            ok = True
            for i in range(r):
                row = [1] + list(h_bits[i * (N - 1):(i + 1) * (N - 1)]) + [-1]
                horizontal.append(row)
            # vertex conservation: number of + in (N,E) equals in (S,W)
            for i in range(1, r + 1):
                for j in range(N):
                    n_ = vertical[i][j]
                    s_ = vertical[i - 1][j]
                    w_ = horizontal[i - 1][j]
                    e_ = horizontal[i - 1][j + 1]
                    if (n_ == s_) != (w_ == e_):
                        ok = False
                        break
                    if n_ != s_ and n_ == w_:
                        # the two six-vertex c-patterns force N=E, S=W
                        # when N != S; N == W is the excluded pair
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            # charges: minus horizontal edges need charge divisible by nq
            adm = True
            for i in range(r):
                charge = 0
                charges = [0] * (N + 1)
                for j in range(N, -1, -1):
                    if j < N and horizontal[i][j + 1] == 1:
                        charge += 1
                    # charge of edge j counts + spins at or right of it
                    charges[j] = charge + (1 if horizontal[i][j] == 1 else 0)
                for j in range(N + 1):
                    if horizontal[i][j] == -1 and charges[j] % nq != 0:
                        adm = False
                        break
                if not adm:
                    break
            if adm:
                states.append((vertical, horizontal))
    return states
