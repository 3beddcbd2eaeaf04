"""Crossing (R-vertex) weights and the identities they satisfy.

Edges around a crossing carry decorated spins: (-1, 0) or (+1, c) with a
charge c in (0, nq].  A crossing between strand rows (i, j) has its
NW--SE diagonal on z_i and its SW--NE diagonal on z_j; every weight is a
fraction over the common denominator 1 - v (z_i/z_j)^nq.  The module
checks the two-row exchange identity (check_rtt) against a frozen table
of all 32 boundary spin patterns, the three-crossing braid identity
(check_rrr), inversion (check_unitarity), and the functional equation
that swapping two spectral variables induces on charged partition
functions (train_functional_equation).
"""

from itertools import product
import math
import random

from . import scalar as S
from .lattice import partition_function, reduce_charge, vertex_weight

MINUS = (-1, 0)


def plus(c, nq):
    """Decorated + spin carrying the residue of c in (0, nq]."""
    return (1, reduce_charge(c, nq))


def decorated_values(nq):
    """All nq + 1 decorated spins an edge can carry."""
    return [MINUS] + [(1, c) for c in range(1, nq + 1)]


def grid_vertex_weight(north, south, west, east, row, nq):
    """Weight of a grid vertex whose horizontal edges are decorated.

    north and south are bare spins, west and east are (spin, charge)
    pairs.  Returns zero whenever the decoration is malformed, the spin
    pattern is not one of the six vertex kinds, or the charges fail the
    counting rule (west charge = east charge + 1 on a + west edge, and a
    - edge only carries charge 0 mod nq)."""
    ws, wc = west
    es, ec = east
    if (ws == 1) != (0 < wc <= nq) or (es == 1) != (0 < ec <= nq):
        return S.zero(nq)
    east_res = ec % nq if es == 1 else 0
    if ws == 1:
        if wc != reduce_charge(east_res + 1, nq):
            return S.zero(nq)
    elif east_res:
        return S.zero(nq)
    return vertex_weight(north, south, ws, es, ec if es == 1 else 0, row, nq)


_R_MEMO = {}


def r_denominator(rows, nq):
    """1 - v (z_i/z_j)^nq, the denominator shared by every crossing
    weight at strand rows (i, j)."""
    i, j = rows
    return S.one(nq) - S.v_pow(1, nq) * S.z_pow(i, nq, nq) * S.z_pow(j, -nq, nq)


def r_weight(nw, sw, ne, se, rows, nq):
    """Crossing weight for decorated legs in field order NW, SW, NE, SE.

    rows = (i, j) fixes Z = (z_i/z_j)^nq with z_i on the NW--SE diagonal.
    The result is a Frac whose denominator is exactly 1 - vZ, so tables
    of crossing weights add along the fast same-denominator path."""
    key = (nw, sw, ne, se, rows, nq)
    hit = _R_MEMO.get(key)
    if hit is not None:
        return hit
    for spin, charge in (nw, sw, ne, se):
        if (spin == 1) != (0 < charge <= nq):
            val = S.Frac(S.zero(nq), S.one(nq))
            _R_MEMO[key] = val
            return val
    i, j = rows
    one = S.one(nq)
    v = S.v_pow(1, nq)
    big_z = S.z_pow(i, nq, nq) * S.z_pow(j, -nq, nq)
    den = one - v * big_z
    num = S.zero(nq)
    if nw[0] == 1 and sw[0] == 1:
        a, b = nw[1], sw[1]
        if a == b:
            if ne == nw and se == nw:
                num = big_z - v
        elif ne[0] == 1 and se[0] == 1:
            c, d = ne[1], se[1]
            if c == b and d == a:
                # charges ride their strands through the crossing
                num = S.gauss(a - b, nq) * (one - big_z)
            elif c == a and d == b:
                # charges stay on their side; larger residue on top wins Z
                num = (one - v) * big_z if a > b else one - v
    elif nw[0] == -1 and sw[0] == -1:
        if ne == MINUS and se == MINUS:
            num = den
    elif nw[0] == -1:
        if ne == sw and se == MINUS:
            num = v * (one - big_z)
        elif ne == MINUS and se == sw:
            num = one - v
    else:
        if ne == MINUS and se == nw:
            num = one - big_z
        elif ne == nw and se == MINUS:
            num = (one - v) * big_z
    val = S.Frac(num, den)
    _R_MEMO[key] = val
    return val


# -- two-row exchange identity ---------------------------------------------

def check_rtt(boundary, nq, rows=(1, 2)):
    """Exchange identity for one boundary condition.

    boundary = (sigma, tau, beta, theta, rho, alpha): decorated west legs
    sigma (bottom) and tau (top), bare top spin beta, decorated east legs
    theta (top) and rho (bottom), bare bottom spin alpha.  On the left
    side the crossing comes first (NW = tau, SW = sigma) and its SE leg
    feeds the row-i vertex; on the right side the rows come first and the
    crossing receives NE = theta, SE = rho.  Returns the per-state weight
    tables keyed by internal edges and the two side sums."""
    sigma, tau, beta, theta, rho, alpha = boundary
    i, j = rows
    lhs = {}
    for nu in decorated_values(nq):
        for mu in decorated_values(nq):
            rw = r_weight(tau, sigma, nu, mu, rows, nq)
            if rw.is_zero():
                continue
            for gam in (1, -1):
                wj = grid_vertex_weight(beta, gam, nu, theta, j, nq)
                if wj.is_zero():
                    continue
                wi = grid_vertex_weight(gam, alpha, mu, rho, i, nq)
                if wi.is_zero():
                    continue
                lhs[(nu, mu, gam)] = rw * wj * wi
    rhs = {}
    for phi in decorated_values(nq):
        for psi in decorated_values(nq):
            rw = r_weight(phi, psi, theta, rho, rows, nq)
            if rw.is_zero():
                continue
            for dlt in (1, -1):
                wi = grid_vertex_weight(beta, dlt, tau, phi, i, nq)
                if wi.is_zero():
                    continue
                wj = grid_vertex_weight(dlt, alpha, sigma, psi, j, nq)
                if wj.is_zero():
                    continue
                rhs[(phi, psi, dlt)] = rw * wi * wj
    lhs_sum = _table_sum(lhs, rows, nq)
    rhs_sum = _table_sum(rhs, rows, nq)
    return {
        "boundary": boundary,
        "rows": rows,
        "nq": nq,
        "lhs": lhs,
        "rhs": rhs,
        "lhs_sum": lhs_sum,
        "rhs_sum": rhs_sum,
        "equal": S.frac_eq(lhs_sum, rhs_sum),
    }


def _table_sum(table, rows, nq):
    total = S.Frac(S.zero(nq), r_denominator(rows, nq))
    for key in sorted(table):
        total = total + table[key]
    return total


def rtt_scan(nq, rows=(1, 2)):
    """check_rtt over every boundary 6-tuple; returns a summary report."""
    dv = decorated_values(nq)
    failures = []
    boundaries = 0
    inhabited = 0
    for sigma, tau, theta, rho in product(dv, dv, dv, dv):
        for beta, alpha in product((1, -1), (1, -1)):
            boundaries += 1
            res = check_rtt((sigma, tau, beta, theta, rho, alpha), nq, rows)
            if res["lhs"] or res["rhs"]:
                inhabited += 1
            if not res["equal"]:
                failures.append(res["boundary"])
    return {"nq": nq, "rows": rows, "boundaries": boundaries,
            "inhabited": inhabited, "failures": failures,
            "ok": not failures}


# -- three-crossing braid identity and inversion ---------------------------

def check_rrr(boundary, rows, nq):
    """Braid identity for three strands at rows (i, j, k).

    boundary = (alpha, beta, gamma, phi, eps, dlt): left legs bottom to
    top, then right legs bottom to top.  Both orders of resolving the
    three crossings must give the same sum."""
    alpha, beta, gamma, phi, eps, dlt = boundary
    i, j, k = rows
    dv = decorated_values(nq)
    lhs = S.Frac(S.zero(nq), S.one(nq))
    for x in dv:
        for y in dv:
            w1 = r_weight(beta, alpha, x, y, (j, k), nq)
            if w1.is_zero():
                continue
            for w in dv:
                w2 = r_weight(gamma, x, dlt, w, (i, k), nq)
                if w2.is_zero():
                    continue
                w3 = r_weight(w, y, eps, phi, (i, j), nq)
                if w3.is_zero():
                    continue
                lhs = lhs + w1 * w2 * w3
    rhs = S.Frac(S.zero(nq), S.one(nq))
    for x2 in dv:
        for y2 in dv:
            u1 = r_weight(gamma, beta, y2, x2, (i, j), nq)
            if u1.is_zero():
                continue
            for w2 in dv:
                u2 = r_weight(x2, alpha, w2, phi, (i, k), nq)
                if u2.is_zero():
                    continue
                u3 = r_weight(y2, w2, dlt, eps, (j, k), nq)
                if u3.is_zero():
                    continue
                rhs = rhs + u1 * u2 * u3
    return {"boundary": boundary, "rows": rows, "nq": nq,
            "lhs_sum": lhs, "rhs_sum": rhs,
            "equal": S.frac_eq(lhs, rhs)}


def check_unitarity(alpha, beta, gamma, dlt, rows, nq):
    """A crossing followed by its reverse acts as the identity:
    sum_{x,y} W_ij(beta, alpha -> x, y) W_ji(x, y -> dlt, gamma)
    equals [alpha = gamma][beta = dlt]."""
    i, j = rows
    dv = decorated_values(nq)
    total = S.Frac(S.zero(nq), S.one(nq))
    for x in dv:
        for y in dv:
            w1 = r_weight(beta, alpha, x, y, (i, j), nq)
            if w1.is_zero():
                continue
            w2 = r_weight(x, y, dlt, gamma, (j, i), nq)
            if w2.is_zero():
                continue
            total = total + w1 * w2
    expected = 1 if (alpha == gamma and beta == dlt) else 0
    return {"boundary": (alpha, beta, gamma, dlt), "rows": rows, "nq": nq,
            "lhs_sum": total, "rhs_sum": S.Frac(S.integer(expected, nq)),
            "equal": S.frac_eq(total, expected)}


# -- modular scans over all boundaries --------------------------------------

def _mod_r_index(rows, nq, asg):
    """Nonzero crossing weights mod p, indexed by the west pair."""
    dv = decorated_values(nq)
    index = {}
    for nw, sw, ne, se in product(dv, dv, dv, dv):
        w = r_weight(nw, sw, ne, se, rows, nq)
        if w.is_zero():
            continue
        index.setdefault((nw, sw), []).append(
            (ne, se, S.eval_frac_mod(w, asg)))
    return index


def _sz_log2_bound(nq, trials, factors, p=S.DEFAULT_PRIME):
    """log2 of the Schwartz-Zippel failure bound for `trials` independent
    points, with `factors` crossing weights multiplied per term."""
    deg = 0
    for rows in ((1, 2), (1, 3), (2, 3), (2, 1)):
        dv = decorated_values(nq)
        for nw, sw, ne, se in product(dv, dv, dv, dv):
            w = r_weight(nw, sw, ne, se, rows, nq)
            if not w.is_zero():
                deg = max(deg, w.degree_hint())
    # cross-multiplied identity degree: numerators and denominators of
    # `factors` fractions on each side
    total = 2 * factors * deg
    per_point = total / p
    return trials * math.log2(per_point) if per_point > 0 else float("-inf")


def rrr_scan(nq, trials=20, seed=20260815, p=S.DEFAULT_PRIME):
    """Braid identity over every boundary 6-tuple.

    Exact symbolic sums for nq = 1; for larger nq the identity is tested
    at `trials` random modular points and the report carries the
    Schwartz-Zippel failure bound."""
    dv = decorated_values(nq)
    rows = (1, 2, 3)
    if nq == 1:
        failures = []
        count = 0
        for bnd in product(dv, repeat=6):
            count += 1
            res = check_rrr(bnd, rows, nq)
            if not res["equal"]:
                failures.append(bnd)
        return {"nq": nq, "mode": "symbolic", "boundaries": count,
                "failures": failures, "ok": not failures}
    i, j, k = rows
    rng = random.Random(seed)
    failures = []
    count = 0
    for t in range(trials):
        asg = S.make_assignment(nq, (i, j, k), rng.randrange(1 << 62), p)
        t_jk = _mod_r_index((j, k), nq, asg)
        t_ik = _mod_r_index((i, k), nq, asg)
        t_ij = _mod_r_index((i, j), nq, asg)
        by_nwsw_ik = t_ik
        for bnd in product(dv, repeat=6):
            alpha, beta, gamma, phi, eps, dlt = bnd
            count += 1
            lhs = 0
            for x, y, w1 in t_jk.get((beta, alpha), ()):
                for d2, w, w2 in by_nwsw_ik.get((gamma, x), ()):
                    if d2 != dlt:
                        continue
                    for e2, f2, w3 in t_ij.get((w, y), ()):
                        if e2 == eps and f2 == phi:
                            lhs = (lhs + w1 * w2 * w3) % p
            rhs = 0
            for y2, x2, u1 in t_ij.get((gamma, beta), ()):
                for w2v, f2, u2 in by_nwsw_ik.get((x2, alpha), ()):
                    if f2 != phi:
                        continue
                    for d2, e2, u3 in t_jk.get((y2, w2v), ()):
                        if d2 == dlt and e2 == eps:
                            rhs = (rhs + u1 * u2 * u3) % p
            if lhs != rhs:
                failures.append((t, bnd))
    return {"nq": nq, "mode": "modular", "points": trials,
            "boundaries": count, "failures": failures, "ok": not failures,
            "sz_log2_bound": _sz_log2_bound(nq, trials, 3, p)}


def unitarity_scan(nq, trials=20, seed=20260815, p=S.DEFAULT_PRIME):
    """Inversion over every boundary 4-tuple; symbolic for nq = 1,
    modular otherwise."""
    dv = decorated_values(nq)
    if nq == 1:
        failures = []
        count = 0
        for alpha, beta, gamma, dlt in product(dv, repeat=4):
            count += 1
            res = check_unitarity(alpha, beta, gamma, dlt, (1, 2), nq)
            if not res["equal"]:
                failures.append((alpha, beta, gamma, dlt))
        return {"nq": nq, "mode": "symbolic", "boundaries": count,
                "failures": failures, "ok": not failures}
    rng = random.Random(seed)
    failures = []
    count = 0
    for t in range(trials):
        asg = S.make_assignment(nq, (1, 2), rng.randrange(1 << 62), p)
        fwd = _mod_r_index((1, 2), nq, asg)
        bwd = {}
        for nw, sw, ne, se in product(dv, dv, dv, dv):
            w = r_weight(nw, sw, ne, se, (2, 1), nq)
            if not w.is_zero():
                bwd[(nw, sw, ne, se)] = S.eval_frac_mod(w, asg)
        for alpha, beta, gamma, dlt in product(dv, repeat=4):
            count += 1
            total = 0
            for x, y, w1 in fwd.get((beta, alpha), ()):
                w2 = bwd.get((x, y, dlt, gamma))
                if w2 is not None:
                    total = (total + w1 * w2) % p
            want = 1 if (alpha == gamma and beta == dlt) else 0
            if total != want:
                failures.append((t, (alpha, beta, gamma, dlt)))
    return {"nq": nq, "mode": "modular", "points": trials,
            "boundaries": count, "failures": failures, "ok": not failures,
            "sz_log2_bound": _sz_log2_bound(nq, trials, 2, p)}


# -- scattering on the all-plus sector --------------------------------------

def scattering_matrix(i, nq):
    """Charge-exchange matrix M(i; z) on two + strands at rows (i, i+1).

    Entry [(a, b)][(c, d)] is the crossing weight taking bottom/top left
    charges (a, b) to bottom/top right charges (c, d)."""
    out = {}
    for a in range(1, nq + 1):
        for b in range(1, nq + 1):
            row = {}
            for c in range(1, nq + 1):
                for d in range(1, nq + 1):
                    w = r_weight((1, b), (1, a), (1, d), (1, c),
                                 (i, i + 1), nq)
                    if not w.is_zero():
                        row[(c, d)] = w
            out[(a, b)] = row
    return out


def check_scattering_involution(i, nq):
    """M(i; s_i z) M(i; z) is the identity on the all-plus sector."""
    mat = scattering_matrix(i, nq)
    swap = {i: i + 1, i + 1: i}
    failures = []
    keys = sorted(mat)
    for ab in keys:
        for cd in keys:
            total = S.Frac(S.zero(nq), S.one(nq))
            for ef, w1 in mat[ab].items():
                w2 = mat[ef].get(cd)
                if w2 is not None:
                    total = total + w1 * w2.permute_z(swap)
            want = 1 if ab == cd else 0
            if not S.frac_eq(total, want):
                failures.append((ab, cd))
    return {"i": i, "nq": nq, "failures": failures, "ok": not failures}


# -- frozen boundary tables for the exchange identity ------------------------

def _zi(t, nq):
    return S.z_pow(1, -nq, nq) if t % nq == 0 else S.one(nq)


def _zj(t, nq):
    return S.z_pow(2, -nq, nq) if t % nq == 0 else S.one(nq)


def _zz(nq):
    return S.z_pow(1, -nq, nq) * S.z_pow(2, -nq, nq)


def _big_z(nq):
    return S.z_pow(1, nq, nq) * S.z_pow(2, -nq, nq)


def _case01(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(nq):
        K, kk = reduce_charge(k + 1, nq), reduce_charge(k, nq)
        zz = _zz(nq) if k % nq == 0 else one
        num = zz * (Z - v)
        yield ((K, K, kk, kk),
               {((1, K), (1, K), 1): num},
               {((1, kk), (1, kk), 1): num})
    for k in range(nq):
        for l in range(nq):
            if k == l:
                continue
            K, L = reduce_charge(k + 1, nq), reduce_charge(l + 1, nq)
            kk, ll = reduce_charge(k, nq), reduce_charge(l, nq)
            lnum = (one - v) * _zi(l, nq) * _zj(k, nq) * (Z if K > L else one)
            rnum = (one - v) * _zi(k, nq) * _zj(l, nq) * (Z if kk > ll else one)
            yield ((L, K, kk, ll),
                   {((1, K), (1, L), 1): lnum},
                   {((1, kk), (1, ll), 1): rnum})
            num = S.gauss(l - k, nq) * _zi(l, nq) * _zj(k, nq) * (one - Z)
            yield ((K, L, kk, ll),
                   {((1, K), (1, L), 1): num},
                   {((1, ll), (1, kk), 1): num})


def _case03(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        yield ((K, None, None, k),
               {(MINUS, (1, K), 1): one - v},
               {(MINUS, (1, k), 1): one - v})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((1, None, None, nq),
           {(MINUS, (1, 1), 1): (one - v) * zi},
           {((1, nq), MINUS, -1): (one - v) * zi * (one - Z),
            (MINUS, (1, nq), 1): (one - v) * zj})


def _case04(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        yield ((K, None, k, None),
               {((1, K), MINUS, 1): v * (one - Z)},
               {(MINUS, (1, k), 1): v * (one - Z)})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((1, None, nq, None),
           {((1, 1), MINUS, 1): v * zj * (one - Z),
            (MINUS, (1, 1), -1): (one - v) * (one - v) * zj},
           {((1, nq), MINUS, -1): (one - v) * (one - v) * zi * Z,
            (MINUS, (1, nq), 1): v * zj * (one - Z)})


def _case05(nq):
    one, Z = S.one(nq), _big_z(nq)
    for k in range(nq):
        K, kk = reduce_charge(k + 1, nq), reduce_charge(k, nq)
        num = _zi(k, nq) * (one - Z)
        yield ((None, K, None, kk),
               {(MINUS, (1, K), 1): num},
               {((1, kk), MINUS, 1): num})


def _case06(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        yield ((None, K, k, None),
               {((1, K), MINUS, 1): (one - v) * Z},
               {((1, k), MINUS, 1): (one - v) * Z})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((None, 1, nq, None),
           {((1, 1), MINUS, 1): (one - v) * zj * Z,
            (MINUS, (1, 1), -1): (one - v) * zj * (one - Z)},
           {((1, nq), MINUS, 1): (one - v) * zi * Z})


def _case08(nq):
    den = S.one(nq) - S.v_pow(1, nq) * _big_z(nq)
    yield ((None, None, None, None),
           {(MINUS, MINUS, 1): den},
           {(MINUS, MINUS, 1): den})


def _case09(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        g = S.gauss(k, nq)
        yield ((1, K, None, k),
               {((1, 1), (1, K), 1): g * (one - Z)},
               {((1, k), MINUS, -1): g * (one - Z)})
        yield ((K, 1, None, k),
               {((1, 1), (1, K), 1): one - v},
               {(MINUS, (1, k), 1): one - v})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((1, 1, None, nq),
           {((1, 1), (1, 1), 1): zi * (Z - v)},
           {((1, nq), MINUS, -1): -v * zi * (one - Z),
            (MINUS, (1, nq), 1): (one - v) * zj})


def _case10(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        g = S.gauss(k, nq)
        yield ((1, K, k, None),
               {((1, K), (1, 1), -1): g * (one - v) * Z},
               {((1, k), MINUS, -1): g * (one - v) * Z})
        yield ((K, 1, k, None),
               {((1, K), (1, 1), -1): S.gauss(-k, nq) * g * (one - Z)},
               {(MINUS, (1, k), 1): v * (one - Z)})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((1, 1, nq, None),
           {((1, 1), (1, 1), -1): -v * zj * (Z - v)},
           {((1, nq), MINUS, -1): -v * (one - v) * zi * Z,
            (MINUS, (1, nq), 1): v * zj * (one - Z)})


def _case12(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    yield ((1, None, None, None),
           {((1, 1), MINUS, 1): v * (one - Z),
            (MINUS, (1, 1), -1): one - v},
           {(MINUS, MINUS, -1): one - v * Z})


def _case14(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    yield ((None, 1, None, None),
           {((1, 1), MINUS, 1): (one - v) * Z,
            (MINUS, (1, 1), -1): one - Z},
           {(MINUS, MINUS, 1): one - v * Z})


def _case19(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    zi, zj = _zi(0, nq), _zj(0, nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        g = S.gauss(k, nq)
        yield ((K, None, nq, k),
               {(MINUS, (1, K), -1): g * (one - v) * (one - v) * zj},
               {((1, nq), (1, k), -1): g * (one - v) * (one - v) * zi * Z})
        yield ((K, None, k, nq),
               {((1, K), MINUS, 1): v * (one - v) * zi * (one - Z)},
               {((1, nq), (1, k), -1):
                    g * S.gauss(-k, nq) * (one - v) * zi * (one - Z)})
    zz = _zz(nq)
    yield ((1, None, nq, nq),
           {(MINUS, (1, 1), -1): -v * (one - v) * (one - v) * zz,
            ((1, 1), MINUS, 1): v * (one - v) * zz * (one - Z)},
           {((1, nq), (1, nq), -1): -v * (one - v) * zz * (Z - v)})


def _case21(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    zi, zj = _zi(0, nq), _zj(0, nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        g = S.gauss(k, nq)
        yield ((None, K, k, nq),
               {((1, K), MINUS, 1): (one - v) * (one - v) * zi * Z},
               {((1, k), (1, nq), 1): (one - v) * (one - v) * zj})
        yield ((None, K, nq, k),
               {(MINUS, (1, K), -1): g * (one - v) * zj * (one - Z)},
               {((1, k), (1, nq), 1): g * (one - v) * zj * (one - Z)})
    zz = _zz(nq)
    yield ((None, 1, nq, nq),
           {(MINUS, (1, 1), -1): -v * (one - v) * zz * (one - Z),
            ((1, 1), MINUS, 1): (one - v) * (one - v) * zz * Z},
           {((1, nq), (1, nq), 1): (one - v) * zz * (Z - v)})


def _case23(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((None, None, None, nq),
           {(MINUS, MINUS, 1): (one - v) * zi * (one - v * Z)},
           {(MINUS, (1, nq), 1): (one - v) * (one - v) * zj,
            ((1, nq), MINUS, -1): (one - v) * zi * (one - Z)})


def _case24(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((None, None, nq, None),
           {(MINUS, MINUS, -1): (one - v) * zj * (one - v * Z)},
           {(MINUS, (1, nq), 1): v * (one - v) * zj * (one - Z),
            ((1, nq), MINUS, -1): (one - v) * (one - v) * zi * Z})


def _case25(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(nq):
        K, kk = reduce_charge(k + 1, nq), reduce_charge(k, nq)
        zz = _zz(nq) if k % nq == 0 else one
        g = S.gauss(k, nq)
        num = g * g * zz * (Z - v)
        yield ((K, K, kk, kk),
               {((1, K), (1, K), -1): num},
               {((1, kk), (1, kk), -1): num})
    for k in range(nq):
        for l in range(nq):
            if k == l:
                continue
            K, L = reduce_charge(k + 1, nq), reduce_charge(l + 1, nq)
            kk, ll = reduce_charge(k, nq), reduce_charge(l, nq)
            gg = S.gauss(k, nq) * S.gauss(l, nq)
            lnum = gg * (one - v) * _zi(k, nq) * _zj(l, nq) * \
                (Z if L > K else one)
            rnum = gg * (one - v) * _zj(k, nq) * _zi(l, nq) * \
                (Z if ll > kk else one)
            yield ((K, L, ll, kk),
                   {((1, L), (1, K), -1): lnum},
                   {((1, ll), (1, kk), -1): rnum})
            num = gg * S.gauss(l - k, nq) * _zj(k, nq) * _zi(l, nq) * (one - Z)
            yield ((K, L, kk, ll),
                   {((1, K), (1, L), -1): num},
                   {((1, ll), (1, kk), -1): num})


def _case27(nq):
    one, v = S.one(nq), S.v_pow(1, nq)
    Z = _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        num = S.gauss(k, nq) * (one - v)
        yield ((K, None, None, k),
               {(MINUS, (1, K), -1): num},
               {(MINUS, (1, k), -1): num})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((1, None, None, nq),
           {(MINUS, (1, 1), -1): -v * (one - v) * zi,
            ((1, 1), MINUS, 1): v * (one - v) * zi * (one - Z)},
           {(MINUS, (1, nq), -1): -v * (one - v) * zj})


def _case28(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(nq):
        K, kk = reduce_charge(k + 1, nq), reduce_charge(k, nq)
        num = v * S.gauss(k, nq) * _zj(k, nq) * (one - Z)
        yield ((K, None, kk, None),
               {((1, K), MINUS, -1): num},
               {(MINUS, (1, kk), -1): num})


def _case29(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        num = S.gauss(k, nq) * (one - Z)
        yield ((None, K, None, k),
               {(MINUS, (1, K), -1): num},
               {((1, k), MINUS, -1): num})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((None, 1, None, nq),
           {(MINUS, (1, 1), -1): -v * zi * (one - Z),
            ((1, 1), MINUS, 1): (one - v) * (one - v) * zi * Z},
           {((1, nq), MINUS, -1): -v * zi * (one - Z),
            (MINUS, (1, nq), 1): (one - v) * (one - v) * zj})


def _case30(nq):
    one, v, Z = S.one(nq), S.v_pow(1, nq), _big_z(nq)
    for k in range(1, nq):
        K = reduce_charge(k + 1, nq)
        num = S.gauss(k, nq) * (one - v) * Z
        yield ((None, K, k, None),
               {((1, K), MINUS, -1): num},
               {((1, k), MINUS, -1): num})
    zi, zj = _zi(0, nq), _zj(0, nq)
    yield ((None, 1, nq, None),
           {((1, 1), MINUS, -1): -v * (one - v) * zj * Z},
           {((1, nq), MINUS, -1): -v * (one - v) * zi * Z,
            (MINUS, (1, nq), 1): v * (one - v) * zj * (one - Z)})


def _case32(nq):
    den = S.one(nq) - S.v_pow(1, nq) * _big_z(nq)
    yield ((None, None, None, None),
           {(MINUS, MINUS, -1): den},
           {(MINUS, MINUS, -1): den})


def _empty(nq):
    return iter(())


# (label, (sigma, tau, beta, theta, rho, alpha) spins, table builder)
APPENDIX_CASES = [
    ("1", (1, 1, 1, 1, 1, 1), _case01),
    ("2", (1, 1, 1, -1, -1, 1), _empty),
    ("3", (1, -1, 1, -1, 1, 1), _case03),
    ("4", (1, -1, 1, 1, -1, 1), _case04),
    ("5", (-1, 1, 1, -1, 1, 1), _case05),
    ("6", (-1, 1, 1, 1, -1, 1), _case06),
    ("7", (-1, -1, 1, 1, 1, 1), _empty),
    ("8", (-1, -1, 1, -1, -1, 1), _case08),
    ("9", (1, 1, -1, -1, 1, 1), _case09),
    ("10", (1, 1, -1, 1, -1, 1), _case10),
    ("11", (1, -1, -1, 1, 1, 1), _empty),
    ("12", (1, -1, -1, -1, -1, 1), _case12),
    ("13", (-1, 1, -1, 1, 1, 1), _empty),
    ("14", (-1, 1, -1, -1, -1, 1), _case14),
    ("15", (-1, -1, -1, -1, 1, 1), _empty),
    ("16", (-1, -1, -1, 1, -1, 1), _empty),
    ("17", (1, 1, 1, -1, 1, -1), _empty),
    ("18", (1, 1, 1, 1, -1, -1), _empty),
    ("19", (1, -1, 1, 1, 1, -1), _case19),
    ("20", (1, -1, 1, -1, -1, -1), _empty),
    ("21", (-1, 1, 1, 1, 1, -1), _case21),
    ("22", (-1, 1, 1, -1, -1, -1), _empty),
    ("23", (-1, -1, 1, -1, 1, -1), _case23),
    ("24", (-1, -1, 1, 1, -1, -1), _case24),
    ("25", (1, 1, -1, 1, 1, -1), _case25),
    ("26", (1, 1, -1, -1, -1, -1), _empty),
    ("27", (1, -1, -1, -1, 1, -1), _case27),
    ("28", (1, -1, -1, 1, -1, -1), _case28),
    ("29", (-1, 1, -1, -1, 1, -1), _case29),
    ("30", (-1, 1, -1, 1, -1, -1), _case30),
    ("31", (-1, -1, -1, 1, 1, -1), _empty),
    ("32", (-1, -1, -1, -1, -1, -1), _case32),
]


def _decorate(spin, charge):
    return (1, charge) if spin == 1 else MINUS


def appendix_regression(nq):
    """Exchange-identity regression over all 32 boundary spin patterns.

    For every charge instantiation of every pattern the per-state weight
    tables must reproduce the frozen numerators over the common
    denominator 1 - v (z_1/z_2)^nq, boundaries not covered by a frozen
    row must produce empty tables, and both side sums must agree."""
    den = r_denominator((1, 2), nq)
    case_reports = []
    mismatches = []
    total_instances = 0
    total_states = 0
    for label, spins, builder in APPENDIX_CASES:
        golden = {}
        for charges, lhs, rhs in builder(nq):
            if charges in golden:
                raise AssertionError(
                    "case %s: duplicate charge row %r" % (label, charges))
            golden[charges] = (lhs, rhs)
        sigma_s, tau_s, beta, theta_s, rho_s, alpha = spins
        ranges = [range(1, nq + 1) if s == 1 else (None,)
                  for s in (sigma_s, tau_s, theta_s, rho_s)]
        case_states = 0
        case_instances = 0
        seen = set()
        for a, b, c, d in product(*ranges):
            case_instances += 1
            boundary = (_decorate(sigma_s, a), _decorate(tau_s, b), beta,
                        _decorate(theta_s, c), _decorate(rho_s, d), alpha)
            res = check_rtt(boundary, nq)
            if (a, b, c, d) in golden:
                seen.add((a, b, c, d))
            want_lhs, want_rhs = golden.get((a, b, c, d), ({}, {}))
            for side, got, want in (("lhs", res["lhs"], want_lhs),
                                    ("rhs", res["rhs"], want_rhs)):
                if sorted(got) != sorted(want):
                    mismatches.append((label, (a, b, c, d), side, "keys",
                                       sorted(got), sorted(want)))
                    continue
                for key, frac in got.items():
                    if not (frac.den == den and frac.num == want[key]):
                        mismatches.append((label, (a, b, c, d), side, key,
                                           frac, want[key]))
            if not res["equal"]:
                mismatches.append((label, (a, b, c, d), "sums",
                                   res["lhs_sum"], res["rhs_sum"]))
            case_states += len(res["lhs"]) + len(res["rhs"])
        if len(seen) != len(golden):
            mismatches.append((label, "uncovered rows",
                               sorted(set(golden) - seen)))
        total_instances += case_instances
        total_states += case_states
        case_reports.append({"case": label, "instances": case_instances,
                             "frozen_rows": len(golden),
                             "states": case_states})
    return {"nq": nq, "cases": case_reports, "instances": total_instances,
            "states": total_states, "mismatches": mismatches,
            "ok": not mismatches}


# -- spectral-swap functional equation ---------------------------------------

def train_functional_equation(lam, c, i, system):
    """Functional equation tying Z at swapped spectral variables to Z at
    the original ones.

    Z(S_{lam, s_i z}; c) equals the keep-weight times Z(S_lam; c) plus,
    when c_i and c_{i+1} differ, the swap-weight times Z(S_lam; s_i c);
    both crossing weights sit at rows (i, i+1).  c is the left-boundary
    charge vector, bottom to top, entries in (0, nq]."""
    nq = system.nq
    if tuple(lam) != system.lam:
        raise ValueError("partition %r does not match the system" % (lam,))
    if not 1 <= i <= system.r - 1:
        raise ValueError("reflection index out of range: %d" % i)
    c = tuple(reduce_charge(x, nq) for x in c)
    z_c = partition_function(system, charges=c)
    swap = {i: i + 1, i + 1: i}
    lhs = S.Frac.lift(z_c.permute_z(swap))
    ci, cj = c[i - 1], c[i]
    if ci == cj:
        keep = r_weight((1, cj), (1, ci), (1, cj), (1, ci), (i, i + 1), nq)
        rhs = keep * z_c
        swap_weight = None
    else:
        keep = r_weight((1, cj), (1, ci), (1, cj), (1, ci), (i, i + 1), nq)
        swap_weight = r_weight((1, cj), (1, ci), (1, ci), (1, cj),
                               (i, i + 1), nq)
        sc = list(c)
        sc[i - 1], sc[i] = sc[i], sc[i - 1]
        rhs = keep * z_c + swap_weight * partition_function(
            system, charges=tuple(sc))
    return {"lambda": system.lam, "nq": nq, "charges": c, "i": i,
            "keep": keep, "swap": swap_weight,
            "lhs": lhs, "rhs": rhs, "equal": S.frac_eq(lhs, rhs)}
