"""Exact ground-ring arithmetic shared by every other module.

Elements live in the Laurent ring generated by a deformation parameter v
(quarter powers permitted), spectral variables z_1, z_2, ... and formal
Gauss symbols g(a) (half powers permitted) at a fixed modulus, subject to
the rewrite rules

    g(0) = -v,        g(a) * g(modulus - a) = v    for a not cong 0.

A monomial is keyed by (vq, zex, gex): vq is 4x the v exponent, zex a
sorted tuple of (variable index, exponent) pairs, gex the canonical Gauss
part.  Scaling exponents to integers (quarters for v, halves for g) keeps
keys hashable and arithmetic exact.
"""

from fractions import Fraction
import random

# default prime for modular identity testing, 2^61 - 1 (Mersenne, = 3 mod 4)
DEFAULT_PRIME = (1 << 61) - 1


def _as_quarters(e):
    # accept int or Fraction with denominator dividing 4
    f = Fraction(e)
    q = f * 4
    if q.denominator != 1:
        raise ValueError("v exponent must be a multiple of 1/4: %r" % (e,))
    return int(q)


def _as_halves(e):
    f = Fraction(e)
    h = f * 2
    if h.denominator != 1:
        raise ValueError("gauss exponent must be a multiple of 1/2: %r" % (e,))
    return int(h)


def gauss_normalize(exps, nq):
    """Canonical form of a product of Gauss symbols at the given modulus.

    exps maps integer indices to doubled exponents.  Returns a triple
    (sign, vq, gex): sign in {1,-1}, vq a quarter-scaled v exponent picked
    up from the rewrite rules, gex a sorted tuple of (index, doubled
    exponent) pairs with indices in (0, modulus), at most one index of
    each mirror pair {a, modulus-a} present, surviving exponents positive.

    Rules applied: indices reduce mod the modulus; g(0)^e = (-1)^e v^e
    (integer e only); for a mirror pair with exponents (s, t) the smaller
    moves into the v power and the larger index keeps |s - t|; the
    self-paired index (modulus even, a = modulus/2) reduces its exponent
    mod 2 in integer steps only -- g(modulus/2) is never rewritten to a
    half power of v.
    """
    if nq is None:
        raise ValueError("gauss symbols need a modulus")
    acc = {}
    for a, e2 in exps.items():
        if e2:
            r = a % nq
            acc[r] = acc.get(r, 0) + e2
    sign = 1
    vq = 0
    e2 = acc.pop(0, 0)
    if e2:
        if e2 % 2:
            raise ValueError("half exponent on gauss index 0")
        e = e2 // 2
        if e % 2:
            sign = -sign
        vq += 4 * e
    out = []
    for a in sorted(acc):
        b = nq - a
        if a == b:
            # self-paired index: g(a)^2 = v, integer steps
            k, r2 = divmod(acc[a], 4)
            vq += 4 * k
            if r2:
                out.append((a, r2))
            continue
        if a > b and b in acc:
            continue  # already handled from the smaller side
        lo, hi = (a, b) if a < b else (b, a)
        s2 = acc.get(lo, 0)
        t2 = acc.get(hi, 0)
        m2 = min(s2, t2)
        vq += 2 * m2
        if s2 > t2:
            out.append((lo, s2 - t2))
        elif t2 > s2:
            out.append((hi, t2 - s2))
    out.sort()
    return sign, vq, tuple(out)


class Scalar:
    """Sparse exact element of the v / z / Gauss ground ring.

    terms maps monomial keys to nonzero integer coefficients.  nq is the
    Gauss modulus, or None for elements that use no Gauss symbols.
    """

    __slots__ = ["terms", "nq"]

    def __init__(self, terms=None, nq=None):
        self.terms = dict(terms) if terms else {}
        self.nq = nq

    # -- construction helpers ------------------------------------------

    @staticmethod
    def from_int(n, nq=None):
        s = Scalar(nq=nq)
        if n:
            s.terms[(0, (), ())] = n
        return s

    def copy(self):
        return Scalar(self.terms, self.nq)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- ring structure ------------------------------------------------

    def _join_nq(self, other):
        if self.nq is None:
            return other.nq
        if other.nq is None or other.nq == self.nq:
            return self.nq
        raise ValueError("gauss modulus mismatch: %r vs %r" % (self.nq, other.nq))

    def __add__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        nq = self._join_nq(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            c2 = terms.get(k, 0) + c
            if c2:
                terms[k] = c2
            elif k in terms:
                del terms[k]
        return Scalar(terms, nq)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: -c for k, c in self.terms.items()}, self.nq)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        nq = self._join_nq(other)
        out = {}
        for (vq1, zex1, gex1), c1 in self.terms.items():
            z1 = dict(zex1)
            for (vq2, zex2, gex2), c2 in other.terms.items():
                coef = c1 * c2
                vq = vq1 + vq2
                if zex2:
                    z = dict(z1)
                    for i, e in zex2:
                        e2 = z.get(i, 0) + e
                        if e2:
                            z[i] = e2
                        elif i in z:
                            del z[i]
                    zex = tuple(sorted(z.items()))
                else:
                    zex = zex1
                if gex1 or gex2:
                    g = dict(gex1)
                    for a, e in gex2:
                        g[a] = g.get(a, 0) + e
                    sign, dvq, gex = gauss_normalize(g, nq)
                    coef *= sign
                    vq += dvq
                else:
                    gex = ()
                key = (vq, zex, gex)
                c = out.get(key, 0) + coef
                if c:
                    out[key] = c
                elif key in out:
                    del out[key]
        return Scalar(out, nq)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.from_int(1, self.nq)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def inverse(self):
        """Inverse of a monomial unit (single term, coefficient +-1)."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible here")
        (vq, zex, gex), c = next(iter(self.terms.items()))
        if c not in (1, -1):
            raise ValueError("unit coefficient must be +-1, got %r" % (c,))
        g = {a: -e for a, e in gex}
        sign, dvq, gex2 = gauss_normalize(g, self.nq) if g else (1, 0, ())
        key = (-vq + dvq, tuple((i, -e) for i, e in zex), gex2)
        return Scalar({key: c * sign}, self.nq)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # -- structure inspection ------------------------------------------

    def z_split(self):
        """Group terms by their z-exponent dict; yields (zex, sub-Scalar)."""
        groups = {}
        for (vq, zex, gex), c in self.terms.items():
            groups.setdefault(zex, {})[(vq, (), gex)] = c
        for zex in sorted(groups):
            yield zex, Scalar(groups[zex], self.nq)

    def z_indices(self):
        idx = set()
        for (_, zex, _) in self.terms:
            for i, _e in zex:
                idx.add(i)
        return idx

    def permute_z(self, perm):
        """Relabel z variables; perm maps old index -> new index."""
        out = {}
        for (vq, zex, gex), c in self.terms.items():
            zex2 = tuple(sorted((perm.get(i, i), e) for i, e in zex))
            key = (vq, zex2, gex)
            out[key] = out.get(key, 0) + c
        return Scalar({k: c for k, c in out.items() if c}, self.nq)

    def has_gauss(self):
        return any(gex for (_, _, gex) in self.terms)

    def assert_integral(self):
        """Raise unless all v powers are integers and g powers integral."""
        for (vq, _zex, gex) in self.terms:
            if vq % 4:
                raise AssertionError("quarter v power leaked: vq=%d" % vq)
            for a, e2 in gex:
                if e2 % 2:
                    raise AssertionError("half gauss power leaked: g(%d)^%d/2" % (a, e2))
        return self

    def degree_hint(self):
        """Crude total-degree bound used for failure-probability reports."""
        d = 0
        for (vq, zex, gex) in self.terms:
            t = abs(vq) + sum(abs(e) for _, e in zex) + sum(abs(e) for _, e in gex)
            d = max(d, t)
        return d

    # -- display / serialization ---------------------------------------

    def _term_str(self, key, coef):
        vq, zex, gex = key
        parts = []
        if coef == -1:
            lead = "-"
        elif coef == 1:
            lead = ""
        else:
            lead = str(coef) + "*"
        if vq:
            e = Fraction(vq, 4)
            parts.append("v" if e == 1 else "v^(%s)" % e)
        for i, e in zex:
            parts.append("z%d" % i if e == 1 else "z%d^%s" % (i, e))
        for a, e2 in gex:
            e = Fraction(e2, 2)
            parts.append("g(%d)" % a if e == 1 else "g(%d)^(%s)" % (a, e))
        if not parts:
            return str(coef)
        return lead + "*".join(parts)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [self._term_str(k, c) for k, c in sorted(self.terms.items())]
        s = bits[0]
        for b in bits[1:]:
            s += " - " + b[1:] if b.startswith("-") else " + " + b
        return s

    def to_json(self):
        terms = []
        for (vq, zex, gex), c in sorted(self.terms.items()):
            ve = Fraction(vq, 4)
            terms.append({
                "coef": c,
                "vexp": [ve.numerator, ve.denominator],
                "zexp": [[i, e] for i, e in zex],
                "gauss": [[a, Fraction(e2, 2).numerator, Fraction(e2, 2).denominator]
                          for a, e2 in gex],
            })
        return {"nq": self.nq, "terms": terms}

    @staticmethod
    def from_json(obj):
        s = Scalar(nq=obj.get("nq"))
        for t in obj["terms"]:
            vn, vd = t["vexp"]
            key = (_as_quarters(Fraction(vn, vd)),
                   tuple(sorted((int(i), int(e)) for i, e in t["zexp"])),
                   tuple(sorted((int(a), _as_halves(Fraction(n, d)))
                                for a, n, d in t["gauss"])))
            c = s.terms.get(key, 0) + t["coef"]
            if c:
                s.terms[key] = c
            elif key in s.terms:
                del s.terms[key]
        return s


# -- convenience constructors -------------------------------------------

def integer(n, nq=None):
    return Scalar.from_int(n, nq)


def one(nq=None):
    return Scalar.from_int(1, nq)


def zero(nq=None):
    return Scalar(nq=nq)


def v_pow(e, nq=None):
    return Scalar({(_as_quarters(e), (), ()): 1}, nq)


def z_pow(i, e, nq=None):
    if e == 0:
        return one(nq)
    return Scalar({(0, ((i, e),), ()): 1}, nq)


def z_mono(vec, nq=None):
    """z^vec for an integer vector; vec[k] is the exponent of z_{k+1}."""
    zex = tuple((i + 1, e) for i, e in enumerate(vec) if e)
    return Scalar({(0, zex, ()): 1}, nq)


def gauss_pow(a, e, nq):
    e2 = _as_halves(e)
    if not e2:
        return one(nq)
    sign, vq, gex = gauss_normalize({a: e2}, nq)
    return Scalar({(vq, (), gex): sign}, nq)


def gauss(a, nq):
    return gauss_pow(a, 1, nq)


def gauss_eval(a, b, nq):
    """Two-argument Gauss symbol as a ring element.

    b <= -2 gives 0; b >= 0 gives (1 - v) when a is divisible by the
    modulus and 0 otherwise; b == -1 gives the formal one-argument symbol
    (with g(0) rewritten to -v).
    """
    if b <= -2:
        return zero(nq)
    if b >= 0:
        if a % nq == 0:
            return one(nq) - v_pow(1, nq)
        return zero(nq)
    return gauss(a, nq)


# -- fractions -----------------------------------------------------------

class Frac:
    """Quotient of two Scalars; no cancellation is attempted.

    Equality checks cross-multiply, so representatives never need a
    common form.  Addition keeps the denominator when both sides share
    it, which the vertex-weight tables are arranged to exploit.
    """

    __slots__ = ["num", "den"]

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = Scalar.from_int(num)
        if den is None:
            den = one(num.nq)
        elif isinstance(den, int):
            den = Scalar.from_int(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def lift(x):
        if isinstance(x, Frac):
            return x
        return Frac(x)

    def __add__(self, other):
        other = Frac.lift(other)
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-Frac.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Frac.lift(other)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Frac.lift(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero Frac")
        return Frac(self.num * other.den, self.den * other.num)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = Frac.lift(other)
        return frac_eq(self, other)

    __hash__ = None

    def permute_z(self, perm):
        return Frac(self.num.permute_z(perm), self.den.permute_z(perm))

    def degree_hint(self):
        return self.num.degree_hint() + self.den.degree_hint()

    def assert_integral(self):
        self.num.assert_integral()
        self.den.assert_integral()
        return self

    def __repr__(self):
        if self.den == one(self.den.nq):
            return repr(self.num)
        return "(%r) / (%r)" % (self.num, self.den)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(obj):
        return Frac(Scalar.from_json(obj["num"]), Scalar.from_json(obj["den"]))


def frac_eq(x, y):
    """Exact equality of two fractions by cross multiplication."""
    x = Frac.lift(x)
    y = Frac.lift(y)
    return x.num * y.den == y.num * x.den


# -- modular identity testing --------------------------------------------

class ModAssignment:
    """A random point for modular identity checks.

    Encodes v^(1/4) as a unit u, each z variable as a unit, and every
    Gauss symbol as a unit consistent with the rewrite rules: for a
    mirror pair a < modulus-a the half symbols satisfy
    g(a)^(1/2) = w and g(modulus-a)^(1/2) = u^2/w so the pair relation
    g(a)g(modulus-a) = u^4 = v holds exactly; g(0) = -u^4; the
    self-paired index (even modulus) gets sign * u^2 whose square is v.
    Half powers of g(0) or of the self-paired symbol have no consistent
    value and raise.
    """

    __slots__ = ["p", "nq", "u", "z", "ghalf", "gmid"]

    def __init__(self, p, nq, u, z, ghalf, gmid):
        self.p = p
        self.nq = nq
        self.u = u
        self.z = z
        self.ghalf = ghalf
        self.gmid = gmid

    def z_value(self, i):
        if i not in self.z:
            raise KeyError("no value assigned for z%d" % i)
        return self.z[i]


def make_assignment(nq, z_indices, seed, p=DEFAULT_PRIME):
    rng = random.Random(seed)
    unit = lambda: rng.randrange(1, p)
    u = unit()
    z = {i: unit() for i in z_indices}
    ghalf = {}
    gmid = None
    if nq:
        u2 = pow(u, 2, p)
        for a in range(1, nq):
            b = nq - a
            if a < b:
                w = unit()
                ghalf[a] = w
                ghalf[b] = (u2 * pow(w, p - 2, p)) % p
            elif a == b:
                sigma = rng.choice((1, -1))
                gmid = (sigma * u2) % p
    return ModAssignment(p, nq, u, z, ghalf, gmid)


def eval_scalar_mod(x, asg):
    """Evaluate a Scalar at a modular assignment point."""
    p = asg.p
    if x.nq is not None and asg.nq is not None and x.nq != asg.nq:
        raise ValueError("assignment modulus mismatch")
    total = 0
    for (vq, zex, gex), c in x.terms.items():
        val = c % p
        if vq:
            val = val * pow(asg.u, vq % (p - 1), p) % p
        for i, e in zex:
            val = val * pow(asg.z_value(i), e % (p - 1), p) % p
        for a, e2 in gex:
            if 2 * a == asg.nq:
                if e2 % 2:
                    raise ValueError("half power of the self-paired gauss symbol")
                val = val * pow(asg.gmid, (e2 // 2) % (p - 1), p) % p
            else:
                val = val * pow(asg.ghalf[a], e2 % (p - 1), p) % p
        total = (total + val) % p
    return total


def eval_frac_mod(x, asg):
    x = Frac.lift(x)
    num = eval_scalar_mod(x.num, asg)
    den = eval_scalar_mod(x.den, asg)
    if den == 0:
        raise ZeroDivisionError("denominator vanished at the sample point")
    return num * pow(den, asg.p - 2, asg.p) % asg.p
