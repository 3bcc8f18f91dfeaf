"""Exact arithmetic over the rationals.

Rationals are ``fractions.Fraction``.  Univariate polynomials are dense
ascending coefficient lists; multivariate polynomials in the fixed
variables (u, v, a) are sparse dicts keyed by packed exponents.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy

from .errors import ImproperAtInfinity, NonRationalRoot

try:
    import flint
except ImportError:  # pure-Python fallback
    flint = None

# above this degree, gcd and division go through FLINT when it is available
_FLINT_DEGREE = 3

__all__ = [
    "Fraction", "to_rat", "rat_str", "rat_parse",
    "UniPoly", "RatFunc", "MultiPoly", "MultiRatFunc",
    "poly_shift", "poly_reflect", "rational_roots", "series_at_infinity",
    "mrf_equal", "mpoly_gcd", "VARS",
    "poly_to_json", "poly_from_json", "ratfunc_to_json", "ratfunc_from_json",
    "mpoly_to_json", "mpoly_from_json", "mrf_to_json", "mrf_from_json",
]


def to_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return rat_parse(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def rat_str(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def rat_parse(s):
    s = str(s).strip()
    if "." in s or "e" in s.lower():
        raise ValueError("not an exact rational: %r" % s)
    return Fraction(s)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense polynomial in u with rational coefficients (ascending order)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots):
        cs = [Fraction(1)]
        for r in roots:
            r = to_rat(r)
            new = [Fraction(0)] * (len(cs) + 1)
            for k, c in enumerate(cs):
                new[k + 1] += c
                new[k] -= r * c
            cs = new
        return cls._raw(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __repr__(self):
        return "UniPoly(%s)" % [rat_str(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("u" if k == 1 else "u^%d" % k)
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = rat_str(abs(c)) + "*" + mono
            else:
                body = rat_str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] += c
        return UniPoly._raw(cs)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        if flint is not None and len(a) > _FLINT_DEGREE and len(b) > _FLINT_DEGREE:
            return _from_flint(_to_flint(self) * _to_flint(other))
        cs = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                cs[i + j] += x * y
        return UniPoly._raw(cs)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if flint is not None and self.degree > _FLINT_DEGREE and other.degree > 0:
            q, r = divmod(_to_flint(self), _to_flint(other))
            return _from_flint(q), _from_flint(r)
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return UniPoly(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            t = c / lcb
            quo[k - db] = t
            for j, bc in enumerate(other.coeffs):
                rem[k - db + j] -= t * bc
        return UniPoly._raw(quo), UniPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other):
        return other.divmod(self)[1].is_zero()

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return UniPoly._raw([c / lc for c in self.coeffs])

    def derivative(self):
        return UniPoly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, a, b):
        """Return P(a*u + b)."""
        a, b = to_rat(a), to_rat(b)
        lin = UniPoly._raw([b, a])
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def gcd(self, other):
        if (flint is not None and min(self.degree, other.degree) > 0
                and max(self.degree, other.degree) > _FLINT_DEGREE):
            return _from_flint(_to_flint(self).gcd(_to_flint(other))).monic()
        a, b = self, other.monic()
        while not b.is_zero():
            # monic remainders keep the rational coefficients small
            a, b = b, a.divmod(b)[1].monic()
        return a.monic()


def _to_flint(P):
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in P.coeffs])


def _from_flint(F):
    return UniPoly._raw([Fraction(int(c.p), int(c.q)) for c in F.coeffs()])


def poly_shift(P, c):
    """Q(x) = P(x + c)."""
    return P.compose_linear(1, c)


def poly_reflect(P, l):
    """Q(x) = (-1)^deg P * P(-x + l)."""
    Q = P.compose_linear(-1, l)
    if P.degree % 2 == 1:
        Q = -Q
    return Q


# ---------------------------------------------------------------------------
# rational roots


def _int_primitive(P):
    """Scale P to a primitive integer coefficient list (ascending)."""
    den = 1
    for c in P.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in P.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_eval(cs, p, q):
    d = len(cs) - 1
    total = 0
    for k, c in enumerate(cs):
        total += c * p ** k * q ** (d - k)
    return total


def _int_deflate(cs, p, q):
    """Divide the integer polynomial cs by (q*u - p); exact by Gauss."""
    d = len(cs) - 1
    out = [0] * d
    rem = cs[d]
    out[d - 1] = rem // q
    for k in range(d - 1, 0, -1):
        carry = cs[k] + p * out[k]
        out[k - 1] = carry // q
    g = 0
    for c in out:
        g = gcd(g, c)
    out = [c // g for c in out]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _convergents(x, qmax):
    fr = Fraction(x)
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    n, d = fr.numerator, fr.denominator
    while d:
        a = n // d
        n, d = d, n - a * d
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > qmax:
            break
        yield h1, k1


def _numeric_roots(cs, precise):
    desc = list(reversed(cs))
    if not precise:
        try:
            scale = max(abs(c) for c in desc)
            vals = numpy.roots([c / scale for c in desc])
            return [complex(z) for z in vals]
        except (OverflowError, numpy.linalg.LinAlgError):
            pass
    import mpmath
    with mpmath.workdps(80):
        try:
            vals = mpmath.polyroots(desc, maxsteps=400, extraprec=400)
        except mpmath.libmp.NoConvergence:
            return []
        return [complex(z) for z in vals]


def _squarefree_rational_roots(cs):
    """Rational roots of a squarefree primitive integer polynomial."""
    found = []
    while len(cs) > 1:
        d = len(cs) - 1
        if d == 1:
            p, q = -cs[0], cs[1]
            found.append(Fraction(p, q))
            break
        if d == 2:
            c, b, a = cs
            disc = b * b - 4 * a * c
            if disc < 0 or isqrt(disc) ** 2 != disc:
                break
            s = isqrt(disc)
            found.append(Fraction(-b + s, 2 * a))
            found.append(Fraction(-b - s, 2 * a))
            break
        lead, const = cs[-1], cs[0]
        hit = None
        for precise in (False, True):
            for z in _numeric_roots(cs, precise):
                for p, q in _convergents(z.real, abs(lead)):
                    if lead % q or (p and const % p):
                        continue
                    if _int_eval(cs, p, q) == 0:
                        hit = (p, q)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        p, q = hit
        if q < 0:
            p, q = -p, -q
        found.append(Fraction(p, q))
        cs = _int_deflate(cs, p, q)
    return found


def _squarefree_parts(P):
    """Yun's algorithm: list of (factor, multiplicity) with monic factors."""
    P = P.monic()
    dP = P.derivative()
    b = P.gcd(dP)
    c = P.exact_div(b)
    d = dP.exact_div(b) - c.derivative()
    out = []
    i = 1
    while c.degree > 0:
        a = c.gcd(d)
        if a.degree > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        i += 1
    return out


def rational_roots(P):
    """Sorted list of all roots with multiplicity; P must split over Q."""
    if P.is_zero():
        raise ValueError("zero polynomial has no finite root multiset")
    roots = []
    cs = list(P.coeffs)
    k = 0
    while cs[k] == 0:
        k += 1
    roots.extend([Fraction(0)] * k)
    Q = UniPoly._raw(cs[k:])
    if Q.degree > 0:
        for F, mult in _squarefree_parts(Q):
            ints = _int_primitive(F)
            rs = _squarefree_rational_roots(ints)
            if len(rs) != F.degree:
                raise NonRationalRoot("polynomial %s does not split over Q" % P)
            roots.extend(rs * mult)
    return sorted(roots)


# ---------------------------------------------------------------------------
# univariate rational functions


class RatFunc:
    """Reduced fraction num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num)
        if den is None:
            den = UniPoly.const(1)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = UniPoly.const(1)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                num = UniPoly._raw([c / lc for c in num.coeffs])
                den = UniPoly._raw([c / lc for c in den.coeffs])
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(UniPoly.const(c), _reduced=True)

    @classmethod
    def u(cls):
        return cls(UniPoly.x(), _reduced=True)

    @classmethod
    def from_roots(cls, num_roots, den_roots, scale=1):
        return cls(UniPoly.from_roots(num_roots) * to_rat(scale),
                   UniPoly.from_roots(den_roots))

    def __repr__(self):
        return "RatFunc(%s, %s)" % (self.num, self.den)

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other, _reduced=True)
        return RatFunc.const(to_rat(other))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc.const(1) / (self ** (-k))
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at %s" % x)
        return self.num(x) / d

    def compose_linear(self, a, b):
        """Return f(a*u + b)."""
        return RatFunc(self.num.compose_linear(a, b),
                       self.den.compose_linear(a, b))

    def shift(self, c):
        return self.compose_linear(1, c)

    def reflect(self, c):
        """Return f(c - u)."""
        return self.compose_linear(-1, c)

    def is_proper(self):
        return self.num.degree <= self.den.degree

    def value_at_infinity(self):
        if not self.is_proper():
            raise ImproperAtInfinity("degree of numerator exceeds denominator")
        if self.num.is_zero() or self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.lc() / self.den.lc()

    def leading_coefficient(self):
        """Ratio of leading coefficients of numerator and denominator."""
        return self.num.lc() / self.den.lc()


def series_at_infinity(f, k):
    """First k coefficients of f in powers of u^-1, starting at u^0."""
    if not isinstance(f, RatFunc):
        f = RatFunc(f) if isinstance(f, UniPoly) else RatFunc.const(f)
    if not f.is_proper():
        raise ImproperAtInfinity("rational function is not proper at infinity")
    if f.num.is_zero():
        return [Fraction(0)] * k
    dn, dd = f.num.degree, f.den.degree
    nrev = list(reversed(f.num.coeffs))
    drev = list(reversed(f.den.coeffs))
    lag = dd - dn
    out = []
    # power series quotient nrev/drev, then shift by lag
    quo = []
    for j in range(k):
        c = nrev[j] if j < len(nrev) else Fraction(0)
        for i in range(1, min(j, len(drev) - 1) + 1):
            c -= drev[i] * quo[j - i]
        quo.append(c / drev[0])
    for j in range(k):
        out.append(quo[j - lag] if j >= lag else Fraction(0))
    return out


# ---------------------------------------------------------------------------
# multivariate polynomials in (u, v, a)

VARS = ("u", "v", "a")
_BITS = 20
_MASK = (1 << _BITS) - 1
_SHIFTS = (2 * _BITS, _BITS, 0)


def _pack(eu, ev, ea):
    return (eu << _SHIFTS[0]) | (ev << _SHIFTS[1]) | ea


def _unpack(key):
    return ((key >> _SHIFTS[0]) & _MASK, (key >> _SHIFTS[1]) & _MASK, key & _MASK)


def _grlex(key):
    e = _unpack(key)
    return (e[0] + e[1] + e[2], e[0], e[1], e[2])


def _var_index(var):
    if isinstance(var, int):
        return var
    return VARS.index(var)


class MultiPoly:
    """Sparse polynomial over Q in the variables u, v, a.

    Coefficients may be ints or Fractions; both compare and hash alike.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if isinstance(k, tuple):
                    k = _pack(*k)
                if c != 0:
                    self.terms[k] = c

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c):
        c = to_rat(c)
        return cls._raw({0: c} if c != 0 else {})

    @classmethod
    def var(cls, name):
        i = _var_index(name)
        e = [0, 0, 0]
        e[i] = 1
        return cls._raw({_pack(*e): 1})

    @classmethod
    def from_unipoly(cls, P, var="u"):
        i = _var_index(var)
        terms = {}
        for k, c in enumerate(P.coeffs):
            if c != 0:
                e = [0, 0, 0]
                e[i] = k
                terms[_pack(*e)] = c
        return cls._raw(terms)

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        return Fraction(self.terms.get(0, 0))

    def items(self):
        """Terms as ((e_u, e_v, e_a), Fraction) in descending graded-lex order."""
        keys = sorted(self.terms, key=_grlex, reverse=True)
        return [(_unpack(k), Fraction(self.terms[k])) for k in keys]

    def leading_key(self):
        return max(self.terms, key=_grlex)

    def leading_coeff(self):
        return Fraction(self.terms[self.leading_key()])

    def __repr__(self):
        return "MultiPoly(%s)" % str(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                (VARS[i] if e[i] == 1 else "%s^%d" % (VARS[i], e[i]))
                for i in range(3) if e[i])
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = rat_str(abs(c)) + "*" + mono
            else:
                body = rat_str(abs(c))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += " %s %s" % (s, b)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, Fraction(c)) for k, c in self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, UniPoly):
            return MultiPoly.from_unipoly(other)
        return MultiPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, MultiRatFunc):
            return NotImplemented
        other = self._coerce(other)
        out = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return MultiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        if c == 0:
            return MultiPoly()
        return MultiPoly._raw({k: v * c for k, v in self.terms.items()})

    def __pow__(self, k):
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def degree_in(self, var):
        i = _var_index(var)
        sh = _SHIFTS[i]
        return max(((k >> sh) & _MASK for k in self.terms), default=-1)

    def total_degree(self):
        return max((sum(_unpack(k)) for k in self.terms), default=-1)

    def variables(self):
        present = set()
        for k in self.terms:
            e = _unpack(k)
            for i in range(3):
                if e[i]:
                    present.add(i)
        return present

    def subs(self, mapping):
        """Simultaneous substitution {var: MultiPoly or scalar}."""
        repl = {}
        for var, val in mapping.items():
            repl[_var_index(var)] = self._coerce(val)
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = repl[i] ** e
            return cache[key]

        out = MultiPoly()
        acc = {}
        for key, c in self.terms.items():
            e = list(_unpack(key))
            term = MultiPoly._raw({0: c})
            keep = [0, 0, 0]
            for i in range(3):
                if e[i] and i in repl:
                    term = term * power(i, e[i])
                else:
                    keep[i] = e[i]
            kk = _pack(*keep)
            if kk:
                term = MultiPoly._raw({k + kk: v for k, v in term.terms.items()})
            for k, v in term.terms.items():
                acc[k] = acc.get(k, 0) + v
        out = MultiPoly._raw({k: v for k, v in acc.items() if v})
        return out

    def evaluate(self, point):
        """Evaluate at {var: rational}; missing variables stay symbolic."""
        return self.subs(point)

    def to_unipoly(self, var="u"):
        i = _var_index(var)
        if self.variables() - {i}:
            raise ValueError("polynomial involves more than one variable")
        sh = _SHIFTS[i]
        deg = self.degree_in(i)
        cs = [Fraction(0)] * (deg + 1)
        for k, c in self.terms.items():
            cs[(k >> sh) & _MASK] = Fraction(c)
        return UniPoly(cs)

    def exact_div(self, other):
        """Multivariate exact division; raises ArithmeticError if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_const():
            c = Fraction(other.terms[0])
            return MultiPoly._raw({k: v / c for k, v in self.terms.items()})
        lk = other.leading_key()
        lc = Fraction(other.terms[lk])
        le = _unpack(lk)
        rem = dict(self.terms)
        quo = {}
        while rem:
            k = max(rem, key=_grlex)
            e = _unpack(k)
            if e[0] < le[0] or e[1] < le[1] or e[2] < le[2]:
                raise ArithmeticError("multivariate division is not exact")
            t = Fraction(rem[k]) / lc
            dk = k - lk
            quo[dk] = t
            for k2, c2 in other.terms.items():
                kk = k2 + dk
                s = rem.get(kk, 0) - t * c2
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
        return MultiPoly._raw(quo)

    def normalized(self):
        """Scale so that the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return MultiPoly._raw({k: Fraction(v) / lc for k, v in self.terms.items()})

    def integerized(self):
        """Return (scale, poly) with integer coefficients and poly = scale*self."""
        den = 1
        for c in self.terms.values():
            d = Fraction(c).denominator
            den = den * d // gcd(den, d)
        return den, MultiPoly._raw({k: int(Fraction(c) * den) for k, c in self.terms.items()})


def _coeffs_in(p, i):
    """Split p as a polynomial in variable i: {degree: MultiPoly free of i}."""
    sh = _SHIFTS[i]
    out = {}
    for k, c in p.terms.items():
        e = (k >> sh) & _MASK
        rest = k - (e << sh)
        out.setdefault(e, {})[rest] = c
    return {e: MultiPoly._raw(t) for e, t in out.items()}


def _from_coeffs(cs, i):
    sh = _SHIFTS[i]
    terms = {}
    for e, poly in cs.items():
        for k, c in poly.terms.items():
            terms[k + (e << sh)] = c
    return MultiPoly._raw(terms)


def _content(p, i):
    g = None
    for c in _coeffs_in(p, i).values():
        g = c if g is None else _mpoly_gcd(g, c)
        if g.is_const():
            return MultiPoly.const(1)
    return g


def _prem(A, B, i):
    db = B.degree_in(i)
    lcb = _coeffs_in(B, i)[db]
    sh = _SHIFTS[i]
    R = A
    while not R.is_zero():
        dr = R.degree_in(i)
        if dr < db:
            break
        lcr = _coeffs_in(R, i)[dr]
        shifted = MultiPoly._raw({k + ((dr - db) << sh): c for k, c in B.terms.items()})
        R = R * lcb - lcr * shifted
    return R


_FLINT_CTX = None


def _flint_mpoly(p):
    global _FLINT_CTX
    if _FLINT_CTX is None:
        _FLINT_CTX = flint.fmpq_mpoly_ctx.get(VARS, "deglex")
    return _FLINT_CTX.from_dict({_unpack(k): flint.fmpq(Fraction(c).numerator, Fraction(c).denominator)
                                 for k, c in p.terms.items()})


def _from_flint_mpoly(f):
    terms = {}
    for e, c in f.to_dict().items():
        c = Fraction(int(c.p), int(c.q))
        terms[_pack(*e)] = c.numerator if c.denominator == 1 else c
    return MultiPoly._raw(terms)


def _numeric_primitive(p):
    """p scaled to integer coefficients with content 1."""
    _, q = p.integerized()
    c = 0
    for v in q.terms.values():
        c = gcd(c, v)
    if c > 1:
        q = MultiPoly._raw({k: v // c for k, v in q.terms.items()})
    return q


def mpoly_gcd(a, b):
    """Greatest common divisor, normalized to graded-lex leading coefficient 1."""
    if (flint is not None and len(a.terms) > 1 and len(b.terms) > 1
            and not a.is_const() and not b.is_const()):
        return _from_flint_mpoly(_flint_mpoly(a).gcd(_flint_mpoly(b))).normalized()
    return _mpoly_gcd(a, b)


def _mpoly_gcd(a, b):
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    va, vb = a.variables(), b.variables()
    allv = va | vb
    if not allv:
        return MultiPoly.const(1)
    if len(allv) == 1:
        (i,) = allv
        g = a.to_unipoly(i).gcd(b.to_unipoly(i))
        return MultiPoly.from_unipoly(g, VARS[i])
    i = min(allv)
    if i not in va:
        return _mpoly_gcd(a, _content(b, i))
    if i not in vb:
        return _mpoly_gcd(_content(a, i), b)
    ca, cb = _content(a, i), _content(b, i)
    pa, pb = _numeric_primitive(a.exact_div(ca)), _numeric_primitive(b.exact_div(cb))
    g = _mpoly_gcd(ca, cb)
    if pa.degree_in(i) < pb.degree_in(i):
        pa, pb = pb, pa
    A, B = pa, pb
    while True:
        R = _prem(A, B, i)
        if R.is_zero():
            break
        if R.degree_in(i) == 0:
            B = MultiPoly.const(1)
            break
        A, B = B, _numeric_primitive(R.exact_div(_content(R, i)))
    if not B.is_const():
        B = B.exact_div(_content(B, i))
    return (g * B).normalized()


class MultiRatFunc:
    """Reduced fraction of MultiPoly with normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.from_unipoly(num) if isinstance(num, UniPoly) else MultiPoly.const(num)
        if den is None:
            den = MultiPoly.const(1)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.from_unipoly(den) if isinstance(den, UniPoly) else MultiPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = MultiPoly.const(1)
            elif not den.is_const():
                g = mpoly_gcd(num, den)
                if not g.is_const():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.leading_coeff()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(MultiPoly.const(c), _reduced=True)

    @classmethod
    def var(cls, name):
        return cls(MultiPoly.var(name), _reduced=True)

    @classmethod
    def from_ratfunc(cls, f, var="u"):
        return cls(MultiPoly.from_unipoly(f.num, var), MultiPoly.from_unipoly(f.den, var),
                   _reduced=True)

    def __repr__(self):
        return "MultiRatFunc(%s)" % str(self)

    def __str__(self):
        if self.den.is_const():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def _coerce(self, other):
        if isinstance(other, MultiRatFunc):
            return other
        if isinstance(other, MultiPoly):
            return MultiRatFunc(other, _reduced=True)
        if isinstance(other, RatFunc):
            return MultiRatFunc.from_ratfunc(other)
        return MultiRatFunc.const(to_rat(other))

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly, RatFunc)):
            other = self._coerce(other)
        if not isinstance(other, MultiRatFunc):
            return NotImplemented
        return mrf_equal(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return MultiRatFunc(self.num + o.num, self.den)
        if o.den.is_const():
            return MultiRatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        if self.den.is_const():
            return MultiRatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        return MultiRatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MultiRatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o.is_zero() or self.is_zero():
            return MultiRatFunc.const(0)
        if o.num.is_const() and o.den.is_const():
            return MultiRatFunc(self.num.scale(o.num.const_value() / o.den.const_value()),
                                self.den, _reduced=True)
        return MultiRatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return self * MultiRatFunc(o.den, o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return MultiRatFunc.const(1) / (self ** (-k))
        return MultiRatFunc(self.num ** k, self.den ** k, _reduced=True)

    def subs(self, mapping):
        conv = {}
        for var, val in mapping.items():
            if isinstance(val, MultiRatFunc):
                if not val.den.is_const():
                    raise ValueError("only polynomial substitutions are supported")
                val = val.num.scale(1 / val.den.const_value())
            conv[var] = val
        return MultiRatFunc(self.num.subs(conv), self.den.subs(conv))

    def to_ratfunc(self, var="u"):
        return RatFunc(self.num.to_unipoly(var), self.den.to_unipoly(var))


def mrf_equal(f, g):
    """Exact identity test by cross-multiplication."""
    if not isinstance(f, MultiRatFunc):
        f = MultiRatFunc.const(0)._coerce(f)
    if not isinstance(g, MultiRatFunc):
        g = MultiRatFunc.const(0)._coerce(g)
    if f.den == g.den:
        return f.num == g.num
    return (f.num * g.den - g.num * f.den).is_zero()


# ---------------------------------------------------------------------------
# JSON forms


def poly_to_json(P, as_roots=False):
    if as_roots and P.lc() == 1:
        roots = rational_roots(P) if P.degree > 0 else []
        counts = {}
        for r in roots:
            counts[r] = counts.get(r, 0) + 1
        return {"roots": [[rat_str(r), k] for r, k in sorted(counts.items())], "monic": True}
    return {"coeffs": [rat_str(c) for c in P.coeffs]}


def poly_from_json(obj):
    if isinstance(obj, (int, str)):
        return UniPoly.const(to_rat(obj))
    if "coeffs" in obj:
        return UniPoly([to_rat(c) for c in obj["coeffs"]])
    if "roots" in obj:
        roots = []
        for item in obj["roots"]:
            if isinstance(item, (list, tuple)):
                r, k = item
            else:
                r, k = item, 1
            roots.extend([to_rat(r)] * int(k))
        return UniPoly.from_roots(roots)
    raise ValueError("unrecognized polynomial form")


def ratfunc_to_json(f):
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfunc_from_json(obj):
    if isinstance(obj, (int, str)):
        return RatFunc.const(to_rat(obj))
    if "num" in obj:
        den = poly_from_json(obj["den"]) if "den" in obj else UniPoly.const(1)
        return RatFunc(poly_from_json(obj["num"]), den)
    return RatFunc(poly_from_json(obj))


def mpoly_to_json(p):
    return [[e[0], e[1], e[2], rat_str(c)] for e, c in p.items()]


def mpoly_from_json(terms):
    return MultiPoly({(int(a), int(b), int(c)): to_rat(x) for a, b, c, x in terms})


def mrf_to_json(f):
    return {"num": mpoly_to_json(f.num), "den": mpoly_to_json(f.den)}


def mrf_from_json(obj):
    return MultiRatFunc(mpoly_from_json(obj["num"]), mpoly_from_json(obj["den"]))
