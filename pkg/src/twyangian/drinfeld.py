"""Highest weights, Drinfeld tuples and the finite-dimensionality tests.

All relations are stated on the tilde form of a weight,
    mu~_i(u) = (2u - n + i) mu_i(u) + sum_{l > i} mu_l(u),
and every polynomial that the engine extracts is recovered exactly from a
quotient P(u+m)/P(u), optionally times an alpha-factor (alpha-u)/(alpha+u-l+m).
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import (NonRationalRoot, NoRationalNormalizer, NoSolution, NoSymmetricSquareRoot,
                     NotAssociable, StringConditionViolated, UnsupportedPair)
from .exactalg import (RatFunc, UniPoly, rat_str, ratfunc_from_json,
                       ratfunc_to_json, rational_roots, series_at_infinity, to_rat)
from .reflection import g_ratio_expansion, gscr, h_shift, reduced_pair
from .tensorrep import g_entry, parse_pair

HALF = Fraction(1, 2)
U = RatFunc.u()


def _lin(a, b):
    return UniPoly([to_rat(b), to_rat(a)])


def _rf(P):
    return RatFunc(P)


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class SymPoly:
    """Monic polynomial stored by its roots, closed under r -> center - r."""

    roots: tuple
    center: Fraction

    def __post_init__(self):
        roots = tuple(sorted(to_rat(r) for r in self.roots))
        center = to_rat(self.center)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "center", center)
        if Counter(roots) != Counter(center - r for r in roots):
            raise ValueError("roots %s are not closed under r -> %s - r"
                             % ([rat_str(r) for r in roots], rat_str(center)))

    @classmethod
    def one(cls, center):
        return cls((), center)

    @classmethod
    def from_poly(cls, P, center):
        if P.lc() != 1:
            raise ValueError("polynomial must be monic")
        roots = rational_roots(P) if P.degree > 0 else []
        return cls(tuple(roots), center)

    @property
    def poly(self):
        return UniPoly.from_roots(self.roots)

    @property
    def degree(self):
        return len(self.roots)

    def zeros(self):
        return set(self.roots)

    def is_symmetric(self):
        """P(u) = P(center - u) as polynomials (self-centered roots come in pairs)."""
        mid = self.center / 2
        return self.roots.count(mid) % 2 == 0

    def shifted(self, c):
        """The polynomial P(u + c)."""
        return SymPoly(tuple(r - c for r in self.roots), self.center - 2 * c)

    def to_json(self):
        counts = sorted(Counter(self.roots).items())
        return {"roots": [[rat_str(r), k] for r, k in counts], "center": rat_str(self.center)}

    @classmethod
    def from_json(cls, obj):
        roots = []
        for item in obj.get("roots", []):
            if isinstance(item, (list, tuple)):
                r, k = item
            else:
                r, k = item, 1
            roots.extend([to_rat(r)] * int(k))
        return cls(tuple(roots), to_rat(obj["center"]))

    def pretty(self):
        if not self.roots:
            return "1"
        out = []
        for r, k in sorted(Counter(self.roots).items()):
            if r == 0:
                body = "u"
            elif r > 0:
                body = "(u-%s)" % rat_str(r)
            else:
                body = "(u+%s)" % rat_str(-r)
            out.append(body if k == 1 else "%s^%d" % (body, k))
        return "".join(out)


@dataclass(frozen=True)
class DrinfeldTuple:
    """(alpha, P_1, ..., P_n); alpha is None for BCD0, beta only for so4."""

    alpha: object
    polys: tuple
    beta: object = None

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", to_rat(self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", to_rat(self.beta))

    def to_json(self):
        out = {"alpha": None if self.alpha is None else rat_str(self.alpha),
               "polys": [P.to_json() for P in self.polys]}
        if self.beta is not None:
            out["beta"] = rat_str(self.beta)
        return out

    @classmethod
    def from_json(cls, obj):
        alpha = obj.get("alpha")
        beta = obj.get("beta")
        return cls(None if alpha is None else to_rat(alpha),
                   tuple(SymPoly.from_json(p) for p in obj["polys"]),
                   None if beta is None else to_rat(beta))

    def pretty(self):
        parts = [] if self.alpha is None else [rat_str(self.alpha)]
        parts.extend(P.pretty() for P in self.polys)
        if self.beta is not None:
            parts.append("beta=" + rat_str(self.beta))
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class HighestWeight:
    """Components mu_i for i in the nonnegative labels of the pair.

    With yangian=True the components are lambda_i for every label -n..n,
    each with constant term 1.
    """

    pair: object
    mu: tuple
    yangian: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(self.mu))
        labels = self.labels()
        if len(self.mu) != len(labels):
            raise ValueError("expected %d components, got %d" % (len(labels), len(self.mu)))

    def labels(self):
        return self.pair.indices if self.yangian else self.pair.pos_indices

    def at(self, i):
        return self.mu[self.labels().index(i)]

    def constant_terms(self):
        return [series_at_infinity(f, 1)[0] for f in self.mu]

    def __eq__(self, other):
        return (isinstance(other, HighestWeight) and self.pair == other.pair
                and self.yangian == other.yangian and self.mu == other.mu)

    def __hash__(self):
        return hash((self.pair, self.mu, self.yangian))

    def to_json(self):
        out = {"pair": self.pair.key(), "mu": [ratfunc_to_json(f) for f in self.mu]}
        if self.yangian:
            out["yangian"] = True
        return out

    @classmethod
    def from_json(cls, obj, pair=None):
        if pair is None:
            pair = parse_pair(obj["pair"])
        return cls(pair, tuple(ratfunc_from_json(f) for f in obj["mu"]),
                   bool(obj.get("yangian", False)))


@dataclass(frozen=True)
class TildeWeight:
    pair: object
    tilde: tuple

    def at(self, i):
        return self.tilde[self.pair.pos_indices.index(i)]


@dataclass
class Verdict:
    verdict: str
    tuple: object = None
    violations: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict,
                "tuple": None if self.tuple is None else self.tuple.to_json(),
                "violations": list(self.violations)}


# ---------------------------------------------------------------------------
# pair data


def _is_bcd0(pair):
    return pair.family == "BCD0"


def _is_so4(pair):
    return pair.low_rank == "so4"


def _is_q1(pair):
    return pair.family == "BI" and pair.q == 1


def centers(pair):
    """Symmetry centers of P_1, ..., P_n."""
    n = pair.n
    return [pair.kappa + 2 ** pair.delta] + [Fraction(n - i + 2) for i in range(2, n + 1)]


def alpha_index(pair):
    """Index i whose relation carries the alpha-factor (None for BCD0)."""
    if _is_bcd0(pair):
        return None
    return pair.lead_rank + 1


def alpha_step(pair):
    """The shift m used by the alpha-reduction at index lead_rank + 1."""
    return HALF if pair.lead_rank == 0 else Fraction(1)


# ---------------------------------------------------------------------------
# tilde transform and non-triviality


def tilde(w):
    pair = w.pair
    n = pair.n
    out = []
    for i in pair.pos_indices:
        acc = RatFunc(_lin(2, -n + i)) * w.at(i)
        for l in range(i + 1, n + 1):
            acc = acc + w.at(l)
        out.append(acc)
    return TildeWeight(pair, tuple(out))


def untilde(t):
    pair = t.pair
    n = pair.n
    mu = {}
    for i in reversed(pair.pos_indices):
        rest = RatFunc.const(0)
        for l in range(i + 1, n + 1):
            rest = rest + mu[l]
        mu[i] = (t.at(i) - rest) / RatFunc(_lin(2, -n + i))
    return HighestWeight(pair, tuple(mu[i] for i in pair.pos_indices))


def weight_from_tilde(pair, values):
    return untilde(TildeWeight(pair, tuple(values)))


def check_nontrivial(w):
    pair = w.pair
    t = tilde(w)
    n = pair.n
    for i in pair.pos_indices:
        if i == n:
            continue
        c = n - i
        if t.at(i) * t.at(i).reflect(c) != t.at(i + 1) * t.at(i + 1).reflect(c):
            return False
    if pair.odd:
        k = pair.kappa
        g = gscr(pair)
        t0 = t.at(0)
        if U * g * t0.reflect(k) != (k - U) * g.reflect(k) * t0:
            return False
    return True


def check_nontrivial_X(lam):
    """Non-triviality of a Yangian-side highest weight lambda_{-n..n}."""
    pair = lam.pair
    n, k = pair.n, pair.kappa
    for i in pair.pos_indices:
        if i == n:
            continue
        s = -k + n - i
        lhs = lam.at(-i) * lam.at(i).shift(s)
        rhs = lam.at(-i - 1) * lam.at(i + 1).shift(s)
        if lhs != rhs:
            return False
    return True


def trivial_weight(pair):
    return HighestWeight(pair, tuple(g_entry(pair, i) for i in pair.pos_indices))


# ---------------------------------------------------------------------------
# strings and shift quotients


def string_set(alpha, beta):
    d = to_rat(alpha) - to_rat(beta)
    if d.denominator != 1 or d <= 0:
        return []
    b = to_rat(beta)
    return [b + k for k in range(int(d))]


def _chain_solve(f, m):
    """Monic P with P(u+m)/P(u) = f, or None."""
    if f.num.degree != f.den.degree or f.leading_coefficient() != 1:
        return None
    if f.num.degree == 0:
        return UniPoly.const(1)
    m = to_rat(m)
    g = f.compose_linear(m, 0)
    a = Counter(rational_roots(g.num))
    b = Counter(rational_roots(g.den))
    classes = {}
    for t in set(a) | set(b):
        classes.setdefault(t - floor(t), []).append(t)
    roots = []
    for pts in classes.values():
        top, bottom = max(pts), min(pts)
        running = 0
        t = top
        while t >= bottom:
            running += b.get(t, 0) - a.get(t, 0)
            if running < 0:
                return None
            roots.extend([t * m] * running)
            t -= 1
        if running != 0:
            return None
    P = UniPoly.from_roots(roots)
    if _rf(P.compose_linear(1, m)) / _rf(P) != f:
        return None
    return P


def _alpha_factor(alpha, l, m):
    return RatFunc(_lin(-1, alpha), _lin(1, alpha - l + m))


def solve_shift_quotient(f, m, l, with_alpha):
    """Return (SymPoly P, alpha) with f = P(u+m)/P(u) * [(alpha-u)/(alpha+u-l+m)]."""
    m, l = to_rat(m), to_rat(l)
    if f.num.is_zero():
        raise NoSolution("zero quotient")
    if not with_alpha:
        P = _chain_solve(f, m)
        if P is None or P.compose_linear(-1, l) != P:
            raise NoSolution("no symmetric P with P(u+%s)/P(u) = %s" % (rat_str(m), f))
        return SymPoly.from_poly(P, l), None
    if f.num.degree != f.den.degree or f.leading_coefficient() != -1:
        raise NoSolution("alpha-quotient must have leading coefficient -1")
    candidates = set(rational_roots(f.num)) if f.num.degree else set()
    candidates.add((l - m) / 2)
    found = []
    for a in sorted(candidates):
        P = _chain_solve(f / _alpha_factor(a, l, m), m)
        if P is None or P(a) == 0 or P.compose_linear(-1, l) != P:
            continue
        found.append((SymPoly.from_poly(P, l), a))
    if not found:
        raise NoSolution("no (P, alpha) with center %s for %s" % (rat_str(l), f))
    assert len(found) == 1, "solution of the alpha-quotient is not unique"
    return found[0]


def shift_quotient(P, m, alpha=None, l=None):
    """The forward map: P(u+m)/P(u) times the optional alpha-factor."""
    poly = P.poly if isinstance(P, SymPoly) else P
    f = _rf(poly.compose_linear(1, m)) / _rf(poly)
    if alpha is not None:
        l = P.center if l is None else l
        f = f * _alpha_factor(alpha, l, m)
    return f


# ---------------------------------------------------------------------------
# association


def _first_ratio(pair, t):
    """The quotient that determines P_1."""
    if pair.odd:
        return t.at(0) / t.at(1)
    k = pair.kappa
    b = 1 if pair.symplectic else 2
    if pair.n < b:
        raise UnsupportedPair("association needs n >= 2 for even orthogonal algebras")
    return t.at(1).reflect(k) / t.at(b) / g_ratio_expansion(pair) * U / (k - U)


def _first_step(pair):
    return HALF if pair.odd else Fraction(2 ** pair.delta)


def associate(w):
    pair = w.pair
    if not check_nontrivial(w):
        raise NotAssociable("weight fails the non-triviality relations")
    t = tilde(w)
    n = pair.n
    cs = centers(pair)
    ai = alpha_index(pair)
    polys = [None] * n
    alpha = beta = None
    for i in range(2, n + 1):
        f = t.at(i - 1) / t.at(i)
        try:
            P, a = solve_shift_quotient(f, 1, cs[i - 1], i == ai)
        except NoSolution as e:
            raise NotAssociable("ratio at index %d: %s" % (i, e))
        polys[i - 1] = P
        if i == ai:
            alpha = a
    with_first = ai == 1 or _is_so4(pair)
    try:
        P, a = solve_shift_quotient(_first_ratio(pair, t), _first_step(pair), cs[0], with_first)
    except NoSolution as e:
        raise NotAssociable("relation for P_1: %s" % e)
    polys[0] = P
    if _is_so4(pair):
        beta = a
    elif ai == 1:
        alpha = a
    return DrinfeldTuple(alpha, tuple(polys), beta)


def relation_quotients(pair, t):
    """The right-hand sides of the association relations for a tuple."""
    n = pair.n
    ai = alpha_index(pair)
    out = {}
    for i in range(2, n + 1):
        P = t.polys[i - 1]
        out[i] = shift_quotient(P, 1, t.alpha if i == ai else None)
    P = t.polys[0]
    extra = t.beta if _is_so4(pair) else (t.alpha if ai == 1 else None)
    out[1] = shift_quotient(P, _first_step(pair), extra)
    return out


def is_associated(w, t):
    """Check the association relations directly (no solving)."""
    pair = w.pair
    if not check_nontrivial(w):
        return False
    tw = tilde(w)
    rel = relation_quotients(pair, t)
    for i in range(2, pair.n + 1):
        if tw.at(i - 1) / tw.at(i) != rel[i]:
            return False
    return _first_ratio(pair, tw) == rel[1]


def validate_tuple(pair, t):
    """List of reasons why t is not a well-formed tuple for the pair."""
    bad = []
    cs = centers(pair)
    if len(t.polys) != pair.n:
        return ["expected %d polynomials, got %d" % (pair.n, len(t.polys))]
    for i, (P, c) in enumerate(zip(t.polys, cs), start=1):
        if P.center != c:
            bad.append("P_%d has center %s, expected %s" % (i, rat_str(P.center), rat_str(c)))
        elif not P.is_symmetric():
            bad.append("P_%d(u) != P_%d(%s - u)" % (i, i, rat_str(c)))
    ai = alpha_index(pair)
    if ai is None:
        if t.alpha is not None:
            bad.append("BCD0 tuples carry no alpha")
    elif t.alpha is None:
        bad.append("missing alpha")
    elif t.alpha in t.polys[ai - 1].zeros():
        bad.append("alpha is a root of P_%d" % ai)
    if _is_so4(pair):
        if t.beta is None:
            bad.append("missing beta")
        elif t.beta in t.polys[0].zeros():
            bad.append("beta is a root of P_1")
    elif t.beta is not None:
        bad.append("beta is only used for (so4, so2+so2)")
    return bad


def trivial_tuple(pair):
    alpha = None if _is_bcd0(pair) else Fraction(pair.N, 4)
    polys = tuple(SymPoly.one(c) for c in centers(pair))
    if _is_so4(pair):
        return associate(trivial_weight(pair))
    return DrinfeldTuple(alpha, polys)


# ---------------------------------------------------------------------------
# Yangian-side weights and tensor products


def square_root(P, kappa):
    """Monic Q with P(u) = (-1)^deg Q * Q(u - kappa/2) * Q(c - kappa/2 - u)."""
    c = P.center
    counts = Counter(P.roots)
    chosen = []
    for r in sorted(counts):
        s = c - r
        if r == s:
            if counts[r] % 2:
                raise NoSymmetricSquareRoot("root %s = center/2 has odd multiplicity" % rat_str(r))
            chosen.extend([r] * (counts[r] // 2))
        elif r > s:
            chosen.extend([r] * counts[r])
    return UniPoly.from_roots([r - kappa / 2 for r in chosen])


def odot(Q, P, kappa):
    """(Q . P)(u) = (-1)^deg Q Q(u - kappa/2) Q(-u + c - kappa/2) P(u) as a SymPoly."""
    c = P.center
    roots = list(P.roots)
    for r in rational_roots(Q) if Q.degree > 0 else []:
        roots.append(r + kappa / 2)
        roots.append(c - kappa / 2 - r)
    return SymPoly(tuple(roots), c)


def yangian_weight(pair, Q):
    """A highest weight lambda(u) of the extended Yangian with Drinfeld polynomials Q_1..Q_n."""
    n, k = pair.n, pair.kappa
    Q = [q if isinstance(q, UniPoly) else q.poly for q in Q]
    if len(Q) != n:
        raise ValueError("expected %d Drinfeld polynomials" % n)

    def ratio(P, m):
        return _rf(P.compose_linear(1, m)) / _rf(P)

    lam = {n: RatFunc.const(1)}
    for i in range(n, 1, -1):
        lam[i - 1] = lam[i] * ratio(Q[i - 1], 1)
    if pair.odd:
        lam[0] = lam[1] * ratio(Q[0], HALF)
        s = -k + n
        lam[-1] = lam[0] * lam[0].shift(s) / lam[1].shift(s)
    elif pair.symplectic:
        lam[-1] = lam[1] * ratio(Q[0], 2)
    else:
        if n < 2:
            raise UnsupportedPair("even orthogonal Yangian weights need n >= 2")
        lam[-1] = lam[2] * ratio(Q[0], 1)
    for i in range(1, n):
        s = -k + n - i
        lam[-i - 1] = lam[-i] * lam[i].shift(s) / lam[i + 1].shift(s)
    return HighestWeight(pair, tuple(lam[i] for i in pair.indices), yangian=True)


def yangian_drinfeld(lam):
    """Drinfeld polynomials of a Yangian-side weight (None if it is not finite-dimensional)."""
    pair = lam.pair
    n = pair.n
    out = [None] * n
    for i in range(2, n + 1):
        out[i - 1] = _chain_solve(lam.at(i - 1) / lam.at(i), 1)
    if pair.odd:
        out[0] = _chain_solve(lam.at(0) / lam.at(1), HALF)
    elif pair.symplectic:
        out[0] = _chain_solve(lam.at(-1) / lam.at(1), 2)
    else:
        out[0] = _chain_solve(lam.at(-1) / lam.at(2), 1)
    if any(P is None for P in out):
        return None
    return out


def tensor_weight(w, lam):
    """Highest weight of the submodule generated by xi (x) eta in L(lambda) (x) V(mu)."""
    pair = w.pair
    k = pair.kappa
    t = tilde(w)
    vals = []
    for i in pair.pos_indices:
        vals.append(t.at(i) * lam.at(i).shift(-k / 2) * lam.at(-i).reflect(k / 2))
    return weight_from_tilde(pair, vals)


def poly2_reduce(P, alpha, m):
    """Return (ell, P') with P' = P / prod_{k<ell} (u-alpha+km)(u-l+alpha-km) and P'(alpha-m*ell) != 0."""
    alpha, m = to_rat(alpha), to_rat(m)
    l = P.center
    roots = Counter(P.roots)
    ell = 0
    while roots[alpha - ell * m] > 0:
        a, b = alpha - ell * m, l - alpha + ell * m
        roots[a] -= 1
        if roots[b] <= 0:
            raise NotAssociable("P is not divisible by the reduction factor at step %d" % ell)
        roots[b] -= 1
        ell += 1
    return ell, SymPoly(tuple(roots.elements()), l)


def tensor_compose(pair, Q, t):
    """Tuple of the tensor product with the Yangian module of Drinfeld polynomials Q."""
    if _is_so4(pair):
        raise UnsupportedPair("tensor composition is not modeled for (so4, so2+so2)")
    k = pair.kappa
    Q = [q if isinstance(q, UniPoly) else q.poly for q in Q]
    polys = [odot(q, P, k) for q, P in zip(Q, t.polys)]
    alpha = t.alpha
    ai = alpha_index(pair)
    if ai is not None and alpha in polys[ai - 1].zeros():
        ell, red = poly2_reduce(polys[ai - 1], alpha, alpha_step(pair))
        polys[ai - 1] = red
        alpha = alpha - alpha_step(pair) * ell
    return DrinfeldTuple(alpha, tuple(polys))


def alpha_weight(pair, alpha):
    """The weight whose tilde form is 2u g(u) below the alpha index and
    2u g(u)(l - alpha - u)/(u - alpha) from it on."""
    g = gscr(pair)
    base = RatFunc(_lin(2, 0)) * g
    vals = []
    for i in pair.pos_indices:
        if _is_bcd0(pair) or i <= pair.lead_rank:
            vals.append(base)
        else:
            a = to_rat(alpha)
            vals.append(base * RatFunc(_lin(-1, pair.split_rank - a), _lin(1, -a)))
    return weight_from_tilde(pair, vals)


def synthesize(pair, t, check=False):
    """A weight associated to t, built as a tensor product over the alpha-weight."""
    if _is_so4(pair):
        raise UnsupportedPair("synthesize is not available for (so4, so2+so2)")
    for i, P in enumerate(t.polys, start=1):
        if not P.is_symmetric():
            raise NoSymmetricSquareRoot("P_%d: root %s = center/2 has odd multiplicity"
                                        % (i, rat_str(P.center / 2)))
    bad = validate_tuple(pair, t)
    if bad:
        raise ValueError("; ".join(bad))
    Q = [square_root(P, pair.kappa) for P in t.polys]
    base = trivial_weight(pair) if _is_bcd0(pair) else alpha_weight(pair, t.alpha)
    w = tensor_weight(base, yangian_weight(pair, Q))
    if check and not is_associated(w, t):
        raise AssertionError("synthesized weight is not associated to the tuple")
    return w


# ---------------------------------------------------------------------------
# restriction


def restrict_tuple(pair, t, m):
    red = reduced_pair(pair, m)
    half = Fraction(m, 2)
    polys = tuple(P.shifted(half) for P in t.polys[:pair.n - m])
    alpha = None if _is_bcd0(red) else t.alpha - half
    return red, DrinfeldTuple(alpha, polys)


def restrict_weight(pair, w, m):
    """Highest weight h_m(u) mu^(m)(u) of the restricted module over the reduced pair."""
    red = reduced_pair(pair, m)
    half = Fraction(m, 2)
    t = tilde(w)
    vals = [t.at(i).shift(half) for i in red.pos_indices]
    base = weight_from_tilde(red, vals)
    h = h_shift(pair, m)
    return HighestWeight(red, tuple(h * f for f in base.mu))


# ---------------------------------------------------------------------------
# the swap twist for (so_{2n+1}, so_{2n})


def _require_q1(pair):
    if not _is_q1(pair):
        raise UnsupportedPair("the swap twist is defined for (so_{2n+1}, so_{2n})")


def string_poly(pair, alpha):
    """P_alpha(u) for alpha > N/4: roots are S(a, N/2-a) and S(a+1/2, N/2-a+1/2)."""
    N4 = Fraction(pair.N, 4)
    roots = []
    for k in range(int(2 * alpha - 2 * N4)):
        roots.append(alpha - HALF - k)
        roots.append(alpha - 1 - k)
    return SymPoly(tuple(roots), pair.n)


def string_poly_minus(pair, alpha):
    """P_alpha^-(u) for alpha <= N/4."""
    N4 = Fraction(pair.N, 4)
    roots = []
    for k in range(int(2 * N4 - 2 * alpha)):
        roots.append(alpha + HALF + k)
        roots.append(alpha + k)
    return SymPoly(tuple(roots), pair.n)


def string_condition(pair, t):
    """Missing string elements of P_2 (empty list means the condition holds)."""
    a = t.alpha
    N2 = Fraction(pair.N, 2)
    need = Counter(string_set(a, N2 - a) + string_set(a + HALF, N2 - a + HALF))
    have = Counter(t.polys[1].roots) if pair.n >= 2 else Counter()
    return sorted(r for r in need if have[r] < need[r])


def psi_twist(pair, t):
    _require_q1(pair)
    N4 = Fraction(pair.N, 4)
    a = t.alpha
    if (2 * (a - N4)).denominator != 1:
        raise StringConditionViolated("alpha - N/4 = %s is not in Z/2" % rat_str(a - N4))
    polys = list(t.polys)
    if pair.n >= 2:
        P2 = polys[1]
        if a <= N4:
            polys[1] = SymPoly(P2.roots + string_poly_minus(pair, a).roots, P2.center)
        else:
            miss = string_condition(pair, t)
            if miss:
                raise StringConditionViolated("P_2 misses %s" % [rat_str(r) for r in miss])
            rem = Counter(P2.roots) - Counter(string_poly(pair, a).roots)
            polys[1] = SymPoly(tuple(rem.elements()), P2.center)
    return DrinfeldTuple(2 * N4 - a, tuple(polys))


def psi_twist_weight(w, alpha=None):
    """Highest weight of the module twisted by the swap of the labels 1 and -1."""
    pair = w.pair
    _require_q1(pair)
    a = associate(w).alpha if alpha is None else to_rat(alpha)
    t = tilde(w)
    N = pair.N

    def fr(a1, b1, a2, b2):
        return RatFunc(_lin(a1, b1), _lin(a2, b2))

    if pair.n == 1:
        f0 = fr(-2, 3 - 2 * a, -2, 2 * a) * fr(2, 2 - 2 * a, 2, 2 * a - 1)
        f1 = fr(2, 1 - 2 * a, 2, 2 * a - 2) * fr(2, 2 - 2 * a, 2, 2 * a - 1)
    else:
        f0 = fr(-2, N - 2 * a, -2, 2 * a) * fr(2, 2 - 2 * a, 2, 2 * a - N + 2)
        f1 = fr(2, 1 - 2 * a, 2, 2 * a - N + 1) * fr(2, 2 - 2 * a, 2, 2 * a - N + 2)
    vals = list(t.tilde)
    vals[0] = vals[0] * f0
    vals[1] = vals[1] * f1
    new = weight_from_tilde(pair, vals)
    # components 2..n are unchanged by construction of the tilde recursion
    return new


# ---------------------------------------------------------------------------
# weights of the fixed-point subalgebra


def a_value(pair, polys):
    d = [P.degree for P in polys]
    if pair.symplectic:
        return Fraction(d[0])
    if pair.odd:
        return Fraction(d[0], 2)
    return Fraction(d[0] - d[1], 2)


def g_weight(pair, t):
    """F_ii-eigenvalues mu_1..mu_n on the highest weight vector."""
    A = a_value(pair, t.polys)
    k = pair.lead_rank
    shift = Fraction(0) if t.alpha is None else t.alpha - Fraction(pair.N, 4)
    out = []
    partial = 0
    for i in range(1, pair.n + 1):
        if i >= 2:
            partial += t.polys[i - 1].degree
        val = -A / 2 - Fraction(partial, 2)
        if i > k and not _is_bcd0(pair):
            val += shift
        out.append(val)
    return tuple(out)


def _nonneg_int(x):
    return x.denominator == 1 and x >= 0


def finite_check(weight, algebra):
    """Dominance rules for a highest weight of so_M or sp_M, algebra like 'so5'."""
    kind, M = algebra[:2], int(algebra[2:])
    lam = [to_rat(x) for x in weight]
    if kind == "so" and M <= 2:
        return True
    for i in range(1, len(lam)):
        if not _nonneg_int(lam[i - 1] - lam[i]):
            return False
    if not lam:
        return True
    if kind == "sp":
        return _nonneg_int(-lam[0])
    if M % 2:
        return _nonneg_int(-2 * lam[0])
    return _nonneg_int(-lam[0] - lam[1])


def blocks(pair):
    """The fixed-point subalgebra as ((algebra, labels), ...)."""
    alg = pair.algebra
    k, ell = pair.lead_rank, pair.split_rank
    inner = ("%s%d" % (alg, pair.N - 2 * ell), list(range(1, k + 1)))
    if ell == 0:
        return [inner]
    return [inner, ("%s%d" % (alg, 2 * ell), list(range(k + 1, pair.n + 1)))]


def g_weight_check(pair, t):
    gw = g_weight(pair, t)
    bad = []
    for alg, labels in blocks(pair):
        comp = [gw[i - 1] for i in labels]
        if not finite_check(comp, alg):
            bad.append("fixed-point weight %s is not dominant for %s"
                       % ([rat_str(x) for x in comp], alg))
    return bad


def integrality_applies(pair):
    if _is_bcd0(pair):
        return False
    if pair.symplectic:
        return pair.N >= 4
    return pair.N >= 5 and pair.q != 2


def integrality_check(pair, t):
    """2^(1-delta)(alpha - N/4) is an integer bounded by the degree sum."""
    k = pair.lead_rank
    c = Fraction(2 ** (1 - pair.delta))
    x = c * (t.alpha - Fraction(pair.N, 4))
    if x.denominator != 1:
        return ["2^(1-delta)(alpha - N/4) = %s is not an integer" % rat_str(x)]
    bound = a_value(pair, t.polys)
    for a in range(2, k + 2):
        bound += t.polys[a - 1].degree
    if k + 2 <= pair.n:
        bound += (1 - Fraction(2 ** pair.delta, 2)) * t.polys[k + 1].degree
    if x > bound:
        return ["2^(1-delta)(alpha - N/4) = %s exceeds %s" % (rat_str(x), rat_str(bound))]
    return []


# ---------------------------------------------------------------------------
# classification


FINITE, NOT_FINITE, NECESSARY = "FiniteDim", "NotFiniteDim", "NecessaryOnly"


def classify_finite_dim(pair, obj):
    """Verdict for a highest weight or a tuple."""
    if isinstance(obj, HighestWeight):
        if not check_nontrivial(obj):
            return Verdict(NOT_FINITE, None, ["the Verma module is trivial"])
        try:
            t = associate(obj)
        except NotAssociable as e:
            return Verdict(NOT_FINITE, None, ["no associated tuple: %s" % e])
    else:
        t = obj
        bad = validate_tuple(pair, t)
        if bad:
            return Verdict(NOT_FINITE, t, bad)
    if _is_bcd0(pair) or pair.low_rank:
        return Verdict(FINITE, t, [])
    if pair.algebra == "so" and pair.q == 2:
        return Verdict(FINITE, t, [])
    if _is_q1(pair):
        bad = []
        x = 2 * (t.alpha - Fraction(pair.N, 4))
        if x.denominator != 1:
            bad.append("alpha - N/4 = %s is not in Z/2" % rat_str(x / 2))
        miss = string_condition(pair, t) if not bad else []
        if miss:
            bad.append("string elements missing from Z(P_2): %s" % [rat_str(r) for r in miss])
        return Verdict(NOT_FINITE if bad else FINITE, t, bad)
    bad = integrality_check(pair, t) if integrality_applies(pair) else []
    bad += g_weight_check(pair, t)
    return Verdict(NOT_FINITE if bad else NECESSARY, t, bad)


def classify_many(pair, items, jobs=1):
    """Order-preserving batch classification."""
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(lambda x: classify_finite_dim(pair, x), items))
    return [classify_finite_dim(pair, x) for x in items]


# ---------------------------------------------------------------------------
# rescaling by even series and normalization of the central series


def nu_twist(w, g):
    """Multiply every component by g(u - kappa/2); g must be even with g(inf) = 1."""
    if g.reflect(0) != g or g.value_at_infinity() != 1:
        raise ValueError("g must be even with constant term 1")
    h = g.shift(-w.pair.kappa / 2)
    return HighestWeight(w.pair, tuple(h * f for f in w.mu), w.yangian)


def central_value(w):
    """The scalar by which w(u) acts on V(mu): mu_n(u) mu_n(-u)."""
    f = w.at(w.pair.n)
    return f * f.reflect(0)


def _half_series(f, kappa, order):
    """Coefficients of a = 1 + sum a_k u^-k with a(u) a(u+kappa) = f."""
    from math import comb
    fs = series_at_infinity(f, order + 1)
    a = [Fraction(1)]
    for k in range(1, order + 1):
        # coefficient of u^-k in a(u+kappa) = sum_j a_j sum_i C(-j, i) kappa^i u^-(j+i)
        def shifted(j_max):
            out = [Fraction(0)] * (k + 1)
            for j in range(0, j_max + 1):
                for i in range(0, k - j + 1):
                    c = Fraction((-1) ** i * comb(j + i - 1, i)) if j > 0 else Fraction(1 if i == 0 else 0)
                    out[j + i] += a[j] * c * Fraction(kappa) ** i
            return out
        a.append(Fraction(0))
        b = shifted(k)
        total = sum(a[i] * b[k - i] for i in range(0, k + 1))
        a[k] = (fs[k] - total) / 2
    return a


def solve_product_shift(f, s):
    """Rational a with a(inf) = 1 and a(u) a(u+s) = f, or None."""
    s = to_rat(s)
    if s == 0 or f.num.is_zero() or f.leading_coefficient() != 1:
        return None
    if f.num.degree != f.den.degree:
        return None
    if s < 0:
        b = solve_product_shift(f, -s)
        return None if b is None else b.shift(-s)
    ef = Counter(rational_roots(f.num)) if f.num.degree else Counter()
    if f.den.degree:
        ef.subtract(Counter(rational_roots(f.den)))
    # multiplicities satisfy e_a(t) = e_f(t) - e_a(t + s), walked downward
    ea = {}
    classes = {}
    for t in ef:
        classes.setdefault(t / s - floor(t / s), []).append(t)
    for pts in classes.values():
        top, bottom = max(pts), min(pts)
        prev = 0
        t = top
        while t >= bottom - s:
            e = ef.get(t, 0) - prev
            if e:
                ea[t] = e
            prev = e
            t -= s
        if prev != 0:
            return None
    num = UniPoly.from_roots([r for r, e in ea.items() if e > 0 for _ in range(e)])
    den = UniPoly.from_roots([r for r, e in ea.items() if e < 0 for _ in range(-e)])
    a = RatFunc(num, den)
    if a * a.shift(s) != f:
        return None
    return a


def normalize_w1(w, order=12):
    """Return (g, nu_twist(w, g)) such that the central series acts as 1."""
    k = w.pair.kappa
    if k == 0:
        raise UnsupportedPair("normalization needs kappa != 0")
    target = 1 / central_value(w)
    try:
        a = solve_product_shift(target, k)
    except NonRationalRoot:
        a = None
    if a is not None:
        g = a.shift(k / 2)
        if g.reflect(0) == g:
            out = nu_twist(w, g)
            assert central_value(out) == RatFunc.const(1)
            return g, out
    raise NoRationalNormalizer("no even rational g with g(u-kappa/2)g(u+kappa/2) = 1/w",
                               _half_series(target, k, order))


# ---------------------------------------------------------------------------
# JSON helpers


def tuple_from_json(obj):
    return DrinfeldTuple.from_json(obj)


def weight_from_json(obj, pair=None):
    return HighestWeight.from_json(obj, pair)


__all__ = [
    "SymPoly", "DrinfeldTuple", "HighestWeight", "TildeWeight", "Verdict",
    "tilde", "untilde", "check_nontrivial", "check_nontrivial_X", "trivial_weight",
    "string_set", "solve_shift_quotient", "shift_quotient", "associate", "is_associated",
    "validate_tuple", "trivial_tuple", "square_root", "odot", "yangian_weight",
    "yangian_drinfeld", "tensor_weight", "poly2_reduce", "tensor_compose", "alpha_weight",
    "synthesize", "restrict_tuple", "restrict_weight", "string_poly", "string_poly_minus",
    "string_condition", "psi_twist", "psi_twist_weight", "a_value", "g_weight",
    "finite_check", "blocks", "g_weight_check", "integrality_check", "classify_finite_dim",
    "classify_many", "nu_twist", "central_value", "normalize_w1", "solve_product_shift",
    "centers", "alpha_index", "alpha_step", "relation_quotients", "weight_from_tilde",
    "restrict_weight", "integrality_applies", "tuple_from_json", "weight_from_json",
    "FINITE", "NOT_FINITE", "NECESSARY",
]
