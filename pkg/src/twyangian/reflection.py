"""Exact checks of the reflection equation, symmetry relation, trace and
unitarity identities, plus the scalar functions p(u), script-g(u), h_m(u)
and the one-parameter K-matrix family.

Solutions S are RFMatrix values whose entries are rational functions of u
(and optionally of the parameter a).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadShiftRange, DegeneratePQ, UnsupportedPair
from .exactalg import (MultiPoly, MultiRatFunc, RatFunc, UniPoly, mpoly_gcd,
                       mrf_equal, mrf_to_json)
from .tensorrep import (RFMatrix, build_pair, g_trace, gmatrices, tensor_labels,
                        transpose_t)

U = MultiRatFunc.var("u")
V = MultiRatFunc.var("v")

_u = UniPoly.x()


@dataclass
class Report:
    identity: str
    holds: bool
    witness: tuple = None

    def __bool__(self):
        return self.holds

    def to_json(self):
        out = {"identity": self.identity, "holds": self.holds}
        if self.witness is not None:
            where, value = self.witness
            out["witness"] = {"entry": _jsonable(where), "value": mrf_to_json(value)}
        return out


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


# ---------------------------------------------------------------------------
# scalar functions


def _lin(a, b):
    """The polynomial a*u + b."""
    return UniPoly([b, a])


def p_function(pair, trace=None):
    """p(u) = 1 -+ 1/(2u - kappa) + Tr G(u)/(2u - 2 kappa)."""
    k = pair.kappa
    tr = g_trace(pair) if trace is None else trace
    p = RatFunc.const(1) - RatFunc(UniPoly.const(pair.sign), _lin(2, -k)) \
        + tr / RatFunc(_lin(2, -2 * k))
    if trace is None:
        lhs = p * p.reflect(k)
        rhs = RatFunc.const(1) - RatFunc(UniPoly.const(1), _lin(2, -k) ** 2)
        assert lhs == rhs, "p(u)p(kappa-u) identity failed"
    return p


def p_identity(pair):
    """p(u) for the involution G = I of the same algebra."""
    return p_function(pair, trace=RatFunc.const(pair.N))


def gscr(pair):
    """[+-](p+q-4u)/(p-q-4u); also defined when p = q."""
    s = pair.bracket_sign
    return RatFunc(_lin(-4 * s, s * (pair.p + pair.q)), _lin(-4, pair.p - pair.q))


def g_ratio_expansion(pair):
    """The factored form of script-g(kappa-u)/script-g(u)."""
    k, s, q = pair.kappa, pair.sign, pair.q
    num = _lin(2, -k + s) * _lin(2, q - k - s)
    den = _lin(2, -k - s) * _lin(2, -q - k + s)
    return RatFunc(num, den)


def scr_g(pair):
    if pair.p == pair.q:
        raise DegeneratePQ("script-g is only used when p != q")
    g = gscr(pair)
    assert g.reflect(pair.kappa) / g == g_ratio_expansion(pair), "script-g expansion failed"
    return g


# ---------------------------------------------------------------------------
# restriction to the reduced pair


def shift_range(pair):
    top = pair.split_rank - (1 if pair.split_rank == pair.n else 0)
    return list(range(1, top + 1))


def reduced_pair(pair, m):
    """The pair (g_{N-2m}, g_{N-2l} + g_{2(l-m)}) in table conventions (p >= q)."""
    if m not in shift_range(pair):
        raise BadShiftRange("m=%s outside 1..%d" % (m, len(shift_range(pair))))
    N2 = pair.N - 2 * m
    a, b = pair.N - 2 * pair.split_rank, 2 * (pair.split_rank - m)
    q2 = min(a, b)
    if q2 == 0:
        return build_pair("BCD0", N2, 0, pair.algebra)
    if pair.symplectic:
        return build_pair("CII", N2, q2)
    return build_pair("BI" if N2 % 2 else "DIa", N2, q2)


def h_shift(pair, m):
    """h_m(u) = u/(u+m/2) * g_m(u) / g(u+m/2), with the defining condition asserted."""
    red = reduced_pair(pair, m)
    half = Fraction(m, 2)
    h = RatFunc(_u, _lin(1, half)) * gscr(red) / gscr(pair).shift(half)
    assert h_condition(pair, m, h), "h_m condition failed"
    return h


def h_condition(pair, m, h):
    """h(u)/h(kappa-m-u) = p_m(u)/p(u+m/2)."""
    red = reduced_pair(pair, m)
    half = Fraction(m, 2)
    lhs = h / h.reflect(pair.kappa - m)
    rhs = p_function(red) / p_function(pair).shift(half)
    return lhs == rhs


# ---------------------------------------------------------------------------
# solutions


def g_solution(pair):
    """G(u) as an RFMatrix in u."""
    return gmatrices(pair)[1]("u")


def _param(a):
    if a is None or isinstance(a, str):
        return MultiRatFunc.var("a")
    return MultiRatFunc.const(a)


def kmatrix(pair, a="a"):
    """The one-parameter diagonal solution for (so_N, so_{N-2} + so_2), N >= 5."""
    if pair.algebra != "so" or pair.q != 2 or pair.N < 5:
        raise UnsupportedPair("K(u;a) needs (so_N, so_{N-2}+so_2) with N >= 5")
    av = _param(a)
    d = pair.g_pole
    n = pair.n
    k = (U - av) * (U + av - 2 * d) / ((U - d) * (U - d))
    vals = {}
    for i in pair.indices:
        if i == -n:
            vals[i] = k * (1 - 2 * U / (U - av))
        elif i == n:
            vals[i] = k * (1 - 2 * U / (U + av - 2 * d))
        else:
            vals[i] = k
    return RFMatrix.diagonal(pair.indices, vals)


def kmatrix_weight(pair, a):
    """Highest weight (mu_i)_{i>=0} of the one-dimensional module V(a)."""
    K = kmatrix(pair, a)
    return [K[(i, i)].to_ratfunc() for i in pair.pos_indices]


# ---------------------------------------------------------------------------
# reflection equation


def _poly_lcm(a, b):
    g = mpoly_gcd(a, b)
    return a * b.exact_div(g)


def _cleared(S):
    """Return (D, {(i,j): poly}) with S = poly / D."""
    D = MultiPoly.const(1)
    for v in S.entries.values():
        if not v.den.is_const():
            D = _poly_lcm(D, v.den)
    out = {}
    for k, v in S.entries.items():
        out[k] = v.num * D.exact_div(v.den)
    return D, out


def _rhat(pair, x):
    """x(x-kappa) R(x) as rows {row: {col: poly}} for a polynomial x."""
    k = pair.kappa
    xk = x - k
    diag = x * xk
    rows = {}
    idx = pair.indices
    for i in idx:
        for j in idx:
            r = rows.setdefault((i, j), {})
            r[(i, j)] = r.get((i, j), 0) + diag
            key = (j, i)
            r[key] = (r[key] + (-xk)) if key in r else -xk
    for i in idx:
        for j in idx:
            row, col = (-j, j), (-i, i)
            th = pair.theta(i, j)
            r = rows[row]
            r[col] = (r[col] + x.scale(th)) if col in r else x.scale(th)
    for r in rows.values():
        for c in [c for c, v in r.items() if v.is_zero()]:
            del r[c]
    return rows


def _rows_mul(A, B):
    out = {}
    for i, ra in A.items():
        acc = {}
        for k, x in ra.items():
            rb = B.get(k)
            if not rb:
                continue
            for j, y in rb.items():
                t = x * y
                if j in acc:
                    acc[j] = acc[j] + t
                else:
                    acc[j] = t
        out[i] = {j: v for j, v in acc.items() if not v.is_zero()}
    return out


def _embed1(pair, Sh):
    idx = pair.indices
    rows = {}
    for (i, j), v in Sh.items():
        for k in idx:
            rows.setdefault((i, k), {})[(j, k)] = v
    return rows


def _embed2(pair, Sh):
    idx = pair.indices
    rows = {}
    for (k, l), v in Sh.items():
        for i in idx:
            rows.setdefault((i, k), {})[(i, l)] = v
    return rows


def check_reflection_equation(pair, S):
    """R(u-v)S1(u)R(u+v)S2(v) = S2(v)R(u+v)S1(u)R(u-v) over Q(u, v, a)."""
    D, Sh = _cleared(S)
    u = MultiPoly.var("u")
    v = MultiPoly.var("v")
    Sv = {k: p.subs({"u": v}) for k, p in Sh.items()}
    Dv = D.subs({"u": v})
    Rm = _rhat(pair, u - v)
    Rp = _rhat(pair, u + v)
    S1 = _embed1(pair, Sh)
    S2 = _embed2(pair, Sv)
    lhs = _rows_mul(_rows_mul(_rows_mul(Rm, S1), Rp), S2)
    rhs = _rows_mul(_rows_mul(_rows_mul(S2, Rp), S1), Rm)
    scale = None
    for row in tensor_labels(pair):
        a, b = lhs.get(row, {}), rhs.get(row, {})
        for col in tensor_labels(pair):
            x = a.get(col)
            y = b.get(col)
            diff = (x if x is not None else MultiPoly()) - (y if y is not None else MultiPoly())
            if not diff.is_zero():
                k = pair.kappa
                scale = (u - v) * (u - v - k) * (u + v) * (u + v - k) * D * Dv
                return Report("RE", False, ((row, col), MultiRatFunc(diff, scale)))
    return Report("RE", True)


# ---------------------------------------------------------------------------
# linear identities


def _at(S, expr):
    return S.subs({"u": expr})


def symmetry_residual(pair, S):
    k = pair.kappa
    Sk = _at(S, k - U)
    trG = MultiRatFunc.from_ratfunc(g_trace(pair))
    trS = S.trace()
    I = RFMatrix.identity(pair.indices)
    rhs = Sk + (S - Sk).scale(pair.sign / (2 * U - k)) \
        + (Sk.scale(trG) - I.scale(trS)).scale(1 / (2 * U - 2 * k))
    return transpose_t(pair, S), rhs


def check_symmetry_relation(pair, S):
    lhs, rhs = symmetry_residual(pair, S)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return Report("SYM", True)
    return Report("SYM", False, diff)


def trace_identity_check(pair, S):
    """p(u) Tr S(kappa-u) = p_I(u) Tr S(u)."""
    p = MultiRatFunc.from_ratfunc(p_function(pair))
    pI = MultiRatFunc.from_ratfunc(p_identity(pair))
    trS = S.trace()
    lhs = p * trS.subs({"u": pair.kappa - U})
    rhs = pI * trS
    if mrf_equal(lhs, rhs):
        return Report("TRACE", True)
    return Report("TRACE", False, ("trace", lhs - rhs))


def unitarity_scalar(pair, S):
    """Return w with S(u)S(-u) = w I, or None if the product is not scalar."""
    prod = S @ _at(S, -U)
    idx = pair.indices
    w = prod[(idx[0], idx[0])]
    if not prod.equals(RFMatrix.identity(idx).scale(w)):
        return None
    return w


def check_unitarity(pair, S):
    w = unitarity_scalar(pair, S)
    if w is None:
        return Report("UNITARITY", False, ("product", MultiRatFunc.const(0)))
    if not mrf_equal(w, w.subs({"u": -U})):
        return Report("UNITARITY", False, ("odd scalar", w))
    return Report("UNITARITY", True)


def verify_all(pair, S, jobs=1):
    checks = [check_reflection_equation, check_symmetry_relation,
              trace_identity_check, check_unitarity]
    if jobs and jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(lambda f: f(pair, S), checks))
    return [f(pair, S) for f in checks]
