"""Low-rank pairs (so3, so2) and (so4, so2+so2).

Evaluation homomorphisms onto the enveloping algebra of the fixed-point
subalgebra, their one-dimensional modules, the classification data of the
rank-one reflection algebra and the catalog of one-dimensional modules.
"""

from dataclasses import dataclass
from fractions import Fraction

from .drinfeld import (DrinfeldTuple, HighestWeight, associate, solve_product_shift,
                       solve_shift_quotient, trivial_tuple, trivial_weight)
from .errors import NoSolution, NotAssociable, NotClassifiable, UnsupportedPair
from .exactalg import MultiRatFunc, RatFunc, UniPoly, to_rat
from .reflection import kmatrix_weight
from .tensorrep import RFMatrix, build_pair

U = RatFunc.u()
MU = MultiRatFunc.var("u")


def so3_pair():
    return build_pair("BI", 3, 1)


def so4_pair():
    return build_pair("DIa", 4, 2)


def _at(M):
    """x -> M(x) for a matrix in u; x may be a variable name or an expression."""
    def f(x="u"):
        if isinstance(x, str):
            x = MultiRatFunc.var(x)
        return M.subs({"u": x})
    return f


def _param(x):
    if isinstance(x, str):
        return MultiRatFunc.var("a")
    return MultiRatFunc.const(to_rat(x))


# ---------------------------------------------------------------------------
# rank-one data


@dataclass(frozen=True)
class Y2Data:
    mu_circ: RatFunc
    p_circ: UniPoly
    gamma_circ: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma_circ", to_rat(self.gamma_circ))

    def is_valid(self):
        P = self.p_circ
        return P.lc() == 1 and P.compose_linear(-1, 1) == P and P(self.gamma_circ) != 0


def y2_check(d):
    """mu(-u)/mu(u) = (2u+1)/(2u-1) * P(u+1)/P(u) * (u-gamma)/(u+gamma)."""
    if not d.is_valid():
        return False
    g = d.gamma_circ
    P = RatFunc(d.p_circ)
    rhs = (2 * U + 1) / (2 * U - 1) * P.shift(1) / P * (U - g) / (U + g)
    return d.mu_circ.reflect(0) / d.mu_circ == rhs


def y2_from_so3(w):
    """Rank-one data (mu, P, gamma) with mu(2u-1) mu(2u) = mu_1(u)."""
    f = w.at(1).compose_linear(Fraction(1, 2), 0)
    mu = solve_product_shift(f, -1)
    if mu is None:
        raise NotClassifiable("mu_1 does not factor as mu(2u-1) mu(2u)")
    ratio = mu.reflect(0) / mu * (2 * U - 1) / (2 * U + 1)
    try:
        # (u-gamma)/(u+gamma) is minus the standard alpha-factor with l = m = 1
        P, gamma = solve_shift_quotient(-ratio, 1, 1, True)
    except NoSolution as e:
        raise NotClassifiable(str(e))
    return Y2Data(mu, P.poly, gamma)


# ---------------------------------------------------------------------------
# evaluation modules


def ev_so3_matrix(mu):
    """Image of S(u) for the one-dimensional module, F_11 acting as 2 mu."""
    pair = so3_pair()
    d = MultiRatFunc.const(pair.g_pole)
    F = 2 * _param(mu)
    acts = {-1: -F, 0: MultiRatFunc.const(0), 1: F}
    vals = {}
    for i in pair.indices:
        g = pair.g_diag(i)
        vals[i] = (MU * g - d + (d * F * F + MU * acts[i]) / (MU + d)) / (MU - d)
    return RFMatrix.diagonal(pair.indices, vals)


def ev_so3(mu):
    """(weight, x -> matrix) of the evaluation module V(mu)."""
    pair = so3_pair()
    m = to_rat(mu)
    d = pair.g_pole
    mu0 = -1 + 2 * d * (2 * m * m - (U + d)) / (U * U - d * d)
    mu1 = 1 + 2 * m * (U + 2 * d * m) / (U * U - d * d)
    M = ev_so3_matrix(m)
    return HighestWeight(pair, (mu0, mu1)), _at(M)


def ev_so4_matrix(mu1, mu2):
    """Image of S(u); at most one of mu1, mu2 may be symbolic."""
    pair = so4_pair()
    m1, m2 = _param(mu1), _param(mu2)
    acts = {1: m1, 2: m2, -1: -m1, -2: -m2}
    vals = {}
    for i in pair.indices:
        g = pair.g_diag(i)
        vals[i] = g + 2 * g * acts[i] / MU + (m1 * m1 - m2 * m2) / (MU * MU)
    return RFMatrix.diagonal(pair.indices, vals)


def ev_so4(mu1, mu2):
    pair = so4_pair()
    m1, m2 = to_rat(mu1), to_rat(mu2)
    c = m1 * m1 - m2 * m2
    mu = tuple(pair.g_diag(i) + 2 * pair.g_diag(i) * m / U + c / (U * U)
               for i, m in ((1, m1), (2, m2)))
    M = ev_so4_matrix(m1, m2)
    return HighestWeight(pair, mu), _at(M)


# ---------------------------------------------------------------------------
# classification data


def so3_tuple(w):
    """(P, alpha) with P(u) = P(3/2-u), P(alpha) != 0 and the half-step relation."""
    if w.pair.low_rank != "so3":
        raise UnsupportedPair("expected the pair (so3, so2)")
    try:
        t = associate(w)
    except NotAssociable as e:
        raise NotClassifiable(str(e))
    return t.polys[0], t.alpha


def so4_tuple(w):
    """(Q, P, alpha, beta), both polynomials centered at 2."""
    if w.pair.low_rank != "so4":
        raise UnsupportedPair("expected the pair (so4, so2+so2)")
    try:
        t = associate(w)
    except NotAssociable as e:
        raise NotClassifiable(str(e))
    return t.polys[0], t.polys[1], t.alpha, t.beta


def so3_tuple_from_y2(d):
    """P(u) = 2^-deg P0(2u-1) and alpha = (gamma+1)/2."""
    P = d.p_circ.compose_linear(2, -1)
    P = P * UniPoly.const(Fraction(1, 2) ** d.p_circ.degree)
    return P, (d.gamma_circ + 1) / 2


# ---------------------------------------------------------------------------
# one-dimensional modules


@dataclass(frozen=True)
class OneDimFamily:
    name: str
    parameters: tuple
    weight: object
    tuple: object

    def describe(self):
        return {"family": self.name, "parameters": list(self.parameters)}


def onedim_catalog(pair):
    """The family of one-dimensional modules of the pair, up to rescaling twists."""
    if pair.low_rank == "so3":
        return OneDimFamily("V(mu)", ("mu",), lambda m: ev_so3(m)[0],
                            lambda m: associate(ev_so3(m)[0]))
    if pair.low_rank == "so4":
        return OneDimFamily("V(mu1,mu2)", ("mu1", "mu2"), lambda a, b: ev_so4(a, b)[0],
                            lambda a, b: associate(ev_so4(a, b)[0]))
    if pair.algebra == "so" and pair.q == 2 and pair.N >= 5:
        def weight(a):
            return HighestWeight(pair, kmatrix_weight(pair, to_rat(a)))

        def tup(a):
            return DrinfeldTuple(pair.kappa - to_rat(a), trivial_tuple(pair).polys)

        return OneDimFamily("V(a)", ("a",), weight, tup)
    return OneDimFamily("trivial", (), lambda: trivial_weight(pair),
                        lambda: trivial_tuple(pair))


__all__ = [
    "Y2Data", "y2_check", "y2_from_so3", "ev_so3", "ev_so3_matrix", "ev_so4",
    "ev_so4_matrix", "so3_tuple", "so4_tuple", "so3_tuple_from_y2", "OneDimFamily",
    "onedim_catalog", "so3_pair", "so4_pair",
]
