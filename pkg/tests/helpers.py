"""Shared generators and comparisons for the test suite."""

import random
from fractions import Fraction

from twyangian.drinfeld import DrinfeldTuple, SymPoly, alpha_index, centers
from twyangian.errors import UnsupportedPair
from twyangian.exactalg import RatFunc, UniPoly
from twyangian.tensorrep import build_pair

# every pair with N <= 9 on which synthesize is defined
ROUND_TRIP_PAIRS = [
    ("BI", 3, 1), ("BI", 5, 1), ("BI", 5, 2), ("BI", 7, 1), ("BI", 7, 2), ("BI", 7, 3),
    ("BI", 9, 1), ("BI", 9, 2), ("BI", 9, 3), ("BI", 9, 4), ("DIa", 6, 2), ("DIa", 8, 2),
    ("DIa", 8, 4), ("CII", 4, 2), ("CII", 6, 2), ("CII", 8, 2), ("CII", 8, 4),
    ("BCD0", 3, 0, "so"), ("BCD0", 4, 0, "so"), ("BCD0", 5, 0, "so"), ("BCD0", 6, 0, "so"),
    ("BCD0", 7, 0, "so"), ("BCD0", 8, 0, "so"), ("BCD0", 9, 0, "so"), ("BCD0", 2, 0, "sp"),
    ("BCD0", 4, 0, "sp"), ("BCD0", 6, 0, "sp"), ("BCD0", 8, 0, "sp"),
]


def pair_id(p):
    return p.label()


def random_tuple(pair, rng, max_degree=6, reach=5):
    """Tuple with roots in Z/2 and total degree at most max_degree.

    Roots r and center - r are drawn as a pair, so each P_i is symmetric; a
    self-centered root is always added twice.
    """
    budget = max_degree // 2
    polys = []
    for c in centers(pair):
        k = rng.randint(0, budget)
        budget -= k
        roots = []
        for _ in range(k):
            while True:
                r = Fraction(rng.randint(-2 * reach, 2 * reach), 2)
                s = c - r
                if abs(s) <= reach:
                    roots += [r, s]
                    break
        polys.append(SymPoly(tuple(roots), c))
    ai = alpha_index(pair)
    if ai is None:
        return DrinfeldTuple(None, tuple(polys))
    while True:
        a = Fraction(rng.randint(-2 * reach, 2 * reach), 2) + Fraction(rng.randint(0, 3), 4)
        if a not in polys[ai - 1].zeros():
            return DrinfeldTuple(a, tuple(polys))


def random_even(rng, max_degree=4):
    """An even rational function with value 1 at infinity."""
    def half(k):
        roots = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(k)]
        P = UniPoly.const(1)
        for r in roots:
            P = P * UniPoly([-r * r, 0, 1])
        return P
    k = rng.randint(0, max_degree // 2)
    return RatFunc(half(k), half(k)) \
        if rng.random() < 0.9 else RatFunc.const(1)


def nu_equivalent(w1, w2):
    """True if w1 = g(u - kappa/2) w2 for an even g with g(inf) = 1."""
    if w1.pair != w2.pair:
        return False
    r = w1.mu[0] / w2.mu[0]
    if any(a / b != r for a, b in zip(w1.mu, w2.mu)):
        return False
    g = r.shift(w1.pair.kappa / 2)
    return g.reflect(0) == g and g.value_at_infinity() == 1


def rng(seed):
    return random.Random(seed)


def pairs(keys):
    return [build_pair(*k) for k in keys]


def pairs_upto(nmax, with_bcd0=True):
    """Every supported pair with 3 <= N <= nmax."""
    out = []
    for N in range(3, nmax + 1):
        for q in range(1, N // 2 + 1):
            for fam in ("BI", "DIa", "CII"):
                try:
                    out.append(build_pair(fam, N, q))
                except UnsupportedPair:
                    pass
        if with_bcd0:
            out.append(build_pair("BCD0", N, 0, "so"))
            if N % 2 == 0:
                out.append(build_pair("BCD0", N, 0, "sp"))
    return out


# acceptance results, keyed by criterion number: (status, title, seconds)
ACCEPTANCE = {}
