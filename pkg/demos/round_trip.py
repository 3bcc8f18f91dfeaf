"""Build weights from Drinfeld tuples and read the tuples back.

Run: python demos/round_trip.py
"""

import random
from fractions import Fraction

from twyangian.drinfeld import DrinfeldTuple, SymPoly, associate, centers, synthesize
from twyangian.exactalg import UniPoly
from twyangian.drinfeld import tensor_compose, trivial_tuple
from twyangian.tensorrep import build_pair

rng = random.Random(1)
for key in [("BI", 7, 1), ("DIa", 8, 2), ("CII", 6, 2), ("BCD0", 5, 0, "so")]:
    pair = build_pair(*key)
    polys = []
    for c in centers(pair):
        r = Fraction(rng.randint(-6, 6), 2)
        polys.append(SymPoly((r, c - r), c) if rng.random() < 0.6 else SymPoly.one(c))
    alpha = None if pair.family == "BCD0" else Fraction(pair.N, 4) + Fraction(1, 4)
    t = DrinfeldTuple(alpha, tuple(polys))
    w = synthesize(pair, t)
    print("%-14s %-36s -> %s" % (pair.label(), t.pretty(), associate(w).pretty()))
    print("    mu_n(u) =", w.mu[-1])

# a collision: alpha becomes a root of the composed polynomial and is reduced
pair = build_pair("DIa", 6, 2)
Q = [UniPoly.const(1), UniPoly.const(1), UniPoly([Fraction(-1, 2), 1])]
print("tensor with Q_3 = u - 1/2:", tensor_compose(pair, Q, trivial_tuple(pair)).pretty())
