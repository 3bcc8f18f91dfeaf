"""The swap twist on (so5, so4): tuples, the string condition and weights.

Run: python demos/swap_twist.py
"""

from fractions import Fraction

from twyangian.drinfeld import (DrinfeldTuple, SymPoly, associate, classify_finite_dim,
                                psi_twist, psi_twist_weight, string_set, synthesize)
from twyangian.errors import StringConditionViolated
from twyangian.tensorrep import build_pair

pair = build_pair("BI", 5, 1)
one1, one2 = SymPoly.one(Fraction(5, 2)), SymPoly.one(2)

t = DrinfeldTuple(Fraction(3, 4), (one1, one2))
s = psi_twist(pair, t)
print("twist", t.pretty(), "->", s.pretty(), "->", psi_twist(pair, s).pretty())

a = Fraction(7, 4)
print("strings for alpha = 7/4:", [str(x) for x in string_set(a, Fraction(5, 2) - a)],
      [str(x) for x in string_set(a + Fraction(1, 2), 3 - a)])
for cand in [s, DrinfeldTuple(a, (one1, one2))]:
    v = classify_finite_dim(pair, cand)
    print("classify", cand.pretty(), v.verdict, v.violations)
try:
    psi_twist(pair, DrinfeldTuple(a, (one1, one2)))
except StringConditionViolated as e:
    print("twist refused:", e)

# the same twist acting on a highest weight commutes with association
w = synthesize(pair, s)
print("associate(twisted weight) =", associate(psi_twist_weight(w)).pretty())
