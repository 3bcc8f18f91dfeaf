"""One-dimensional modules of (so6, so4+so2) and their Drinfeld tuples.

Run: python demos/one_dimensional_modules.py
"""

from fractions import Fraction

from twyangian.drinfeld import associate, classify_finite_dim, g_weight
from twyangian.lowrank import onedim_catalog
from twyangian.reflection import check_reflection_equation, kmatrix
from twyangian.tensorrep import build_pair

pair = build_pair("DIa", 6, 2)
fam = onedim_catalog(pair)
print(pair.label(), fam.describe())

# the K-matrix solves the reflection equation with the parameter kept symbolic
print("RE for K(u;a), a symbolic:", check_reflection_equation(pair, kmatrix(pair)).holds)

for a in [Fraction(0), Fraction(1, 2), Fraction(-3, 4), Fraction(5, 3)]:
    w = fam.weight(a)
    t = associate(w)
    v = classify_finite_dim(pair, w)
    print("a = %-5s tuple %-20s verdict %-10s fixed-point weight %s"
          % (a, t.pretty(), v.verdict, [str(x) for x in g_weight(pair, t)]))
