from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from helpers import ROUND_TRIP_PAIRS, nu_equivalent, pairs, random_even, random_tuple, rng
from twyangian.drinfeld import (FINITE, NECESSARY, NOT_FINITE, DrinfeldTuple, HighestWeight,
                                SymPoly, associate, blocks, centers,
                                check_nontrivial, check_nontrivial_X, classify_finite_dim,
                                classify_many, finite_check, g_weight, g_weight_check,
                                integrality_check, normalize_w1, nu_twist,
                                poly2_reduce, psi_twist, psi_twist_weight, restrict_tuple,
                                restrict_weight, shift_quotient, solve_product_shift,
                                solve_shift_quotient, string_poly, string_set, synthesize,
                                tensor_compose, tilde, trivial_tuple, trivial_weight, untilde,
                                validate_tuple, yangian_drinfeld, yangian_weight)
from twyangian.errors import (BadShiftRange, NoRationalNormalizer, NoSolution,
                              NoSymmetricSquareRoot, NotAssociable, StringConditionViolated,
                              UnsupportedPair)
from twyangian.exactalg import RatFunc, UniPoly
from twyangian.reflection import gscr, kmatrix_weight
from twyangian.tensorrep import build_pair

u = RatFunc.u()
x = UniPoly.x()
BI51 = build_pair("BI", 5, 1)
DIA62 = build_pair("DIa", 6, 2)


def sym(center, *roots):
    return SymPoly(tuple(F(r) for r in roots), F(center))


def ones(pair):
    return tuple(SymPoly.one(c) for c in centers(pair))


# ---- tilde transform


def test_tilde_trivial_bi51():
    t = tilde(trivial_weight(BI51))
    assert t.at(0) == 2 * u * gscr(BI51)
    assert t.at(1) == 2 * u and t.at(2) == 2 * u


def test_tilde_last_component():
    w = trivial_weight(DIA62)
    assert tilde(w).at(3) == 2 * u * w.at(3)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def proper_weights(draw, pair):
    mu = []
    for _ in pair.pos_indices:
        r = draw(small)
        s = draw(small)
        mu.append(RatFunc(UniPoly([r, 1]), UniPoly([s, 1])))
    return HighestWeight(pair, tuple(mu))


@given(proper_weights(BI51))
@settings(max_examples=50, deadline=None)
def test_untilde_inverts_tilde_odd(w):
    assert untilde(tilde(w)) == w


@given(proper_weights(DIA62))
@settings(max_examples=50, deadline=None)
def test_untilde_inverts_tilde_even(w):
    assert untilde(tilde(w)) == w


# ---- non-triviality


@pytest.mark.parametrize("pair", pairs(ROUND_TRIP_PAIRS), ids=lambda p: p.label())
def test_trivial_weight_is_nontrivial(pair):
    assert check_nontrivial(trivial_weight(pair))


def test_kmatrix_weight_is_nontrivial():
    w = HighestWeight(DIA62, kmatrix_weight(DIA62, F(1, 2)))
    assert check_nontrivial(w)


def test_perturbed_weight_fails():
    w = trivial_weight(DIA62)
    mu = list(w.mu)
    mu[0] = mu[0] * (1 + 1 / u)
    assert not check_nontrivial(HighestWeight(DIA62, tuple(mu)))


def test_nontrivial_x_examples():
    pair = build_pair("DIa", 8, 2)
    ones_w = HighestWeight(pair, (RatFunc.const(1),) * len(pair.indices), yangian=True)
    assert check_nontrivial_X(ones_w)
    lam = yangian_weight(pair, [x - 1, UniPoly.const(1), x + F(1, 2), (x - 2) * (x - 3)])
    assert check_nontrivial_X(lam)
    mu = list(ones_w.mu)
    mu[pair.indices.index(1)] = (u + 1) / u
    assert not check_nontrivial_X(HighestWeight(pair, tuple(mu), yangian=True))


def test_yangian_drinfeld_recovers_q():
    pair = build_pair("BI", 7, 2)
    Q = [x - 1, (x + F(1, 2)) * (x - 3), UniPoly.const(1)]
    assert yangian_drinfeld(yangian_weight(pair, Q)) == Q


# ---- strings and shift quotients


def test_string_set_examples():
    assert string_set(F(7, 4), F(3, 4)) == [F(3, 4)]
    assert string_set(1, 3) == []
    assert string_set(2, F(1, 2)) == []
    assert string_set(4, 1) == [1, 2, 3]


def test_solve_shift_quotient_telescoping():
    P, a = solve_shift_quotient((u - 1) / (u - 3), 1, 5, False)
    assert a is None and P == sym(5, 2, 3)


def test_solve_shift_quotient_no_solution():
    with pytest.raises(NoSolution):
        solve_shift_quotient((u - 1) * (u - 4) / ((u - 2) * (u - 3)), 1, 5, False)


def test_solve_shift_quotient_constant():
    P, a = solve_shift_quotient(RatFunc.const(1), F(1, 2), 7, False)
    assert P.degree == 0 and a is None


def test_solve_shift_quotient_alpha():
    P, a = solve_shift_quotient((F(5, 4) - u) / (u - F(3, 4)), F(1, 2), F(5, 2), True)
    assert P.degree == 0 and a == F(5, 4)


def test_solve_shift_quotient_round_trip():
    P = sym(3, F(1, 2), F(5, 2), 1, 2)
    assert solve_shift_quotient(shift_quotient(P, 1), 1, 3, False) == (P, None)
    assert solve_shift_quotient(shift_quotient(P, 1, F(3, 4)), 1, 3, True) == (P, F(3, 4))


# ---- association


def test_associate_trivial_bi51():
    assert associate(trivial_weight(BI51)) == DrinfeldTuple(F(5, 4), ones(BI51))


def test_associate_kmatrix_weight_dia62():
    w = HighestWeight(DIA62, kmatrix_weight(DIA62, F(1, 2)))
    assert associate(w) == DrinfeldTuple(F(3, 2), ones(DIA62))


def test_associate_rejects_trivial_verma():
    w = trivial_weight(DIA62)
    mu = list(w.mu)
    mu[0] = mu[0] * (1 + 1 / u)
    with pytest.raises(NotAssociable):
        associate(HighestWeight(DIA62, tuple(mu)))


@pytest.mark.parametrize("pair", pairs(ROUND_TRIP_PAIRS), ids=lambda p: p.label())
def test_trivial_tuple_and_weight(pair):
    assert associate(trivial_weight(pair)) == trivial_tuple(pair)


def test_validate_tuple_reasons():
    t = DrinfeldTuple(F(1, 2), (sym(3), sym(3), sym(2, F(1, 2), F(3, 2))))
    assert validate_tuple(DIA62, t) == ["alpha is a root of P_3"]
    t = DrinfeldTuple(F(3, 2), (sym(3), sym(4), sym(2)))
    assert validate_tuple(DIA62, t) == ["P_2 has center 4, expected 3"]
    assert validate_tuple(DIA62, DrinfeldTuple(None, ones(DIA62))) == ["missing alpha"]


# ---- synthesize


@pytest.mark.parametrize("pair", pairs(ROUND_TRIP_PAIRS), ids=lambda p: p.label())
def test_synthesize_trivial_tuple(pair):
    w = synthesize(pair, trivial_tuple(pair))
    assert nu_equivalent(w, trivial_weight(pair))


@pytest.mark.parametrize("a", [0, F(1, 2), F(-3, 4)])
def test_synthesize_one_dimensional_family(a):
    pair = build_pair("BI", 5, 2)
    t = DrinfeldTuple(F(3, 2) - a, ones(pair))
    w = synthesize(pair, t)
    assert nu_equivalent(w, HighestWeight(pair, kmatrix_weight(pair, a)))


def test_synthesize_round_trip_dia62():
    t = DrinfeldTuple(F(3, 2), (sym(3), sym(3, 1, 2), sym(2)))
    w = synthesize(DIA62, t, check=True)
    assert check_nontrivial(w)
    assert associate(w) == t


def test_synthesize_odd_self_centered_root():
    t = DrinfeldTuple(F(3, 2), (sym(3), sym(3, F(3, 2)), sym(2)))
    with pytest.raises(NoSymmetricSquareRoot):
        synthesize(DIA62, t)


def test_synthesize_rejects_so4():
    with pytest.raises(UnsupportedPair):
        synthesize(build_pair("DIa", 4, 2), trivial_tuple(build_pair("DIa", 4, 2)))


@pytest.mark.parametrize("key", [("BI", 7, 2), ("DIa", 8, 4), ("CII", 6, 2), ("BCD0", 6, 0, "sp")])
def test_round_trip_random(key):
    pair = build_pair(*key)
    r = rng(11)
    for _ in range(15):
        t = random_tuple(pair, r)
        w = synthesize(pair, t)
        assert check_nontrivial(w)
        assert associate(w) == t


def test_associate_nu_invariant():
    r = rng(5)
    for pair in pairs([("BI", 5, 1), ("DIa", 6, 2), ("CII", 8, 2)]):
        w = synthesize(pair, random_tuple(pair, r))
        for _ in range(5):
            assert associate(nu_twist(w, random_even(r))) == associate(w)


# ---- classification


def test_classify_string_condition_holds():
    t = DrinfeldTuple(F(7, 4), (sym(F(5, 2)), sym(2, F(3, 4), F(5, 4))))
    assert classify_finite_dim(BI51, t).verdict == FINITE


def test_classify_string_condition_fails():
    v = classify_finite_dim(BI51, DrinfeldTuple(F(7, 4), ones(BI51)))
    assert v.verdict == NOT_FINITE
    assert "string" in v.violations[0]


def test_classify_necessary_only():
    pair = build_pair("CII", 8, 2)
    v = classify_finite_dim(pair, trivial_tuple(pair))
    assert v.verdict == NECESSARY and v.violations == []


def test_classify_weight_and_batch():
    w = trivial_weight(BI51)
    v = classify_finite_dim(BI51, w)
    assert v.verdict == FINITE and v.tuple == DrinfeldTuple(F(5, 4), ones(BI51))
    items = [w, DrinfeldTuple(F(7, 4), ones(BI51)), trivial_tuple(BI51)]
    serial = [v.to_json() for v in classify_many(BI51, items)]
    threaded = [v.to_json() for v in classify_many(BI51, items, jobs=3)]
    assert serial == threaded
    assert [v["verdict"] for v in serial] == [FINITE, NOT_FINITE, FINITE]


def test_classify_alpha_off_lattice():
    v = classify_finite_dim(BI51, DrinfeldTuple(F(1, 3), ones(BI51)))
    assert v.verdict == NOT_FINITE


@pytest.mark.parametrize("key", [("BI", 5, 2), ("DIa", 6, 2), ("BCD0", 5, 0, "so")])
def test_classify_q2_and_bcd0_are_finite(key):
    pair = build_pair(*key)
    assert classify_finite_dim(pair, trivial_tuple(pair)).verdict == FINITE


def test_classify_invalid_tuple():
    v = classify_finite_dim(DIA62, DrinfeldTuple(None, ones(DIA62)))
    assert v.verdict == NOT_FINITE and v.violations == ["missing alpha"]


# ---- poly2_reduce


def test_poly2_reduce_examples():
    P = sym(3, 1, 2)
    assert poly2_reduce(P, F(1, 2), 1) == (0, P)
    assert poly2_reduce(sym(3, F(3, 4), F(9, 4)), F(3, 4), 1) == (1, sym(3))
    m, a = F(1, 2), F(3, 4)
    P = sym(3, a, a - m, 3 - a, 3 - a + m)
    assert poly2_reduce(P, a, m) == (2, sym(3))


@given(st.integers(0, 3), st.fractions(min_value=-3, max_value=3, max_denominator=4),
       st.sampled_from([F(1, 2), F(1)]), st.integers(1, 5),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=2), max_size=3))
@settings(max_examples=100, deadline=None)
def test_poly2_reduce_identity(k, a, m, l, extra):
    roots = []
    for j in range(k):
        roots += [a - j * m, l - a + j * m]
    for r in extra:
        roots += [r, l - r]
    P = SymPoly(tuple(roots), l)
    ell, red = poly2_reduce(P, a, m)
    assert ell >= k
    assert red.poly(a - m * ell) != 0
    Q = UniPoly.const(1)
    for j in range(ell):
        Q = Q * (x - a + j * m) * (x - l + a - j * m)
    assert red.poly * Q == P.poly
    assert shift_quotient(P, m, a) == shift_quotient(red, m, a - m * ell)


# ---- tensor composition


def test_tensor_compose_identity():
    t = DrinfeldTuple(F(3, 2), (sym(3), sym(3, 1, 2), sym(2)))
    assert tensor_compose(DIA62, [UniPoly.const(1)] * 3, t) == t


def test_tensor_compose_linear_factor():
    b = F(1, 3)
    t = tensor_compose(DIA62, [UniPoly.const(1), x - b, UniPoly.const(1)], trivial_tuple(DIA62))
    # (-1)(u - 1 - b)(-u + 3 - 1 - b) with kappa = 2 and center 3
    assert t == DrinfeldTuple(F(3, 2), (sym(3), sym(3, 1 + b, 2 - b), sym(2)))


def test_tensor_compose_collision():
    # Q_3 = u - 1/2 puts 3/2 and 1/2 into P_3 and alpha = 3/2 collides; one reduction
    # step with m = 1 removes both roots and moves alpha to 1/2
    Q = [UniPoly.const(1), UniPoly.const(1), x - F(1, 2)]
    t = tensor_compose(DIA62, Q, trivial_tuple(DIA62))
    assert t == DrinfeldTuple(F(1, 2), ones(DIA62))


def test_tensor_compose_matches_tensor_weight():
    from twyangian.drinfeld import tensor_weight
    r = rng(3)
    for pair in pairs([("BI", 5, 1), ("DIa", 6, 2), ("CII", 6, 2)]):
        for _ in range(5):
            t = random_tuple(pair, r, max_degree=4)
            Q = [UniPoly.from_roots([F(r.randint(-6, 6), 2)]) if r.random() < 0.5
                 else UniPoly.const(1) for _ in range(pair.n)]
            w = tensor_weight(synthesize(pair, t), yangian_weight(pair, Q))
            assert associate(w) == tensor_compose(pair, Q, t)


# ---- restriction


def test_restrict_trivial_bi71():
    pair = build_pair("BI", 7, 1)
    red, t = restrict_tuple(pair, trivial_tuple(pair), 1)
    assert red == BI51
    assert t == trivial_tuple(BI51) and t.alpha == F(5, 4)


def test_restrict_composes():
    pair = build_pair("BI", 9, 1)
    t = random_tuple(pair, rng(2))
    red1, t1 = restrict_tuple(pair, t, 1)
    red2, t2 = restrict_tuple(red1, t1, 2)
    red3, t3 = restrict_tuple(pair, t, 3)
    assert red2 == red3 and t2 == t3


def test_restrict_centers():
    pair = build_pair("DIa", 8, 2)
    red, t = restrict_tuple(pair, random_tuple(pair, rng(4)), 1)
    assert [P.center for P in t.polys] == centers(red)


def test_restrict_bad_range():
    with pytest.raises(BadShiftRange):
        restrict_tuple(build_pair("BI", 7, 1), trivial_tuple(build_pair("BI", 7, 1)), 3)


@pytest.mark.parametrize("key", [("BI", 7, 1), ("DIa", 8, 2)])
def test_restriction_coherence(key):
    pair = build_pair(*key)
    r = rng(8)
    from twyangian.reflection import shift_range
    for _ in range(5):
        t = random_tuple(pair, r)
        w = synthesize(pair, t)
        for m in shift_range(pair):
            red, expected = restrict_tuple(pair, t, m)
            assert associate(restrict_weight(pair, w, m)) == expected


# ---- the swap twist


def test_psi_twist_fixed_point():
    t = DrinfeldTuple(F(5, 4), (sym(F(5, 2)), sym(2, 0, 2)))
    assert psi_twist(BI51, t) == t


def test_psi_twist_example_and_inverse():
    t = DrinfeldTuple(F(3, 4), ones(BI51))
    s = psi_twist(BI51, t)
    assert s == DrinfeldTuple(F(7, 4), (sym(F(5, 2)), sym(2, F(3, 4), F(5, 4))))
    assert psi_twist(BI51, s) == t


def test_psi_twist_string_violation():
    with pytest.raises(StringConditionViolated):
        psi_twist(BI51, DrinfeldTuple(F(7, 4), ones(BI51)))


def test_psi_twist_requires_q1():
    with pytest.raises(UnsupportedPair):
        psi_twist(DIA62, trivial_tuple(DIA62))


def test_string_poly_roots():
    # alpha = 9/4 on N = 5: S(9/4, 1/4) and S(11/4, 3/4)
    assert string_poly(BI51, F(9, 4)).roots == (F(1, 4), F(3, 4), F(5, 4), F(7, 4))


def test_psi_twist_weight_fixed_point():
    w = trivial_weight(BI51)
    assert psi_twist_weight(w) == w


@pytest.mark.parametrize("key", [("BI", 3, 1), ("BI", 5, 1), ("BI", 7, 1)])
def test_psi_twist_commuting_square(key):
    pair = build_pair(*key)
    r = rng(13)
    done = 0
    while done < 5:
        t = random_tuple(pair, r, max_degree=4)
        t = DrinfeldTuple(F(pair.N, 4) + F(r.randint(-2, 2), 2), t.polys)
        if validate_tuple(pair, t) or classify_finite_dim(pair, t).verdict != FINITE:
            continue
        w = synthesize(pair, t)
        assert associate(psi_twist_weight(w)) == psi_twist(pair, t)
        assert nu_equivalent(psi_twist_weight(psi_twist_weight(w)), w)
        done += 1


# ---- weights of the fixed-point subalgebra


def test_g_weight_trivial_tuple():
    for pair in pairs([("BI", 7, 2), ("CII", 8, 2), ("DIa", 8, 4)]):
        assert all(c == 0 for c in g_weight(pair, trivial_tuple(pair)))


def test_g_weight_alpha_only():
    t = DrinfeldTuple(F(3, 2) + 2, ones(build_pair("BI", 7, 2)))
    # split rank 1 and lead rank 2, so only mu_3 = alpha - 7/4 is nonzero
    assert g_weight(build_pair("BI", 7, 2), t) == (0, 0, F(7, 4))


@pytest.mark.parametrize("a", [0, F(1, 2), F(-3, 4)])
def test_g_weight_one_dimensional_family(a):
    t = DrinfeldTuple(DIA62.kappa - a, ones(DIA62))
    assert g_weight(DIA62, t)[2] == F(1, 2) - a


def test_g_weight_degrees():
    pair = build_pair("CII", 8, 2)
    t = DrinfeldTuple(F(2), (sym(7, 3, 4), sym(4, 1, 3), sym(3), sym(2, 0, 2)))
    # A = deg P_1 = 2 for sp; lead rank 3 and alpha = N/4
    assert g_weight(pair, t) == (-1, -2, -2, -3)


def test_finite_check_rules():
    assert finite_check([F(-1, 2), F(-1, 2)], "so5")
    assert finite_check([0, -1], "so5")
    assert not finite_check([-1, 0], "so5")
    assert not finite_check([F(-1, 4)], "so3")
    assert finite_check([-1, -1], "sp4") and not finite_check([F(1, 2)], "sp2")
    assert finite_check([1, -1], "so4") and not finite_check([1, 1], "so4")
    assert finite_check([F(7, 3)], "so2")


def test_blocks():
    assert blocks(DIA62) == [("so4", [1, 2]), ("so2", [3])]
    assert blocks(build_pair("CII", 8, 2)) == [("sp6", [1, 2, 3]), ("sp2", [4])]


def test_integrality_check():
    pair = build_pair("BI", 7, 3)
    assert integrality_check(pair, trivial_tuple(pair)) == []
    bad = DrinfeldTuple(F(7, 4) + F(1, 3), ones(pair))
    assert "not an integer" in integrality_check(pair, bad)[0]
    big = DrinfeldTuple(F(7, 4) + 1, ones(pair))
    assert "exceeds" in integrality_check(pair, big)[0]


def test_g_weight_check_reports():
    pair = build_pair("CII", 8, 2)
    assert g_weight_check(pair, trivial_tuple(pair)) == []
    t = DrinfeldTuple(F(2) + F(1, 3), ones(pair))
    assert g_weight_check(pair, t)


# ---- rescaling and normalization


def test_nu_twist_identity_and_guard():
    w = trivial_weight(DIA62)
    assert nu_twist(w, RatFunc.const(1)) == w
    with pytest.raises(ValueError):
        nu_twist(w, (u + 1) / u)


def test_normalize_w1_undoes_twist():
    w = trivial_weight(BI51)
    g = (u * u - 4) / (u * u - F(1, 9))
    h, out = normalize_w1(nu_twist(w, g))
    assert h * g == 1
    assert out == w


def test_normalize_w1_non_rational():
    pair = build_pair("BI", 5, 1)
    mu = list(trivial_weight(pair).mu)
    mu[-1] = (u + 1) / (u + F(1, 3))
    w = HighestWeight(pair, tuple(mu))
    with pytest.raises(NoRationalNormalizer) as e:
        normalize_w1(w, order=6)
    # 1/w = 1 + (8/9)u^-2 + ..., so a = 1 + (4/9)u^-2 + ... to second order
    a = e.value.series
    assert len(a) == 7 and a[:3] == [1, 0, F(4, 9)]


def test_solve_product_shift():
    a = (u - 1) / (u + 2)
    assert solve_product_shift(a * a.shift(3), 3) == a
    assert solve_product_shift(a * a.shift(-2), -2) == a
    assert solve_product_shift((u - 1) / (u + 2), 1) is None
