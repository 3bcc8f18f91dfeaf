import random
from fractions import Fraction as F

import pytest

from twyangian.errors import UnsupportedPair
from twyangian.exactalg import MultiRatFunc, mrf_equal
from twyangian.tensorrep import (RFMatrix, build_pair, gmatrices, parse_pair, perm_and_proj,
                                 rmatrix, swap_matrix, transpose_t)

U = MultiRatFunc.var("u")

ALL_PAIRS = [("BI", 3, 1), ("BI", 5, 1), ("BI", 5, 2), ("BI", 7, 3), ("DIa", 4, 2),
             ("DIa", 6, 2), ("DIa", 8, 4), ("CII", 4, 2), ("CII", 8, 2), ("BCD0", 5, 0, "so"),
             ("BCD0", 6, 0, "so"), ("BCD0", 4, 0, "sp")]


def pairs():
    return [build_pair(*p) for p in ALL_PAIRS]


def const(M, c):
    return M.scale(MultiRatFunc.const(c))


# ---- build_pair


def test_build_pair_bi51():
    p = build_pair("BI", 5, 1)
    assert (p.n, p.kappa, p.g_pole, p.split_rank, p.lead_rank, p.delta) == (2, F(3, 2), F(3, 4), 2, 0, 0)


def test_build_pair_dia62():
    p = build_pair("DIa", 6, 2)
    assert (p.n, p.kappa, p.g_pole, p.split_rank, p.lead_rank, p.delta) == (3, 2, F(1, 2), 1, 2, 0)


def test_build_pair_rejects_dib():
    with pytest.raises(UnsupportedPair):
        build_pair("DIb", 6, 3)
    with pytest.raises(UnsupportedPair):
        build_pair("DIa", 6, 3)


@pytest.mark.parametrize("bad", [("BI", 6, 1), ("CII", 6, 3), ("CII", 5, 2), ("BI", 5, 4),
                                 ("XX", 5, 1), ("BCD0", 5, 0, "sp")])
def test_build_pair_rejects_inconsistent(bad):
    with pytest.raises(UnsupportedPair):
        build_pair(*bad)


def test_symplectic_kappa():
    assert build_pair("CII", 8, 2).kappa == 5
    assert build_pair("BCD0", 4, 0, "sp").kappa == 3


@pytest.mark.parametrize("text,key", [
    ("so5/so4", ("BI", 5, 1)), ("so6/so4+so2", ("DIa", 6, 2)), ("sp8/sp6+sp2", ("CII", 8, 2)),
    ("so3", ("BI", 3, 1)), ("so4", ("DIa", 4, 2)), ("so7", ("BCD0", 7, 0)),
    ("so7/so3+so4", ("BI", 7, 3)),
])
def test_parse_pair_shorthand(text, key):
    p = parse_pair(text)
    assert (p.family, p.N, p.q) == key


def test_parse_pair_dict():
    assert parse_pair({"family": "DIa", "N": 6, "q": 2}) == build_pair("DIa", 6, 2)


# ---- P and Q


@pytest.mark.parametrize("pair", pairs(), ids=lambda p: p.label())
def test_p_and_q_relations(pair):
    P, Q = perm_and_proj(pair)
    labels = P.labels
    assert (P @ P).equals(RFMatrix.identity(labels))
    assert (P @ Q).equals(const(Q, pair.sign))
    assert (Q @ P).equals(const(Q, pair.sign))
    assert (Q @ Q).equals(const(Q, pair.N))


def test_symplectic_qp_is_minus_q():
    P, Q = perm_and_proj(build_pair("BCD0", 4, 0, "sp"))
    assert (Q @ P).equals(const(Q, -1))


# ---- R(u)


def test_rmatrix_entries_n3():
    R = rmatrix(build_pair("BCD0", 3, 0, "so"))("u")
    # values from an independent expansion of P and Q for N = 3
    assert mrf_equal(R[((1, 1), (1, 1))], (U - 1) / U)
    assert mrf_equal(R[((1, -1), (1, -1))], (2 * U + 1) / (2 * U - 1))
    assert mrf_equal(R[((1, -1), (-1, 1))], 1 / (U * (2 * U - 1)))
    assert mrf_equal(R[((0, 0), (0, 0))], (U * (2 * U - 1) + 1) / (U * (2 * U - 1)))


def test_rmatrix_unitarity_n3():
    pair = build_pair("BCD0", 3, 0, "so")
    R = rmatrix(pair)
    prod = R("u") @ R(-U)
    assert prod.equals(RFMatrix.identity(prod.labels).scale((U * U - 1) / (U * U)))


def test_rmatrix_q_pole():
    pair = build_pair("BI", 5, 1)
    R = rmatrix(pair)("u")
    P, Q = perm_and_proj(pair)
    rest = R - RFMatrix.identity(P.labels) + P.scale(1 / U)
    assert rest.equals(Q.scale(1 / (U - pair.kappa)))


# ---- G and G(u)


def test_g_bi51():
    pair = build_pair("BI", 5, 1)
    G, _ = gmatrices(pair)
    assert [G[(i, i)] for i in pair.indices] == [1, 1, -1, 1, 1]
    assert G.is_diagonal()


def test_g_u_so3():
    pair = build_pair("BI", 3, 1)
    _, Gu = gmatrices(pair)
    d = F(1, 4)
    assert mrf_equal(Gu("u")[(0, 0)], (d + U) / (d - U))


def test_g_u_constant_when_p_equals_q():
    pair = build_pair("CII", 4, 2)
    G, Gu = gmatrices(pair)
    assert Gu("u").equals(G)


@pytest.mark.parametrize("pair", pairs(), ids=lambda p: p.label())
def test_g_involution_and_symmetric(pair):
    G, Gu = gmatrices(pair)
    assert (G @ G).equals(RFMatrix.identity(pair.indices))
    assert transpose_t(pair, G).equals(G)
    prod = Gu("u") @ Gu(-U)
    w0 = prod[(pair.indices[0], pair.indices[0])]
    assert prod.equals(RFMatrix.identity(pair.indices).scale(w0))
    assert mrf_equal(w0, w0.subs({"u": -U}))


@pytest.mark.parametrize("N", [3, 5, 7, 9])
def test_swap_matrix_preserves_g(N):
    pair = build_pair("BI", N, 1)
    G, _ = gmatrices(pair)
    A = swap_matrix(pair)
    assert (A @ G @ transpose_t(pair, A)).equals(G)


# ---- transposition


def test_transpose_unit_matrices():
    for fam in [("BCD0", 4, 0, "so"), ("BCD0", 4, 0, "sp")]:
        pair = build_pair(*fam)
        E12 = RFMatrix(pair.indices, {(1, 2): 1})
        assert transpose_t(pair, E12).equals(RFMatrix(pair.indices, {(-2, -1): 1}))


def _random_matrix(pair, rng):
    ent = {}
    for i in pair.indices:
        for j in pair.indices:
            if rng.random() < 0.5:
                ent[(i, j)] = MultiRatFunc.const(F(rng.randint(-4, 4), rng.randint(1, 3))) \
                    + U * rng.randint(-2, 2)
    return RFMatrix(pair.indices, ent)


@pytest.mark.parametrize("fam", [("BCD0", 5, 0, "so"), ("BCD0", 6, 0, "sp"), ("DIa", 6, 2)])
def test_transpose_involution_and_antihomomorphism(fam):
    pair = build_pair(*fam)
    rng = random.Random(7)
    for _ in range(10):
        M, N = _random_matrix(pair, rng), _random_matrix(pair, rng)
        assert transpose_t(pair, transpose_t(pair, M)).equals(M)
        assert transpose_t(pair, M @ N).equals(transpose_t(pair, N) @ transpose_t(pair, M))


def test_matrix_json_round_trip():
    pair = build_pair("BI", 5, 1)
    M = gmatrices(pair)[1]("u")
    assert RFMatrix.from_json(M.to_json(), pair.indices).equals(M)
