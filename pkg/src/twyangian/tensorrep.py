"""Symmetric pairs, signed index sets and the constant operators P, Q, R(u).

Matrices are indexed by the signed labels -n..-1, (0), 1..n directly.
Operators on the tensor square are indexed by label pairs (i, k).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedPair
from .exactalg import MultiPoly, MultiRatFunc, mrf_equal, mrf_to_json, mrf_from_json

FAMILIES = ("BI", "CII", "DIa", "BCD0")


@dataclass(frozen=True)
class SymmetricPair:
    family: str
    N: int
    q: int
    algebra: str
    low_rank: str = ""

    @property
    def n(self):
        return self.N // 2

    @property
    def p(self):
        return self.N - self.q

    @property
    def symplectic(self):
        return self.algebra == "sp"

    @property
    def delta(self):
        return 1 if self.symplectic else 0

    @property
    def sign(self):
        """+1 for orthogonal (upper signs), -1 for symplectic."""
        return -1 if self.symplectic else 1

    @property
    def kappa(self):
        return Fraction(self.N, 2) + (1 if self.symplectic else -1)

    @property
    def g_pole(self):
        return Fraction(self.p - self.q, 4)

    @property
    def odd(self):
        return self.N % 2 == 1

    @property
    def split_rank(self):
        """Rank of the lower block: the pair restricts to g_{N-2l} + g_{2l}."""
        if self.family == "BCD0":
            return 0
        if self.family == "BI" and self.q % 2 == 1:
            return (self.N - self.q) // 2
        return self.q // 2

    @property
    def lead_rank(self):
        return self.n - self.split_rank

    @property
    def bracket_sign(self):
        """Sign selecting the bracketed alternative; lower only for BI with q odd."""
        return -1 if self.family == "BI" and self.q % 2 == 1 else 1

    @property
    def indices(self):
        out = list(range(-self.n, 0))
        if self.odd:
            out.append(0)
        out.extend(range(1, self.n + 1))
        return out

    @property
    def pos_indices(self):
        return ([0] if self.odd else []) + list(range(1, self.n + 1))

    def g_diag(self, i):
        """Diagonal entry of the involution matrix at label i."""
        a = abs(i)
        if self.family == "BCD0":
            return 1
        if self.family == "BI":
            if self.q % 2 == 0:
                return 1 if a <= (self.p - 1) // 2 else -1
            return -1 if a <= (self.q - 1) // 2 else 1
        return 1 if 1 <= a <= self.p // 2 else -1

    def theta(self, i, j):
        if not self.symplectic:
            return 1
        return (1 if i > 0 else -1) * (1 if j > 0 else -1)

    def key(self):
        return {"family": self.family, "N": self.N, "q": self.q, "algebra": self.algebra}

    def label(self):
        if self.family == "BCD0":
            return "%s%d" % (self.algebra, self.N)
        if self.q == 1 or (self.q == 0):
            return "%s%d/%s%d" % (self.algebra, self.N, self.algebra, self.p)
        return "%s%d/%s%d+%s%d" % (self.algebra, self.N, self.algebra, self.p, self.algebra, self.q)


def build_pair(family, N, q=0, algebra=None):
    """Validate (family, N, q) and return the populated pair."""
    family = str(family)
    N, q = int(N), int(q)
    low = ""
    if family == "CI-so4":
        family, N, q = "DIa", 4, 2
    elif family == "BI-so3":
        family, N, q = "BI", 3, 1
    if family in ("DIb", "DI(b)"):
        raise UnsupportedPair("pairs with p and q both odd are not supported")
    if family == "DI":
        family = "DIa"
    if family not in FAMILIES:
        raise UnsupportedPair("unknown family %r" % family)
    if N < 1 or q < 0 or q > N:
        raise UnsupportedPair("invalid dimensions N=%d, q=%d" % (N, q))
    p = N - q
    if p < q:
        raise UnsupportedPair("expected p >= q, got p=%d, q=%d" % (p, q))
    if family == "BCD0" or q == 0:
        if q != 0:
            raise UnsupportedPair("BCD0 requires q = 0")
        if algebra is None:
            algebra = "so"
        if algebra not in ("so", "sp"):
            raise UnsupportedPair("algebra must be 'so' or 'sp'")
        if algebra == "sp" and N % 2:
            raise UnsupportedPair("symplectic algebras need even N")
        if N < 2:
            raise UnsupportedPair("N must be at least 2")
        return SymmetricPair("BCD0", N, 0, algebra)
    if family == "BI":
        if N % 2 == 0:
            raise UnsupportedPair("BI requires odd N")
        algebra_needed = "so"
    elif family == "DIa":
        if N % 2 or q % 2:
            if N % 2 == 0 and q % 2:
                raise UnsupportedPair("pairs with p and q both odd are not supported")
            raise UnsupportedPair("DIa requires even N and even q")
        algebra_needed = "so"
    else:
        if N % 2 or q % 2:
            raise UnsupportedPair("CII requires even N and even q")
        algebra_needed = "sp"
    if algebra is not None and algebra != algebra_needed:
        raise UnsupportedPair("family %s lives in %s" % (family, algebra_needed))
    if family == "BI" and N == 3:
        low = "so3"
    elif family == "DIa" and N == 4:
        low = "so4"
    return SymmetricPair(family, N, q, algebra_needed, low)


_SHORT = re.compile(r"^(so|sp)(\d+)(?:/(so|sp)(\d+)(?:\+(so|sp)(\d+))?)?$")


def parse_pair(spec):
    """Accept a dict, a JSON-like dict, or shorthand such as 'so6/so4+so2'."""
    if isinstance(spec, SymmetricPair):
        return spec
    if isinstance(spec, dict):
        return build_pair(spec["family"], spec["N"], spec.get("q", 0), spec.get("algebra"))
    text = str(spec).replace(" ", "").replace("⊕", "+")
    if text in ("so3", "BI-so3"):
        return build_pair("BI", 3, 1)
    if text in ("so4", "CI-so4"):
        return build_pair("DIa", 4, 2)
    m = _SHORT.match(text)
    if not m:
        raise UnsupportedPair("cannot parse pair %r" % spec)
    alg, N = m.group(1), int(m.group(2))
    if m.group(3) is None:
        return build_pair("BCD0", N, 0, alg)
    if m.group(3) != alg or (m.group(5) and m.group(5) != alg):
        raise UnsupportedPair("mixed algebra types in %r" % spec)
    a = int(m.group(4))
    b = int(m.group(6)) if m.group(6) else N - a
    if a + b != N:
        raise UnsupportedPair("dimensions do not add up in %r" % spec)
    q = min(a, b)
    if alg == "sp":
        return build_pair("CII", N, q)
    if q == 0:
        return build_pair("BCD0", N, 0, "so")
    if N % 2:
        return build_pair("BI", N, q)
    if q % 2:
        raise UnsupportedPair("pairs with p and q both odd are not supported")
    return build_pair("DIa", N, q)


# ---------------------------------------------------------------------------
# sparse matrices


class RFMatrix:
    """Sparse square matrix with signed labels and rational-function entries."""

    __slots__ = ("labels", "entries")

    def __init__(self, labels, entries=None):
        self.labels = list(labels)
        self.entries = {}
        if entries:
            for k, v in entries.items():
                if not isinstance(v, MultiRatFunc):
                    v = MultiRatFunc.const(0)._coerce(v)
                if not v.is_zero():
                    self.entries[k] = v

    @classmethod
    def identity(cls, labels):
        one = MultiRatFunc.const(1)
        return cls(labels, {(i, i): one for i in labels})

    @classmethod
    def diagonal(cls, labels, values):
        return cls(labels, {(i, i): values[i] for i in labels})

    @property
    def size(self):
        return len(self.labels)

    def __getitem__(self, key):
        return self.entries.get(key, MultiRatFunc.const(0))

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return RFMatrix(self.labels, out)

    def __neg__(self):
        return RFMatrix(self.labels, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return RFMatrix(self.labels, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        rows = {}
        for (i, k), v in self.entries.items():
            rows.setdefault(i, []).append((k, v))
        cols = {}
        for (k, j), v in other.entries.items():
            cols.setdefault(k, []).append((j, v))
        out = {}
        for i, row in rows.items():
            for k, v in row:
                for j, w in cols.get(k, ()):
                    key = (i, j)
                    out[key] = out[key] + v * w if key in out else v * w
        return RFMatrix(self.labels, out)

    def trace(self):
        total = MultiRatFunc.const(0)
        for i in self.labels:
            if (i, i) in self.entries:
                total = total + self.entries[(i, i)]
        return total

    def subs(self, mapping):
        return RFMatrix(self.labels, {k: v.subs(mapping) for k, v in self.entries.items()})

    def is_diagonal(self):
        return all(i == j for i, j in self.entries)

    def equals(self, other):
        return self.first_difference(other) is None

    def first_difference(self, other):
        """First (row-major) label pair where the matrices differ, with the difference."""
        for i in self.labels:
            for j in self.labels:
                a, b = self[(i, j)], other[(i, j)]
                if not mrf_equal(a, b):
                    return (i, j), a - b
        return None

    def to_json(self):
        out = []
        for i in self.labels:
            for j in self.labels:
                if (i, j) in self.entries:
                    out.append([i, j, mrf_to_json(self.entries[(i, j)])])
        return {"N": len(self.labels), "entries": out}

    @classmethod
    def from_json(cls, obj, labels):
        if obj.get("N") != len(labels):
            raise ValueError("matrix size does not match the pair")
        entries = {}
        ok = set(labels)
        for i, j, val in obj["entries"]:
            if i not in ok or j not in ok:
                raise ValueError("index (%s, %s) out of range" % (i, j))
            entries[(i, j)] = mrf_from_json(val)
        return cls(labels, entries)


def transpose_t(pair, M):
    """The transposition (M^t)_{ij} = theta_ij M_{-j,-i}."""
    return RFMatrix(M.labels, {(-j, -i): v * pair.theta(i, j) for (i, j), v in M.entries.items()})


def tensor_labels(pair):
    idx = pair.indices
    return [(i, k) for i in idx for k in idx]


def perm_and_proj(pair):
    """The permutation operator P and its partial transpose Q on the tensor square."""
    idx = pair.indices
    labels = tensor_labels(pair)
    one = MultiRatFunc.const(1)
    P = RFMatrix(labels, {((i, j), (j, i)): one for i in idx for j in idx})
    Q = RFMatrix(labels, {((-j, j), (-i, i)): MultiRatFunc.const(pair.theta(i, j))
                          for i in idx for j in idx})
    return P, Q


def embed_first(M):
    """M tensor I."""
    idx = M.labels
    return RFMatrix([(i, k) for i in idx for k in idx],
                    {((i, k), (j, k)): v for (i, j), v in M.entries.items() for k in idx})


def embed_second(M):
    """I tensor M."""
    idx = M.labels
    return RFMatrix([(i, k) for i in idx for k in idx],
                    {((i, k), (i, l)): v for (k, l), v in M.entries.items() for i in idx})


def _as_mrf(x):
    if isinstance(x, str):
        return MultiRatFunc.var(x)
    if isinstance(x, MultiPoly):
        return MultiRatFunc(x, _reduced=True)
    if isinstance(x, MultiRatFunc):
        return x
    return MultiRatFunc.const(x)


def rmatrix(pair):
    """Return x -> R(x) = I - P/x + Q/(x - kappa) on the tensor square."""
    P, Q = perm_and_proj(pair)
    labels = P.labels

    def R(x):
        x = _as_mrf(x)
        out = RFMatrix.identity(labels) - P.scale(1 / x) + Q.scale(1 / (x - pair.kappa))
        return out

    return R


def gmatrices(pair):
    """The constant involution matrix and x -> (d I - x G)/(d - x)."""
    idx = pair.indices
    G = RFMatrix.diagonal(idx, {i: MultiRatFunc.const(pair.g_diag(i)) for i in idx})
    d = pair.g_pole

    def Gu(x="u"):
        x = _as_mrf(x)
        if pair.p == pair.q:
            return G
        vals = {}
        for i in idx:
            vals[i] = MultiRatFunc.const(1) if pair.g_diag(i) == 1 else (x + d) / (MultiRatFunc.const(d) - x)
        return RFMatrix.diagonal(idx, vals)

    return G, Gu


def g_entry(pair, i):
    """g_ii(u) as a univariate rational function."""
    from .exactalg import RatFunc, UniPoly
    if pair.g_diag(i) == 1 or pair.p == pair.q:
        return RatFunc.const(pair.g_diag(i))
    d = pair.g_pole
    return RatFunc(UniPoly([d, 1]), UniPoly([d, -1]))


def g_trace(pair):
    """Tr G(u) as a univariate rational function."""
    from .exactalg import RatFunc
    total = RatFunc.const(0)
    for i in pair.indices:
        total = total + g_entry(pair, i)
    return total


def swap_matrix(pair):
    """Permutation matrix exchanging the labels 1 and -1 (identity elsewhere)."""
    idx = pair.indices
    one = MultiRatFunc.const(1)
    ent = {}
    for i in idx:
        j = -i if abs(i) == 1 else i
        ent[(i, j)] = one
    return RFMatrix(idx, ent)
