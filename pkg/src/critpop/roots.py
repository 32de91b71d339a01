"""Finite root-system data for types A_N, B_N, C_N.

Weights are stored in coroot coordinates (the integers <lambda, alpha_i^vee>),
which keeps every T-polynomial exponent integral.  Scalar products are
recovered on demand through the symmetrizers:

    (alpha_i, alpha_j) = d_i * a_ij,     (lambda, alpha_i) = d_i * lambda_i.

The pairing convention <alpha_j, alpha_i^vee> = a_ij is derived from these
two identities; `RootData.__post_init__` asserts the B/C scalar-product
tables against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]


@dataclass(frozen=True)
class RootData:
    kind: str  # "A", "B" or "C"
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]  # symmetrizers

    def __post_init__(self):
        a, d, r = self.cartan, self.d, self.rank
        for i in range(r):
            assert a[i][i] == 2
            for j in range(r):
                assert d[i] * a[i][j] == d[j] * a[j][i], "scalar matrix not symmetric"
                if i != j:
                    assert a[i][j] <= 0
                    assert (a[i][j] == 0) == (a[j][i] == 0)
        if self.kind == "B":
            # long roots of square length 4, short last root of length 2
            assert all(self.alpha_scalar(i, i) == 4 for i in range(r - 1))
            assert self.alpha_scalar(r - 1, r - 1) == 2
        if self.kind == "C":
            assert all(self.alpha_scalar(i, i) == 2 for i in range(r - 1))
            assert self.alpha_scalar(r - 1, r - 1) == 4

    def alpha_scalar(self, i: int, j: int) -> int:
        """(alpha_i, alpha_j), 0-based indices."""
        return self.d[i] * self.cartan[i][j]

    def weight_alpha_scalar(self, lam: Weight, i: int) -> int:
        """(lambda, alpha_i) for lambda in coroot coordinates."""
        return self.d[i] * lam[i]

    def rho(self) -> Weight:
        return (1,) * self.rank

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam)

    def root_coroot_coords(self, l: tuple[int, ...]) -> Weight:
        """Coroot coordinates of sum_i l_i alpha_i."""
        r = self.rank
        return tuple(sum(l[i] * self.cartan[j][i] for i in range(r)) for j in range(r))

    def root_combination_of(self, lam: Weight) -> tuple[Fraction, ...] | None:
        """Solve sum_i c_i alpha_i = lam in coroot coordinates, if possible."""
        r = self.rank
        rows = [[Fraction(self.cartan[j][i]) for i in range(r)] for j in range(r)]
        aug = [row + [Fraction(lam[j])] for j, row in enumerate(rows)]
        for c in range(r):
            piv = next((k for k in range(c, r) if aug[k][c]), None)
            if piv is None:
                return None
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [v * inv for v in aug[c]]
            for k in range(r):
                if k != c and aug[k][c]:
                    f = aug[k][c]
                    aug[k] = [vk - f * vc for vk, vc in zip(aug[k], aug[c])]
        return tuple(aug[j][r] for j in range(r))


@lru_cache(maxsize=None)
def root_data(code: str) -> RootData:
    """Build root data from a two-character code such as "A3", "B2", "C2"."""
    kind, rank = code[0].upper(), int(code[1:])
    if kind not in "ABC":
        raise ValueError(f"unknown root-system kind {kind!r}")
    if rank < 1 or (kind in "BC" and rank < 2):
        raise ValueError(f"rank {rank} not supported for type {kind}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if kind == "A":
        d = [1] * rank
    elif kind == "B":
        d = [2] * (rank - 1) + [1]
        a[rank - 1][rank - 2] = -2
    else:  # C
        d = [1] * (rank - 1) + [2]
        a[rank - 2][rank - 1] = -2
    return RootData(kind, rank, tuple(tuple(row) for row in a), tuple(d))


# -- Weyl group --------------------------------------------------------------


def _gen_matrix(rd: RootData, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i acting on coroot coordinate vectors."""
    r = rd.rank
    m = [[1 if j == k else 0 for k in range(r)] for j in range(r)]
    for j in range(r):
        m[j][i] -= rd.cartan[j][i]
    return tuple(tuple(row) for row in m)


def _mat_apply(m, v: Weight) -> Weight:
    return tuple(sum(m[j][k] * v[k] for k in range(len(v))) for j in range(len(v)))


def _mat_mul(m1, m2):
    n = len(m1)
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: a reduced word and its coroot-coordinate matrix."""

    word: tuple[int, ...]  # 0-based generator indices
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, lam: Weight) -> Weight:
        return _mat_apply(self.matrix, lam)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.word + other.word, _mat_mul(self.matrix, other.matrix))

    @property
    def length(self) -> int:
        return len(self.word)


def identity_element(rd: RootData) -> WeylElement:
    r = rd.rank
    return WeylElement((), tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r)))


def generator(rd: RootData, i: int) -> WeylElement:
    return WeylElement((i,), _gen_matrix(rd, i))


def reflect(rd: RootData, i: int, lam: Weight) -> Weight:
    """s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i, 0-based i."""
    return tuple(lam[j] - rd.cartan[j][i] * lam[i] for j in range(rd.rank))


def shifted_action(rd: RootData, w: WeylElement, lam: Weight) -> Weight:
    """w . lambda = w(lambda + rho) - rho."""
    shifted = tuple(c + 1 for c in lam)
    img = w.apply(shifted)
    return tuple(c - 1 for c in img)


def dominant_representative(rd: RootData, lam: Weight):
    """Walk lambda + rho into the dominant chamber.

    Returns (dominant_weight, w) with w . lambda dominant, or None when
    lambda + rho lies on a reflection wall of the shifted action.
    """
    cur = tuple(c + 1 for c in lam)
    w = identity_element(rd)
    for _ in range(10000):
        if any(c == 0 for c in cur):
            return None
        neg = next((i for i, c in enumerate(cur) if c < 0), None)
        if neg is None:
            return tuple(c - 1 for c in cur), w
        cur = reflect(rd, neg, cur)
        w = generator(rd, neg) * w
    raise RuntimeError("dominant walk did not terminate")


_ENUM_RANK_CAP = 6


@lru_cache(maxsize=None)
def enumerate_weyl(code: str) -> tuple[WeylElement, ...]:
    """All Weyl elements (BFS by length, so words are reduced)."""
    rd = root_data(code)
    if rd.rank > _ENUM_RANK_CAP:
        raise ValueError(f"Weyl enumeration capped at rank {_ENUM_RANK_CAP}")
    ident = identity_element(rd)
    seen = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rd.rank):
                cand = w * generator(rd, i)
                if cand.matrix not in seen:
                    seen[cand.matrix] = cand
                    nxt.append(cand)
        frontier = sorted(nxt, key=lambda e: e.word)
    return tuple(sorted(seen.values(), key=lambda e: (e.length, e.word)))


# -- foldings into the A series ----------------------------------------------


def fold_weight_B(lam: Weight) -> Weight:
    """B_N weight -> symmetric A_{2N-1} weight (m_1..m_N..m_1)."""
    n = len(lam)
    return lam + lam[: n - 1][::-1]


def fold_weight_C(lam: Weight) -> Weight:
    """C_N weight -> symmetric A_{2N} weight (m_1..m_N, m_N..m_1)."""
    return lam + lam[::-1]


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p q)(i) = p(q(i)); one-line notation over range(n)."""
    return tuple(p[q[i]] for i in range(len(p)))


def _transposition(n: int, i: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def folded_weyl_embed(kind: str, rank: int, w: WeylElement) -> tuple[int, ...]:
    """Image of a B_N/C_N Weyl element in the folded symmetric group.

    B_N embeds in S^2N via s_i -> s_i s_{2N-i}, s_N -> s_N; C_N embeds in
    S^(2N+1) via s_i -> s_i s_{2N-i}, s_N -> s_N s_{N+1} s_N.  Images are
    exactly the centro-symmetric permutations (w_i + w_{m+1-i} = m + 1 in
    1-based terms).
    """
    n = rank
    if kind == "B":
        m = 2 * n
        gens = [
            _perm_mul(_transposition(m, i), _transposition(m, m - 2 - i))
            if i < n - 1
            else _transposition(m, n - 1)
            for i in range(n)
        ]
    elif kind == "C":
        m = 2 * n + 1
        gens = []
        for i in range(n - 1):
            gens.append(_perm_mul(_transposition(m, i), _transposition(m, m - 2 - i)))
        sm = _perm_mul(
            _transposition(m, n - 1),
            _perm_mul(_transposition(m, n), _transposition(m, n - 1)),
        )
        gens.append(sm)
    else:
        raise ValueError("kind must be B or C")
    img = tuple(range(m))
    for i in w.word:
        img = _perm_mul(img, gens[i])
    return img


def is_centro_symmetric(perm: tuple[int, ...]) -> bool:
    m = len(perm)
    return all(perm[i] + perm[m - 1 - i] == m - 1 for i in range(m))
