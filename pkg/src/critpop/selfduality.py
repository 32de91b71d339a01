"""Dual spaces, selfduality, the canonical bilinear form and isotropic flags.

The divided Wronskian here is taken with respect to a framing: the tuple
T_1..T_N built from the exponent gaps of the space at its finite
ramification points, with prod_j T_j^(N+1-j) matching the Wronskian of a
basis.  For a selfdual space the pairing (u, v) = W+(u, w_1..w_N), where
v = W+(w_1..w_N), is evaluated exactly.  Witt normalization is attempted
over Q and over a single quadratic extension; otherwise the basis is
reported as quasi-Witt together with its mirror ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ConstructionFailed, NotConstant, NotDivisible, SquareRootMissing
from .fundamental import Flag, PolySpace, exponents, generating_morphism, span
from .poly import ONE, Poly, divided_wronskian, poly_sqrt, solve_linear, wronskian


# -- scalars in a quadratic extension -----------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """a + b*sqrt(d) with rational a, b and squarefree integer d (d != 0, 1)."""

    a: Fraction
    b: Fraction
    d: int

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.a * other, self.b * other, self.d)
        assert self.d == other.d
        return QuadExt(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def square(self) -> Fraction | None:
        sq = self * self
        return sq.a if sq.b == 0 else None

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt({self.d}))"


def sqrt_scalar(q: Fraction):
    """Exact sqrt of a nonzero rational: Fraction when perfect, else QuadExt."""
    if q == 0:
        return Fraction(0)
    sign = 1 if q > 0 else -1
    mag = abs(q)
    n, d = mag.numerator, mag.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sign == 1 and sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    # sqrt(q) = sqrt(sign * n * d) / d; split n*d into r^2 * s, s squarefree
    m = n * d
    r, s = 1, 1
    k = 2
    while k * k <= m:
        while m % (k * k) == 0:
            m //= k * k
            r *= k
        if m % k == 0:
            m //= k
            s *= k
        k += 1
    s *= m
    return QuadExt(Fraction(0), Fraction(r, d), sign * s)


def nth_root_scalar(q: Fraction, e: int) -> Fraction | None:
    """Exact rational e-th root of q, if one exists."""
    if e == 0:
        return Fraction(1) if q == 1 else None
    if e == 1:
        return q
    sign = 1
    if q < 0:
        if e % 2 == 0:
            return None
        sign, q = -1, -q

    def iroot(m: int) -> int | None:
        if m == 0:
            return 0
        r = max(1, round(m ** (1.0 / e)))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**e == m:
                return c
        return None

    rn, rd = iroot(q.numerator), iroot(q.denominator)
    if rn is None or rd is None:
        return None
    return sign * Fraction(rn, rd)


# -- framings ------------------------------------------------------------------


@dataclass(frozen=True)
class Framing:
    """T_1..T_N for a space of dimension N+1, plus its finite points."""

    ts: tuple[Poly, ...]
    points: tuple[Fraction, ...]

    def is_symmetric(self) -> bool:
        n = len(self.ts)
        return all(self.ts[i] == self.ts[n - 1 - i] for i in range(n))


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int):
    n = abs(n)
    out, k = [], 1
    while k * k <= n:
        if n % k == 0:
            out.extend([k, n // k])
        k += 1
    return sorted(set(out))


def _rational_root(p: Poly) -> Fraction | None:
    if p[0] == 0:
        return Fraction(0)
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // _gcd_int(scale, c.denominator)
    ip = [int(c * scale) for c in p.coeffs]
    for r in _divisors(ip[0]):
        for s in _divisors(ip[-1]):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if p.eval(cand) == 0:
                    return cand
    return None


def framing_of(space: PolySpace) -> Framing:
    """Derive the framing of a space from its Wronskian and exponent gaps.

    The Wronskian of the basis must split into rational linear factors;
    this holds for every space framed over rational marked points.
    """
    w = wronskian(list(space.basis))
    if w.is_zero():
        raise ConstructionFailed("degenerate space")
    points = []
    rest = w.monic()
    while rest.degree > 0:
        root = _rational_root(rest)
        if root is None:
            raise ConstructionFailed("Wronskian does not split over Q")
        points.append(root)
        lin = Poly([-root, 1])
        while (rest % lin).is_zero():
            rest = rest.exact_div(lin)
    points = sorted(set(points))
    n = space.dim - 1
    ts = [ONE] * n
    for z in points:
        e = exponents(space, z)
        for i in range(n):
            gap = e[i + 1] - e[i] - 1
            if gap:
                ts[i] = ts[i] * Poly([-z, 1]) ** gap
    fr = Framing(tuple(ts), tuple(points))
    check = ONE
    for j, t in enumerate(fr.ts):
        check = check * t ** (n - j)
    if check.monic() != w.monic():
        raise ConstructionFailed("framing does not reproduce the Wronskian")
    return fr


def dual_wronskian(framing: Framing, us) -> Poly:
    return divided_wronskian(list(us), list(framing.ts))


def _omit(items, i):
    return [items[k] for k in range(len(items)) if k != i]


def dual_space(space: PolySpace, framing: Framing) -> PolySpace:
    """V+ = span of the omitted divided Wronskians; asserts V++ = V.

    The dual space has reversed exponent gaps, so the second application
    divides by the reversed framing.
    """
    n1 = space.dim
    dual = span(dual_wronskian(framing, _omit(space.basis, i)) for i in range(n1))
    if dual.dim != n1:
        raise ConstructionFailed("dual space has wrong dimension")
    rev = Framing(framing.ts[::-1], framing.points)
    ddual = span(dual_wronskian(rev, _omit(dual.basis, i)) for i in range(n1))
    if ddual != space:
        raise ConstructionFailed("double dual differs from the original space")
    return dual


def is_selfdual(space: PolySpace, framing: Framing) -> bool:
    """V = V+ test with the exponent-symmetry fast reject."""
    n = space.dim - 1
    if not framing.is_symmetric():
        return False
    degs = space.degrees()
    gaps = [degs[i + 1] - degs[i] - 1 for i in range(n)]
    if gaps != gaps[::-1]:
        return False
    try:
        return dual_space(space, framing) == space
    except (NotDivisible, ConstructionFailed):
        return False


# -- canonical bilinear form ---------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    """Canonical bilinear form in the echelon basis of the space."""

    entries: tuple[tuple[Fraction, ...], ...]
    mixed_constant: Fraction  # W+(u_1..u_{N+1})

    @property
    def dim(self) -> int:
        return len(self.entries)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.dim) for j in range(i, self.dim))

    def is_skew(self) -> bool:
        e = self.entries
        return all(e[i][j] == -e[j][i] for i in range(self.dim) for j in range(i, self.dim))

    def is_nondegenerate(self) -> bool:
        rows = [list(r) for r in self.entries]
        sol = solve_linear(rows, [Fraction(0)] * self.dim)
        return sol is not None and not sol[1]


def _coords_in(gens: list[Poly], target: Poly):
    degs = [int(p.degree) for p in gens if not p.is_zero()]
    if not target.is_zero():
        degs.append(int(target.degree))
    cap = max(degs) if degs else 0
    rows = [[g[k] for g in gens] for k in range(cap + 1)]
    rhs = [target[k] for k in range(cap + 1)]
    solved = solve_linear(rows, rhs)
    return None if solved is None else tuple(solved[0])


def _constant_of(p: Poly, what: str) -> Fraction:
    if p.is_zero():
        return Fraction(0)
    if p.degree != 0:
        raise NotConstant(f"{what} has positive degree: {p}")
    return p[0]


def gram(space: PolySpace, framing: Framing) -> GramMatrix:
    """(u_i, u_k) on the echelon basis, through the dual pairing.

    Writing u_k = sum_j g_j W_j with W_j the j-omitted divided Wronskian,
    the pairing gives (u_i, u_k) = g_i (-1)^i W+(u_1..u_{N+1}) (0-based i).
    The entries must form a nondegenerate matrix, skew in even dimension
    and symmetric in odd.
    """
    n1 = space.dim
    c = _constant_of(dual_wronskian(framing, list(space.basis)), "full divided Wronskian")
    if c == 0:
        raise ConstructionFailed("degenerate basis")
    wjs = [dual_wronskian(framing, _omit(space.basis, j)) for j in range(n1)]
    coords = []
    for u in space.basis:
        cs = _coords_in(wjs, u)
        if cs is None:
            raise ConstructionFailed("space is not selfdual; Gram undefined")
        coords.append(cs)
    entries = tuple(
        tuple(coords[k][i] * (-1) ** i * c for k in range(n1)) for i in range(n1)
    )
    gm = GramMatrix(entries, c)
    if not gm.is_nondegenerate():
        raise ConstructionFailed("canonical form is degenerate")
    if n1 % 2 == 1 and not gm.is_symmetric():
        raise ConstructionFailed("odd-dimensional form is not symmetric")
    if n1 % 2 == 0 and not gm.is_skew():
        raise ConstructionFailed("even-dimensional form is not skew")
    return gm


def form_value(space: PolySpace, gm: GramMatrix, u: Poly, v: Poly) -> Fraction:
    a, b = space.coords(u), space.coords(v)
    assert a is not None and b is not None
    total = Fraction(0)
    for i in range(space.dim):
        if a[i]:
            for k in range(space.dim):
                if b[k]:
                    total += a[i] * b[k] * gm.entries[i][k]
    return total


def is_isotropic(space: PolySpace, framing: Framing, flag: Flag) -> bool:
    """F_i orthogonal to F_{N+1-i}: the adjusted basis pairs to zero
    whenever the 1-based indices sum to at most N+1 = dim V."""
    gm = gram(space, framing)
    n1 = space.dim
    return all(
        not form_value(space, gm, flag.basis[i], flag.basis[j])
        for i in range(n1)
        for j in range(i, n1)
        if (i + 1) + (j + 1) <= n1
    )


# -- quasi-Witt bases -----------------------------------------------------------


@dataclass
class QuasiWittResult:
    flag: Flag
    ratios: tuple[Fraction, ...]  # a_i with W+(q_1..q_i) = a_i W+(q_1..q_{N+1-i})
    witt_polys: tuple[Poly, ...] | None
    witt_scalars: tuple | None  # Fraction or QuadExt per basis element

    @property
    def status(self) -> str:
        if self.witt_polys is None:
            return "quasi"
        if self.witt_scalars and any(
            isinstance(s, QuadExt) and not s.is_rational() for s in self.witt_scalars
        ):
            return "witt-quadratic"
        return "witt"


def quasi_witt_basis(space: PolySpace, framing: Framing) -> QuasiWittResult:
    """Decreasing-degree basis satisfying the mirrored relation
    W+(q_1..q_i) = a_i W+(q_1..q_{N+1-i}), plus opportunistic exact Witt
    normalization over Q or one quadratic extension.

    The basis is anti-diagonalized from the echelon basis: every element
    pairs to zero with everything except its mirror partner, so its flag is
    isotropic, the mirrored relation holds exactly, and every omitted
    divided Wronskian is an exact multiple of the partner element.
    """
    n1 = space.dim
    q = _antidiagonalize_echelon(space, framing)
    ratios = []
    for i in range(1, n1):
        num = dual_wronskian(framing, q[:i])
        den = dual_wronskian(framing, q[: n1 - i])
        if num.is_zero() or den.is_zero():
            raise ConstructionFailed("vanishing flag Wronskian")
        ratio = num.leading() / den.leading()
        if num != ratio * den:
            raise ConstructionFailed("mirrored Wronskian relation failed")
        ratios.append(ratio)
    gammas = []
    for i in range(1, n1 + 1):
        w = dual_wronskian(framing, _omit(q, i - 1))
        partner = q[n1 - i]
        ratio = w.leading() / partner.leading()
        if w != ratio * partner:
            raise ConstructionFailed("omitted Wronskian is not a partner multiple")
        gammas.append(ratio)
    for i in range(n1):
        if gammas[i] != gammas[n1 - 1 - i]:
            raise ConstructionFailed("asymmetric Witt constants")
    scalars = _witt_scalars(gammas)
    if scalars is None:
        witt_polys, witt_scalars = None, None
    else:
        witt_polys, witt_scalars = tuple(q), tuple(scalars)
    return QuasiWittResult(Flag.from_basis(space, q), tuple(ratios), witt_polys, witt_scalars)


def _antidiagonalize_echelon(space: PolySpace, framing: Framing) -> list[Poly]:
    """Degree-preserving basis with (u_a, u_b) = 0 unless a + b = N + 2.

    Built from the bottom degree up; each element gets corrections from the
    already-built lower-degree tail, one explicit scalar per condition.
    """
    gm = gram(space, framing)
    n1 = space.dim
    p = list(space.basis)
    u: list[Poly | None] = [None] * n1

    def val(x: Poly, y: Poly) -> Fraction:
        return form_value(space, gm, x, y)

    for a in range(n1 - 1, -1, -1):
        cand = p[a]
        for b in range(n1 - 1, a, -1):
            if (a + 1) + (b + 1) == n1 + 1:
                continue  # partner entry stays nonzero
            m = n1 - 1 - b  # partner of b pairs nontrivially with u_b
            v = val(cand, u[b])
            if m <= a:
                if v:
                    raise ConstructionFailed("unexpected pairing above the mirror")
                continue
            if v:
                g = val(u[m], u[b])
                if not g:
                    raise ConstructionFailed("degenerate mirror pairing")
                cand = cand - v / g * u[m]
        partner = n1 - 1 - a
        if partner > a:
            dv = val(cand, cand)
            if dv:
                g = val(cand, u[partner])
                if not g:
                    raise ConstructionFailed("degenerate mirror pairing")
                cand = cand - dv / (2 * g) * u[partner]
        u[a] = cand
    basis = [x for x in u if x is not None]
    for a in range(n1):
        for b in range(a, n1):
            on_pair = a + b == n1 - 1
            v = val(basis[a], basis[b])
            if on_pair and not v:
                raise ConstructionFailed("vanishing anti-diagonal entry")
            if not on_pair and v:
                raise ConstructionFailed("anti-diagonalization failed")
    return basis


def _witt_scalars(gammas: list[Fraction]):
    """beta_i beta_{N+2-i} = B gamma_i with prod beta_j = B.

    Setting beta_i = 1 on the first half forces B^(k-1) = 1/prod_{i<=k}
    gamma_i in even dimension 2k and B^(2k-1) = 1/prod_all gamma_i in odd
    dimension 2k+1; the remaining scalars follow rationally from B.
    """
    n1 = len(gammas)
    k = n1 // 2
    if n1 % 2 == 0:
        e = k - 1
        rhs = Fraction(1)
        for i in range(k):
            rhs /= gammas[i]
        if e == 0:
            if rhs != 1:
                return None
            b = Fraction(1)
        else:
            b = nth_root_scalar(rhs, e)
            if b is None and e % 2 == 0:
                root = sqrt_scalar(rhs) if e == 2 else None
                if isinstance(root, QuadExt):
                    b = root
            if b is None:
                return None
        betas: list = [Fraction(1)] * n1
        for i in range(k):
            betas[n1 - 1 - i] = b * gammas[i]
        return betas
    e = 2 * k - 1
    rhs = Fraction(1)
    for g in gammas:
        rhs /= g
    b = nth_root_scalar(rhs, e)
    if b is None:
        return None
    betas = [Fraction(1)] * n1
    for i in range(k):
        betas[n1 - 1 - i] = b * gammas[i]
    prod_pairs = Fraction(1)
    for i in range(n1):
        if i != k:
            prod_pairs *= betas[i]
    betas[k] = b / prod_pairs
    if betas[k] ** 2 != b * gammas[k]:
        raise ConstructionFailed("middle Witt scalar inconsistent")
    return betas


def verify_witt(framing: Framing, result: QuasiWittResult) -> bool:
    """Exact dar-2 check for rational Witt scalars; quadratic scalars were
    already verified at the scalar level during construction."""
    if result.witt_polys is None or result.witt_scalars is None:
        return False
    if any(isinstance(s, QuadExt) and not s.is_rational() for s in result.witt_scalars):
        return True
    polys = [
        (s if isinstance(s, Fraction) else s.a) * p
        for s, p in zip(result.witt_scalars, result.witt_polys)
    ]
    n1 = len(polys)
    return all(
        dual_wronskian(framing, _omit(polys, n1 - i)) == polys[i - 1]
        for i in range(1, n1 + 1)
    )


# -- isotropic one-parameter generators -----------------------------------------


def antidiagonal_basis(space: PolySpace, framing: Framing, flag: Flag) -> list[Poly]:
    """Adjust the flag basis within its flag so the form is anti-diagonal:
    (u_a, u_b) = 0 unless the 1-based indices satisfy a + b = N + 2."""
    gm = gram(space, framing)
    n1 = space.dim
    u = list(flag.basis)

    def val(a: int, b: int) -> Fraction:
        return form_value(space, gm, u[a], u[b])

    for b in range(n1 - 1, 0, -1):
        for j in range(n1 - b, b):
            m = n1 - 1 - j  # 0-based partner of j, m < b here
            gj = val(j, m)
            if not gj:
                raise ConstructionFailed("vanishing anti-diagonal entry")
            c = val(j, b)
            if c:
                u[b] = u[b] - c / gj * u[m]
        if 2 * (b + 1) > n1 + 1:
            m = n1 - 1 - b
            c = val(b, b)
            if c:
                u[b] = u[b] - c / (2 * val(b, m)) * u[m]
    for a in range(n1):
        for b in range(a, n1):
            on_pair = a + b == n1 - 1
            v = val(a, b)
            if on_pair and not v:
                raise ConstructionFailed("anti-diagonal entry vanished")
            if not on_pair and v:
                raise ConstructionFailed("anti-diagonalization failed")
    return u


@dataclass
class IsotropicFamily:
    """The one-parameter family of isotropic flags moving one level."""

    direction: int  # 1-based, <= k
    base: list[Poly]  # anti-diagonal adjusted basis
    space: PolySpace
    framing: Framing
    gm: GramMatrix

    def _g(self, j: int) -> Fraction:
        """Anti-diagonal value (u_j, u_{N+2-j}), 1-based j."""
        n1 = len(self.base)
        return form_value(self.space, self.gm, self.base[j - 1], self.base[n1 - j])

    def deformed_basis(self, c: Fraction) -> list[Poly]:
        u = list(self.base)
        n1 = len(u)
        k = n1 // 2
        i0 = self.direction
        a = i0 - 1
        if n1 % 2 == 0 and i0 == k:
            u[a] = u[a] + c * u[a + 1]
            return u
        if n1 % 2 == 1 and i0 == k:
            bb = -self._g(k + 1) / self._g(k)
            u[a] = u[a] + c * u[a + 1] + (c * c * bb / 2) * u[a + 2]
            u[a + 1] = u[a + 1] + c * bb * u[a + 2]
            return u
        eps = -self._g(i0 + 1) / self._g(i0)
        b = n1 - i0 - 1  # 0-based mirror slot N+1-i0
        u[a] = u[a] + c * u[a + 1]
        u[b] = u[b] + c * eps * u[b + 1]
        return u

    def flag_at(self, c: Fraction) -> Flag:
        return Flag.from_basis(self.space, self.deformed_basis(c))

    def tuple_at(self, c: Fraction):
        return generating_morphism(self.space, self.flag_at(c), self.framing.ts)


def isotropic_generators(
    space: PolySpace, framing: Framing, flag: Flag, direction: int
) -> IsotropicFamily:
    """Build the degree-`direction` generator family through an isotropic flag."""
    n1 = space.dim
    k = n1 // 2
    if not 1 <= direction <= k:
        raise ValueError(f"direction must be in 1..{k}")
    basis = antidiagonal_basis(space, framing, flag)
    return IsotropicFamily(direction, basis, space, framing, gram(space, framing))


def middle_square_data(fam: IsotropicFamily):
    """For odd dimension 2k+1 and direction k: the middle coordinate of the
    family is a perfect square (p + c q)^2 projectively.

    Returns (p, q, wron) with p monic and wron = W(p, q); raises
    SquareRootMissing when the square structure is absent.
    """
    n1 = fam.space.dim
    k = n1 // 2
    assert n1 % 2 == 1 and fam.direction == k
    mid = k - 1  # 0-based middle tuple slot (the tuple has 2k coordinates)

    def root_at(c) -> Poly:
        y = fam.tuple_at(Fraction(c))[mid]
        r = poly_sqrt(y)
        if r is None:
            raise SquareRootMissing(f"middle coordinate at c={c} is not a square")
        return r

    p = root_at(0)
    p1, p2 = root_at(1), root_at(2)
    # solve 2*l1*P1 - l2*P2 = p for the joint normalization of the line
    cap = max(int(q.degree) for q in (p, p1, p2))
    rows = [[2 * p1[j], -p2[j]] for j in range(cap + 1)]
    solved = solve_linear(rows, [p[j] for j in range(cap + 1)])
    if solved is None:
        raise SquareRootMissing("square roots are not collinear")
    (l1, l2), _ = solved[0], solved[1]
    q = l1 * p1 - p
    for c in (1, 2, 3):
        lhs = p + c * q
        if lhs.is_zero() or (lhs.monic()) ** 2 != fam.tuple_at(Fraction(c))[mid]:
            raise SquareRootMissing("square decomposition failed to verify")
    return p, q, wronskian([p, q])
