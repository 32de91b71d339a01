"""Type-A machinery: fundamental spaces, flags, exponents, Bruhat data.

A `PolySpace` is kept in a canonical reduced echelon form (monic basis of
strictly decreasing degrees, each fully reduced against the others), so
space equality is plain basis equality.  The fundamental space of a
critical tuple is built by the sibling recursion; the factored operator
whose kernel it is gets verified symbolically over exact rational
functions in `verify_dp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ProblemInstance,
    TupleY,
    monic_tuple,
    t_polys,
    weight_at_infinity,
)
from .errors import ConstructionFailed, NotDivisible, NotInImage
from .poly import ONE, Poly, divided_wronskian, gcd, solve_linear, wronskian
from .reproduction import immediate_descendants, _sample_generic
from .roots import WeylElement, dominant_representative, generator, identity_element


def _reduce_against(p: Poly, table: dict[int, Poly]) -> Poly:
    while not p.is_zero() and int(p.degree) in table:
        q = table[int(p.degree)]
        p = p - p.leading() / q.leading() * q
    return p


def _full_reduce(p: Poly, table: dict[int, Poly]) -> Poly:
    """Normal form with zero coefficient at every pivot degree."""
    for d in sorted(table, reverse=True):
        c = p[d]
        if c:
            q = table[d]
            p = p - c / q.leading() * q
    return p


@dataclass(frozen=True)
class PolySpace:
    """Reduced span: monic echelon basis in strictly decreasing degree."""

    basis: tuple[Poly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degrees(self) -> list[int]:
        """Realized degrees, increasing."""
        return sorted(int(p.degree) for p in self.basis)

    def reduce(self, p: Poly) -> Poly:
        """Remainder of p modulo the space (zero iff p is a member)."""
        table = {int(b.degree): b for b in self.basis}
        return _reduce_against(p, table)

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def coords(self, p: Poly) -> tuple[Fraction, ...] | None:
        """Coordinates of p in the echelon basis, or None."""
        cs = [Fraction(0)] * self.dim
        table = {int(b.degree): k for k, b in enumerate(self.basis)}
        while not p.is_zero():
            d = int(p.degree)
            if d not in table:
                return None
            k = table[d]
            c = p.leading()  # basis is monic
            cs[k] = c
            p = p - c * self.basis[k]
        return tuple(cs)

    def member(self, coords) -> Poly:
        out = Poly()
        for c, b in zip(coords, self.basis):
            out = out + c * b
        return out


def span(polys) -> PolySpace:
    """Canonical reduced span of the given polynomials."""
    table: dict[int, Poly] = {}
    for p in polys:
        p = _reduce_against(p, table)
        if not p.is_zero():
            table[int(p.degree)] = p.monic()
    # back-reduce lower pivots out of higher rows, lowest pivot first
    degs = sorted(table)
    for d in degs:
        p = table[d]
        for e in degs:
            if e < d and p[e]:
                p = p - p[e] * table[e]
        table[d] = p
    return PolySpace(tuple(table[d] for d in sorted(table, reverse=True)))


@dataclass(frozen=True)
class Flag:
    """Full flag of a PolySpace as a canonical adjusted basis.

    basis[i] spans F_{i+1} modulo F_i; each element is reduced against the
    echelon span of its predecessors and normalized monic.
    """

    space: PolySpace
    basis: tuple[Poly, ...]

    @staticmethod
    def from_basis(space: PolySpace, basis) -> "Flag":
        table: dict[int, Poly] = {}
        canon = []
        for u in basis:
            if not space.contains(u):
                raise ValueError("flag basis element outside the space")
            red = _full_reduce(u, table)
            if red.is_zero():
                raise ValueError("flag basis is dependent")
            canon.append(red.monic())
            table[int(red.degree)] = red.monic()
        return Flag(space, tuple(canon))

    def prefix(self, i: int) -> list[Poly]:
        return list(self.basis[:i])


def degree_flag(space: PolySpace) -> Flag:
    """The distinguished flag by increasing degree."""
    return Flag.from_basis(space, sorted(space.basis, key=lambda p: p.degree))


# -- fundamental space --------------------------------------------------------


def _basis_vector(pi: ProblemInstance, y: TupleY, k: int) -> Poly:
    """u_k of the sibling recursion (1-based k): u_1 = y_1, u_2 solves
    W(y_1, u) = T_1 y_2, and u_{k} = u_{k-1} of the tuple with y_{k-1}
    replaced by a generic sibling."""
    if k == 1:
        return y[0]
    if k == 2:
        return immediate_descendants(pi, monic_tuple(y), 0).base
    fam = immediate_descendants(pi, monic_tuple(y), k - 2)
    want = max(int(fam.base.degree), int(fam.fiber.degree))
    sib, _ = _sample_generic(pi, monic_tuple(y), k - 2, fam, want)
    return _basis_vector(pi, sib, k - 1)


def fundamental_space(pi: ProblemInstance, y: TupleY) -> PolySpace:
    """The (N+1)-dimensional space attached to a type-A critical tuple.

    Builds u_1, ..., u_{N+1} by the sibling recursion and checks the
    prescribed Wronskian ladder W(u_1..u_i) ~ y_i T_1^{i-1} ... T_{i-1}
    for every i, plus absence of base points.
    """
    if pi.rd.kind != "A":
        raise ValueError("fundamental_space expects type-A data")
    y = monic_tuple(y)
    n = pi.rd.rank
    ts = t_polys(pi)
    us = [_basis_vector(pi, y, k) for k in range(1, n + 2)]
    for i in range(1, n + 2):
        w = wronskian(us[:i])
        expected = (y[i - 1] if i <= n else ONE)
        for j in range(1, i):
            expected = expected * ts[j - 1] ** (i - j)
        if w.is_zero() or expected.is_zero():
            raise ConstructionFailed("degenerate Wronskian ladder")
        if w.monic() != expected.monic():
            raise ConstructionFailed(f"Wronskian ladder failed at level {i}")
    space = span(us)
    if space.dim != n + 1:
        raise ConstructionFailed("fundamental space has wrong dimension")
    for z in pi.points:
        if all(b.eval(z) == 0 for b in space.basis):
            raise ConstructionFailed(f"base point at {z}")
    return space


# -- exponents and ramification ----------------------------------------------


def exponents(space: PolySpace, at, ts=None) -> list[int]:
    """Exponents of the space at a finite point or at infinity.

    At a finite z these are the orders of vanishing realized by members;
    at infinity ("inf") the realized degrees.
    """
    if at == "inf":
        return space.degrees()
    z = Fraction(at)
    rows = [p.shift(z) for p in space.basis]
    vals: list[int] = []
    work = [r for r in rows]
    while work:
        v, idx = min((r.valuation_at(Fraction(0)), k) for k, r in enumerate(work))
        pivot = work.pop(idx)
        vals.append(v)
        lead = pivot[v]
        nxt = []
        for r in work:
            if r[v]:
                r = r - r[v] / lead * pivot
            if not r.is_zero():
                nxt.append(r)
        if len(nxt) != len(work):
            raise ConstructionFailed("dependent basis in exponent computation")
        work = nxt
    return sorted(vals)


def expected_exponents_finite(pi: ProblemInstance, s: int) -> list[int]:
    """Closed form 0, (L_s+rho, a_1), ..., (L_s+rho, a_1+..+a_N) for type A."""
    lam = pi.weights[s]
    out, acc = [0], 0
    for m in lam:
        acc += m + 1
        out.append(acc)
    return out


def expected_exponents_infinity(pi: ProblemInstance, y: TupleY) -> list[int]:
    """Closed form l~_1, l~_1 + (L~inf+rho, a_1), ... from the dominant member."""
    dom = dominant_representative(pi.rd, weight_at_infinity(pi, y))
    if dom is None:
        raise ConstructionFailed("weight at infinity lies on a wall")
    lam_tilde, _ = dom
    base = [sum(w[i] for w in pi.weights) for i in range(pi.rd.rank)]
    combo = pi.rd.root_combination_of(
        tuple(base[i] - lam_tilde[i] for i in range(pi.rd.rank))
    )
    if combo is None or any(c.denominator != 1 or c < 0 for c in combo):
        raise ConstructionFailed("dominant member degrees are not integral")
    l1 = int(combo[0])
    out, acc = [l1], l1
    for m in lam_tilde:
        acc += m + 1
        out.append(acc)
    return out


def schubert_index_finite(space: PolySpace, z) -> tuple[int, ...]:
    """Non-increasing a-vector of the space at a finite point."""
    e = exponents(space, z)
    n1 = space.dim
    return tuple(e[n1 - 1 - i] - (n1 - 1 - i) for i in range(n1))


def schubert_index_infinity(space: PolySpace, d: int) -> tuple[int, ...]:
    degs = space.degrees()
    n1 = space.dim
    return tuple(d - (n1 - 1) + i - degs[i] for i in range(n1))


def pluecker_check(space: PolySpace, points, d: int | None = None) -> bool:
    """Sum of ramification codimensions equals dim Gr(N+1, C_d[x])."""
    if d is None:
        d = max(space.degrees())
    n1 = space.dim
    total = sum(sum(schubert_index_finite(space, z)) for z in points)
    total += sum(schubert_index_infinity(space, d))
    return total == n1 * (d - (n1 - 1))


# -- generating morphism ------------------------------------------------------


def generating_morphism(space: PolySpace, flag: Flag, ts) -> TupleY:
    """beta(F): y_i = W(u_1..u_i) / (T_1^{i-1} ... T_{i-1}), projectivized."""
    n = space.dim - 1
    out = []
    for i in range(1, n + 1):
        out.append(divided_wronskian(flag.prefix(i), list(ts)).monic())
    return tuple(out)


def flag_from_tuple(space: PolySpace, y: TupleY, ts) -> Flag:
    """The unique flag with beta(F) = y, reconstructed greedily."""
    n = space.dim - 1
    y = monic_tuple(y)
    if len(y) != n:
        raise NotInImage("tuple length does not match the space")
    if not space.contains(y[0]):
        raise NotInImage("y_1 is not a member of the space")
    us = [y[0]]
    for i in range(1, n):
        # solve W+(u_1..u_i, v) = c * y_{i+1} for (v, c), v in the space
        try:
            cols = [divided_wronskian(us + [b], list(ts)) for b in space.basis]
        except NotDivisible as exc:
            raise NotInImage(str(exc)) from exc
        deg_cap = max(
            [int(p.degree) for p in cols if not p.is_zero()]
            + [int(y[i].degree), 0]
        )
        rows = []
        for k in range(deg_cap + 1):
            rows.append([col[k] for col in cols] + [-y[i][k]])
        solved = solve_linear(rows, [Fraction(0)] * len(rows))
        assert solved is not None
        _, kernel = solved
        pick = None
        for vec in kernel:
            if vec[-1]:
                pick = vec
                break
        if pick is None:
            raise NotInImage(f"no flag level matches y_{i + 1}")
        v = space.member([a / pick[-1] for a in pick[:-1]])
        us.append(v)
    # complete to a full basis with the leftover echelon element
    table: dict[int, Poly] = {}
    for u in us:
        p = u
        while not p.is_zero():
            d = int(p.degree)
            if d in table:
                p = p - p.leading() / table[d].leading() * table[d]
            else:
                table[d] = p
                break
    for b in space.basis:
        if not _reduce_against(b, table).is_zero():
            us.append(b)
            break
    if len(us) != space.dim:
        raise NotInImage("flag reconstruction did not complete")
    flag = Flag.from_basis(space, us)
    if generating_morphism(space, flag, ts) != y:
        raise NotInImage("reconstructed flag does not map back to the tuple")
    return flag


# -- Bruhat bookkeeping --------------------------------------------------------


def bruhat_index(space: PolySpace, flag: Flag) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Permutation of the flag against the degree flag, plus its position
    profile (the minimal echelon level of each successive quotient).

    Returns (w, degs) where w is 1-based one-line notation: w_j is the
    level of the degree flag first containing the j-th flag step, and
    degs[j] the matching realized degree.
    """
    degs_sorted = space.degrees()
    pos_of_degree = {d: k + 1 for k, d in enumerate(degs_sorted)}
    used: dict[int, Poly] = {}
    w = []
    levels = []
    for u in flag.basis:
        p = u
        while True:
            d = int(p.degree)
            k = pos_of_degree[d]
            if k in used:
                q = used[k]
                p = p - p.leading() / q.leading() * q
                if p.is_zero():
                    raise ConstructionFailed("flag basis degenerated in Bruhat walk")
            else:
                used[k] = p
                w.append(k)
                levels.append(d)
                break
    return tuple(w), tuple(levels)


def perm_to_weyl(rd, perm: tuple[int, ...]) -> WeylElement:
    """A_N Weyl element of a 1-based one-line permutation.

    Simple transpositions (i, i+1) correspond to the generating
    reflections, so a bubble-sort decomposition gives a reduced word.
    """
    p = list(perm)
    swaps = []
    changed = True
    while changed:
        changed = False
        for j in range(len(p) - 1):
            if p[j] > p[j + 1]:
                p[j], p[j + 1] = p[j + 1], p[j]
                swaps.append(j)
                changed = True
    w = identity_element(rd)
    for j in swaps:
        w = w * generator(rd, j)
    return w


def verify_dp(pi: ProblemInstance, spaces, member: TupleY | None = None) -> bool:
    """Operator invariance: all spaces coincide as reduced spaces, and the
    factored operator built from a member annihilates the common space.
    """
    spaces = list(spaces)
    if not spaces:
        return True
    first = spaces[0]
    if any(sp != first for sp in spaces[1:]):
        return False
    if member is not None:
        for u in first.basis:
            if not _apply_factored_operator(pi, member, u).is_zero():
                return False
    return True


def _apply_factored_operator(pi: ProblemInstance, y: TupleY, u: Poly) -> Poly:
    """Apply the order-(N+1) factored operator of a critical tuple to u.

    Factors are applied right to left; each is f -> f' - logderiv(arg) f
    over exact rational functions.  The result is returned as a polynomial
    numerator (zero iff the operator annihilates u).
    """
    n = pi.rd.rank
    ts = t_polys(pi)
    yy = [ONE] + [y[i] for i in range(n)] + [ONE]

    def factor_arg(i: int) -> tuple[Poly, Poly]:
        num = yy[n + 1 - i]
        for s in range(0, n - i):
            num = num * ts[s]
        return num, yy[n - i]

    num, den = u, ONE
    for i in range(n, -1, -1):
        a_num, a_den = factor_arg(i)
        # logderiv(a_num/a_den) = a_num'/a_num - a_den'/a_den
        new_num = (
            num.deriv() * den - num * den.deriv()
        ) * a_num * a_den - num * den * (
            a_num.deriv() * a_den - a_num * a_den.deriv()
        )
        new_den = den * den * a_num * a_den
        g = gcd(new_num, new_den)
        if g.degree > 0:
            new_num = new_num.exact_div(g)
            new_den = new_den.exact_div(g)
        num, den = new_num, new_den
    return num
