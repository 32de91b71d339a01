import random
from fractions import Fraction

import pytest

from critpop.core import heine_stieltjes_test, monic_tuple, t_polys, weight_at_infinity
from critpop.errors import NotInImage
from critpop.fundamental import (
    Flag,
    PolySpace,
    bruhat_index,
    degree_flag,
    exponents,
    expected_exponents_finite,
    expected_exponents_infinity,
    flag_from_tuple,
    fundamental_space,
    generating_morphism,
    perm_to_weyl,
    pluecker_check,
    schubert_index_finite,
    schubert_index_infinity,
    span,
    verify_dp,
)
from critpop.poly import ONE, X, Poly
from critpop.reproduction import explore_population
from critpop.roots import dominant_representative, shifted_action
from conftest import instance

SL2 = instance("A1", [(1,), (1,)], ["0", "2"])
SL3 = instance("A2")


class TestSpan:
    def test_canonical_form(self):
        a = span([Poly([1, 1]), Poly([2, 1]), Poly([0, 0, 3])])
        b = span([Poly([0, 0, 1]), ONE, Poly([5, 7])])
        assert a == b
        assert [int(p.degree) for p in a.basis] == [2, 1, 0]

    def test_membership_and_coords(self):
        V = span([ONE, X, Poly([0, 0, 1])])
        p = Poly([3, -2, 5])
        cs = V.coords(p)
        assert cs is not None and V.member(cs) == p
        assert V.coords(Poly([0, 0, 0, 1])) is None


class TestConstruction:
    def test_sl2_overview(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        assert V == span([Poly([-1, 1]), Poly([0, 0, 1])])

    def test_sl3_span_of_monomials(self):
        V = fundamental_space(SL3, (X, Poly([-2, 0, 1])))
        assert V == span([ONE, X, Poly([0, 0, 1])])

    def test_rank1_trivial(self):
        pi = instance("A1")
        assert fundamental_space(pi, (ONE,)) == span([ONE, X])

    def test_no_base_points(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        for z in SL2.points:
            assert any(b.eval(z) != 0 for b in V.basis)

    def test_first_coordinate_in_kernel(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        V = fundamental_space(SL3, atlas.members[(1, 2)].tuple_y)
        for member in atlas.members.values():
            if member.generic:
                assert V.contains(member.tuple_y[0])


class TestDPInvariance:
    def test_sl3_population(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        spaces = [
            fundamental_space(SL3, m.tuple_y)
            for m in atlas.members.values()
            if m.generic
        ]
        assert len(spaces) >= 5
        assert verify_dp(SL3, spaces, atlas.members[(2, 2)].tuple_y)

    def test_different_populations_differ(self):
        v1 = fundamental_space(SL2, (Poly([-1, 1]),))
        pi = instance("A1", [(2,), (2,)], ["0", "2"])
        atlas = explore_population(pi, (ONE,), 5, seed=0)
        l = min(l for l in atlas.members if l != (0,))
        v2 = fundamental_space(pi, atlas.members[l].tuple_y)
        assert not verify_dp(pi, [v1, v2])

    def test_single_space(self):
        assert verify_dp(SL2, [fundamental_space(SL2, (Poly([-1, 1]),))])


class TestExponents:
    def test_full_monomials(self):
        V = span([Poly([0] * k + [1]) for k in range(4)])
        assert exponents(V, Fraction(5)) == [0, 1, 2, 3]
        assert exponents(V, "inf") == [0, 1, 2, 3]

    def test_sl2_space(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        assert exponents(V, Fraction(0)) == [0, 2]
        assert exponents(V, "inf") == [1, 2]
        assert exponents(V, Fraction(1)) == [0, 1]

    def test_closed_forms_everywhere(self):
        pi = instance("A2", [(1, 0), (0, 1)], ["0", "1"])
        atlas = explore_population(pi, (ONE, ONE), 4, seed=0)
        member = next(m for m in atlas.members.values() if m.generic)
        V = fundamental_space(pi, member.tuple_y)
        for s, z in enumerate(pi.points):
            assert exponents(V, z) == expected_exponents_finite(pi, s)
        assert exponents(V, "inf") == expected_exponents_infinity(pi, member.tuple_y)
        assert pluecker_check(V, pi.points)

    def test_schubert_indices(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        assert schubert_index_finite(V, Fraction(0)) == (1, 0)
        assert schubert_index_infinity(V, 2) == (0, 0)
        assert pluecker_check(V, SL2.points)


class TestGeneratingMorphism:
    def test_monomial_flag(self):
        V = span([ONE, X, Poly([0, 0, 1])])
        fl = degree_flag(V)
        assert generating_morphism(V, fl, t_polys(SL3)) == (ONE, ONE)

    def test_sl2_flags(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        ts = t_polys(SL2)
        up = Flag.from_basis(V, [Poly([-1, 1]), Poly([0, 0, 1])])
        assert generating_morphism(V, up, ts) == (Poly([-1, 1]),)
        down = Flag.from_basis(V, [Poly([0, 0, 1]), Poly([-1, 1])])
        assert generating_morphism(V, down, ts) == (Poly([0, 0, 1]),)

    def test_round_trip_50_random_flags(self):
        rng = random.Random(7)
        for pi, y in (
            (SL3, (X, Poly([-2, 0, 1]))),
            (SL2, (Poly([-1, 1]),)),
        ):
            V = fundamental_space(pi, y)
            ts = t_polys(pi)
            n1 = V.dim
            for _ in range(25):
                while True:
                    mat = [
                        [Fraction(rng.randint(-3, 3)) for _ in range(n1)]
                        for _ in range(n1)
                    ]
                    try:
                        basis = [V.member(row) for row in mat]
                        flag = Flag.from_basis(V, basis)
                        break
                    except ValueError:
                        continue
                tup = generating_morphism(V, flag, ts)
                back = flag_from_tuple(V, tup, ts)
                assert back.basis == flag.basis
                assert generating_morphism(V, back, ts) == tup

    def test_not_in_image(self):
        V = fundamental_space(SL2, (Poly([-1, 1]),))
        ts = t_polys(SL2)
        with pytest.raises(NotInImage):
            flag_from_tuple(V, (Poly([0, 0, 0, 1]),), ts)


class TestBruhat:
    def test_reference_is_identity(self):
        V = span([ONE, X, Poly([0, 0, 1])])
        w, _ = bruhat_index(V, degree_flag(V))
        assert w == (1, 2, 3)

    def test_longest_for_top_cell(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        V = fundamental_space(SL3, atlas.members[(2, 2)].tuple_y)
        ts = t_polys(SL3)
        fl = flag_from_tuple(V, atlas.members[(2, 2)].tuple_y, ts)
        w, _ = bruhat_index(V, fl)
        assert w == (3, 2, 1)

    def test_lemma_on_all_members(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        V = fundamental_space(SL3, atlas.members[(2, 2)].tuple_y)
        ts = t_polys(SL3)
        lam_t, _ = dominant_representative(
            SL3.rd, weight_at_infinity(SL3, (ONE, ONE))
        )
        for l, member in atlas.members.items():
            fl = flag_from_tuple(V, member.tuple_y, ts)
            w, _ = bruhat_index(V, fl)
            welt = perm_to_weyl(SL3.rd, w)
            target = tuple(
                -c for c in SL3.rd.root_coroot_coords(l)
            )  # sum of Lambda_s vanishes here
            assert shifted_action(SL3.rd, welt, lam_t) == target

    def test_degree_vector_from_beta_matches(self):
        rng = random.Random(11)
        V = fundamental_space(SL3, (X, Poly([-2, 0, 1])))
        ts = t_polys(SL3)
        for _ in range(10):
            while True:
                try:
                    basis = [
                        V.member([Fraction(rng.randint(-3, 3)) for _ in range(3)])
                        for _ in range(3)
                    ]
                    flag = Flag.from_basis(V, basis)
                    break
                except ValueError:
                    continue
            tup = generating_morphism(V, flag, ts)
            w, levels = bruhat_index(V, flag)
            lvec = tuple(int(p.degree) for p in tup)
            lam_t, _ = dominant_representative(
                SL3.rd, weight_at_infinity(SL3, (ONE, ONE))
            )
            welt = perm_to_weyl(SL3.rd, w)
            predicted = shifted_action(SL3.rd, welt, lam_t)
            assert tuple(-c for c in SL3.rd.root_coroot_coords(lvec)) == predicted
