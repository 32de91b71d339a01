import itertools
import json
from fractions import Fraction

import pytest

from critpop.core import (
    degree_vector,
    heine_stieltjes_test,
    is_generic,
    monic_tuple,
    weight_at_infinity,
    wronskian_rhs,
)
from critpop.errors import NotFertile
from critpop.poly import ONE, X, Poly, wronskian
from critpop.reproduction import (
    degree_vector_to_weyl,
    explore_population,
    immediate_descendants,
    is_fertile,
    param_candidates,
    predicted_degree_vectors,
    solve_wronskian_equation,
)
from critpop.roots import dominant_representative, shifted_action
from conftest import instance

SL3 = instance("A2")
SL2 = instance("A1", [(1,), (1,)], ["0", "2"])


def test_param_sequence_prefix():
    got = list(itertools.islice(param_candidates(), 5))
    assert got == [0, 1, -1, 2, Fraction(1, 2)]


class TestSolver:
    def test_unit(self):
        fam = solve_wronskian_equation(ONE, ONE)
        assert fam.base == X and fam.fiber == ONE

    def test_family_line(self):
        a, b = Fraction(2), Fraction(3)
        y = Poly([a, 1])
        rhs = Poly([b, a, Fraction(1, 2)])
        fam = solve_wronskian_equation(y, rhs)
        for c in (0, 1, -2):
            m = fam.member(Fraction(c))
            assert y * m.deriv() - y.deriv() * m == rhs

    def test_overview_example(self):
        fam = solve_wronskian_equation(Poly([-1, 1]), Poly([0, -2, 1]))
        assert fam.base.monic() == Poly([0, 0, 1])
        assert fam.fiber == Poly([-1, 1])

    def test_infertile(self):
        # W(x^2, u) = x^2 u' - 2x u is divisible by x, so it is never 1
        assert solve_wronskian_equation(Poly([0, 0, 1]), ONE) is None


class TestDescendants:
    def test_sl3_first_steps(self):
        fam = immediate_descendants(SL3, (ONE, ONE), 0)
        assert fam.base == X  # family x + a
        y = monic_tuple((Poly([2, 1]), ONE))
        fam2 = immediate_descendants(SL3, y, 1)
        # W(1, u) = x + a: family x^2/2 + ax + b, monic rep x^2 + 2ax + 2b
        m = fam2.member(Fraction(0)).monic()
        assert m.degree == 2

    def test_b2_direction_2(self):
        pib = instance("B2")
        fam = immediate_descendants(pib, (ONE, ONE), 1)
        assert fam.base == X and fam.fiber == ONE

    def test_not_fertile(self):
        with pytest.raises(NotFertile):
            immediate_descendants(SL2, (Poly([-3, 1]),), 0)

    def test_involution(self, rng):
        # a descendant's family in the same direction contains the parent
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=1)
        for l, member in atlas.members.items():
            y = member.tuple_y
            for i in range(2):
                fam = solve_wronskian_equation(y[i], wronskian_rhs(SL3, y, i))
                child_poly = fam.member(Fraction(1))
                child = monic_tuple(y[:i] + (child_poly,) + y[i + 1:])
                rhs_child = wronskian_rhs(SL3, child, i)
                w = wronskian([child[i], y[i]])
                # parent lies on the child's solution line
                assert not w.is_zero()
                assert w.monic() == rhs_child.monic()


class TestExploration:
    def test_sl3_golden(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        assert set(atlas.members) == {(0, 0), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2)}
        y1, y2 = atlas.members[(2, 2)].tuple_y
        assert y1[1] * y2[1] == 2 * y1[0] * y2[2] + 2 * y1[2] * y2[0]

    def test_members_critical(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        for member in atlas.members.values():
            if member.generic:
                assert heine_stieltjes_test(SL3, member.tuple_y)
            assert is_fertile(SL3, member.tuple_y)

    def test_degree_change_law(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        rd = SL3.rd
        for a, i, b in atlas.edges:
            if a == b:
                continue
            la = weight_at_infinity(SL3, atlas.members[a].tuple_y)
            lb = weight_at_infinity(SL3, atlas.members[b].tuple_y)
            from critpop.roots import generator, reflect

            assert shifted_action(rd, generator(rd, i), la) == lb

    def test_sl2_orbit(self):
        atlas = explore_population(SL2, (Poly([-1, 1]),), 4, seed=0)
        assert set(atlas.members) == {(1,), (2,)}

    def test_b2_c2_counts(self):
        for code in ("B2", "C2"):
            pi = instance(code)
            atlas = explore_population(pi, (ONE, ONE), 8, seed=0)
            assert len(atlas.members) == 8

    def test_intersecting_populations_coincide(self):
        base = explore_population(SL3, (ONE, ONE), 2, seed=0)
        for l in ((1, 0), (2, 2)):
            other = explore_population(SL3, base.members[l].tuple_y, 2, seed=5)
            assert set(other.members) == set(base.members)

    def test_weyl_orbit_prediction(self):
        atlas = explore_population(SL3, (ONE, ONE), 2, seed=0)
        lam0 = weight_at_infinity(SL3, (ONE, ONE))
        assert predicted_degree_vectors(SL3, lam0, 2) == set(atlas.members)


class TestDegreeVectorToWeyl:
    def test_identity(self):
        lam0 = weight_at_infinity(SL3, (ONE, ONE))
        assert degree_vector_to_weyl(SL3, lam0, (0, 0)).word == ()

    def test_longest(self):
        lam0 = weight_at_infinity(SL3, (ONE, ONE))
        w = degree_vector_to_weyl(SL3, lam0, (2, 2))
        assert w is not None and w.length == 3

    def test_cone_violation(self):
        lam0 = weight_at_infinity(SL3, (ONE, ONE))
        assert degree_vector_to_weyl(SL3, lam0, (7, 0)) is None


def test_atlas_json_deterministic():
    a1 = explore_population(SL3, (ONE, ONE), 2, seed=9).to_json(9, 2, "A2")
    a2 = explore_population(SL3, (ONE, ONE), 2, seed=9).to_json(9, 2, "A2")
    assert a1 == a2
    payload = json.loads(a1)
    assert payload["schema"] == "atlas-v1"
    assert len(payload["members"]) == 6
