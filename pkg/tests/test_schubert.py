import math
import random
from fractions import Fraction

import pytest

from critpop.errors import Inconsistent
from critpop.fundamental import fundamental_space, schubert_index_finite, schubert_index_infinity
from critpop.poly import ONE, Poly
from critpop.schubert import (
    convert_ramification,
    count_critical_sl2,
    hook_content_dim,
    lr_coefficient,
    lr_expand,
    multiplicity_bound,
    multiplicity_oracle,
    population_count_report,
    weight_to_partition,
)
from conftest import instance, seeded_points


class TestLR:
    def test_pieri(self):
        assert lr_coefficient((1,), (1,), (2,)) == 1
        assert lr_coefficient((1,), (1,), (1, 1)) == 1

    def test_classic_multiplicity_two(self):
        assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2

    def test_size_grading(self):
        assert lr_coefficient((2,), (1,), (2,)) == 0

    def test_symmetry_and_dimension_oracle(self):
        rng = random.Random(12)
        for _ in range(50):
            lam = tuple(sorted((rng.randint(0, 3) for _ in range(3)), reverse=True))
            mu = tuple(sorted((rng.randint(0, 3) for _ in range(3)), reverse=True))
            if sum(lam) > 6 or sum(mu) > 6:
                continue
            k = 4
            exp = lr_expand(lam, mu, k)
            total = sum(c * hook_content_dim(nu, k) for nu, c in exp.items())
            assert total == hook_content_dim(lam, k) * hook_content_dim(mu, k)
            for nu, c in exp.items():
                assert lr_coefficient(lam, mu, nu) == c == lr_coefficient(mu, lam, nu)

    def test_hook_content(self):
        assert hook_content_dim((1,), 3) == 3
        assert hook_content_dim((1, 1, 1), 3) == 1
        assert hook_content_dim((2, 1), 3) == 8


class TestMultiplicity:
    def test_clebsch_gordan(self):
        pi = instance("A1", [(1,), (1,)], ["0", "1"])
        assert multiplicity_bound(pi, (0,)) == 1
        assert multiplicity_bound(pi, (2,)) == 1
        assert multiplicity_bound(pi, (1,)) == 0

    def test_triple_spin_half(self):
        pi = instance("A1", [(1,), (1,), (1,)], ["0", "1", "2"])
        assert multiplicity_bound(pi, (1,)) == 2
        assert multiplicity_oracle(pi, (1,)) == 2

    def test_sl3_clebsch(self):
        pi = instance("A2", [(1, 0), (0, 1)], ["0", "1"])
        assert multiplicity_bound(pi, (0, 0)) == 1
        assert multiplicity_bound(pi, (1, 1)) == 1
        assert multiplicity_oracle(pi, (0, 0)) == 1

    def test_oracle_agreement_battery(self):
        rng = random.Random(9)
        weights_a1 = [(1,), (2,), (3,)]
        for _ in range(12):
            n = rng.randint(1, 3)
            ws = [rng.choice(weights_a1) for _ in range(n)]
            pi = instance("A1", ws, [str(z) for z in seeded_points(rng, n)])
            total = sum(w[0] for w in ws)
            for lam in range(total % 2, total + 1, 2):
                assert multiplicity_bound(pi, (lam,)) == multiplicity_oracle(pi, (lam,))
        for _ in range(6):
            n = rng.randint(1, 2)
            ws = [
                tuple(rng.choice([(1, 0), (0, 1), (1, 1)]))
                for _ in range(n)
            ]
            pi = instance("A2", ws, [str(z) for z in seeded_points(rng, n)])
            for lam in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0)):
                assert multiplicity_bound(pi, lam) == multiplicity_oracle(pi, lam)

    def test_partition_dictionary(self):
        assert weight_to_partition((2, 1)) == (3, 1, 0)


class TestRamification:
    def test_trivial_triple(self):
        t = convert_ramification(d=4, point_kind="finite", a=(0, 0, 0))
        assert t.m == (0, 0) and t.lam == (0, 0)

    def test_finite_round_trip(self):
        rng = random.Random(3)
        for _ in range(100):
            n1 = rng.randint(2, 4)
            lam = tuple(rng.randint(0, 3) for _ in range(n1 - 1))
            d = sum(lam) + n1 + rng.randint(0, 2)
            t = convert_ramification(d=d, point_kind="finite", lam=lam)
            back = convert_ramification(d=d, point_kind="finite", a=t.a)
            assert back.m == lam and back.a == t.a

    def test_infinity_round_trip(self):
        rng = random.Random(4)
        for _ in range(100):
            n1 = rng.randint(2, 4)
            gaps = tuple(rng.randint(0, 2) for _ in range(n1 - 1))
            span = sum(g + 1 for g in gaps)
            l1 = rng.randint(0, 2)
            d = l1 + span + rng.randint(0, 2)
            t = convert_ramification(d=d, point_kind="infinity", m=gaps, l1=l1)
            back = convert_ramification(d=d, point_kind="infinity", a=t.a)
            assert back.m == gaps

    def test_space_dictionary_and_pluecker(self):
        pi = instance("A1", [(1,), (1,)], ["0", "2"])
        V = fundamental_space(pi, (Poly([-1, 1]),))
        d = max(V.degrees())
        a0 = schubert_index_finite(V, Fraction(0))
        t = convert_ramification(d=d, point_kind="finite", a=a0)
        assert t.lam == (1,)
        ainf = schubert_index_infinity(V, d)
        total = sum(a0) + sum(schubert_index_finite(V, Fraction(2))) + sum(ainf)
        assert total == V.dim * (d - V.dim + 1)

    def test_invalid(self):
        with pytest.raises(Inconsistent):
            convert_ramification(d=2, point_kind="finite", a=(0, 1))
        with pytest.raises(Inconsistent):
            convert_ramification(d=2, point_kind="nowhere", a=(0, 0))
        with pytest.raises(Inconsistent):
            convert_ramification(d=1, point_kind="finite", a=(3, 0))


class TestExactCounts:
    def test_midpoint_unique(self):
        pi = instance("A1", [(1,), (1,)], ["0", "2"])
        exact, bound = population_count_report(pi, 1)
        assert exact == bound == 1

    def test_quadratic_two(self):
        pi = instance("A1", [(1,), (1,), (1,)], ["0", "1", "3"])
        exact, bound = population_count_report(pi, 1)
        assert exact == bound == 2

    def test_catalan_battery(self):
        rng = random.Random(8)
        for n in (2, 3, 4, 5):
            pts = seeded_points(rng, n)
            pi = instance("A1", [(1,)] * n, [str(z) for z in pts])
            for l in (1, 2):
                if n - 2 * l < 0:
                    continue
                exact, bound = population_count_report(pi, l)
                expected = math.comb(n, l) - math.comb(n, l - 1)
                assert exact == bound == expected, (n, l)

    def test_negative_weight_zero(self):
        pi = instance("A1", [(1,)], ["0"])
        assert population_count_report(pi, 2) == (0, 0)

    def test_degree_zero(self):
        pi = instance("A1", [(1,), (1,)], ["0", "2"])
        assert count_critical_sl2(pi, 0) == 1
