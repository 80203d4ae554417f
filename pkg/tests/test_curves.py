import itertools
from fractions import Fraction

import pytest

import orbirr.curves as curves_mod
from orbirr.curves import (HrrIntegralityError, StackyCurve,
                           canonical_divisor, curve_from_json,
                           divisor_from_json, euler_char_oracle, euler_orb,
                           euler_phy, from_group_action, gauss_bonnet_coarse,
                           hrr_integral, q_divisor, sector_contribution,
                           tangent_degree)
from orbirr.exact import rational
from orbirr.inertia import curve_sectors

C237 = StackyCurve(0, (("x1", 2), ("x2", 3), ("x3", 7)))


def grid_curves(genus_max=2, max_order=8, max_points=3):
    for g in range(genus_max + 1):
        for r in range(max_points + 1):
            for orders in itertools.combinations_with_replacement(
                    range(2, max_order + 1), r):
                yield StackyCurve(g, tuple(
                    (f"x{i+1}", n) for i, n in enumerate(orders)))


class TestStackyCurve:
    def test_validation(self):
        with pytest.raises(ValueError):
            StackyCurve(-1)
        with pytest.raises(ValueError):
            StackyCurve(0, (("a", 1),))
        with pytest.raises(ValueError):
            StackyCurve(0, (("a", 2), ("a", 3)))

    def test_json(self):
        c = curve_from_json('{"genus":0,"points":[{"label":"x1","order":2},'
                            '{"label":"x2","order":3},{"label":"x3","order":7}]}')
        assert c == C237


class TestQDivisor:
    def test_canonical_form(self):
        d = q_divisor(C237, 0, {"x1": 3, "x2": -1, "x3": 7})
        assert d.weight("x1") == 1 and d.free_degree == 0 + 1 - 1 + 1
        assert d.weight("x2") == 2 and d.weight("x3") == 0

    def test_degree(self):
        d = q_divisor(C237, -2, {"x1": 1, "x2": 2, "x3": 6})
        assert d.deg() == Fraction(1, 42)
        assert d.floor_deg() == -2

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            q_divisor(C237, 0, {"y": 1})

    def test_addition_carries(self):
        a = q_divisor(C237, 0, {"x1": 1})
        b = q_divisor(C237, 0, {"x1": 1})
        assert (a + b).free_degree == 1
        assert (a + b).weight("x1") == 0

    def test_json(self):
        d = divisor_from_json(C237, '{"free_degree":-2,'
                              '"weights":{"x1":1,"x2":2,"x3":6}}')
        assert d == canonical_divisor(C237)


class TestTangentDegree:
    def test_elliptic(self):
        assert tangent_degree(StackyCurve(1)) == 0

    def test_237(self):
        assert tangent_degree(C237) == Fraction(-1, 42)

    def test_two_twos(self):
        assert tangent_degree(StackyCurve(0, (("a", 2), ("b", 2)))) == 1


class TestCanonicalDivisor:
    def test_elliptic(self):
        K = canonical_divisor(StackyCurve(1))
        assert K.free_degree == 0 and K.deg() == 0

    def test_237(self):
        K = canonical_divisor(C237)
        assert K.free_degree == -2
        assert [K.weight(f"x{i}") for i in (1, 2, 3)] == [1, 2, 6]
        assert K.deg() == -tangent_degree(C237)

    def test_genus_two(self):
        assert canonical_divisor(StackyCurve(2)).free_degree == 2

    def test_degree_always_opposite_tangent(self):
        for c in grid_curves(2, 6, 2):
            assert canonical_divisor(c).deg() == -tangent_degree(c)


class TestOracle:
    def test_structure_sheaf(self):
        for c in grid_curves(2, 5, 2):
            assert euler_char_oracle(c, q_divisor(c)) == 1 - c.genus

    def test_fractional_part_ignored(self):
        c = StackyCurve(0, (("x1", 2), ("x2", 3)))
        d = q_divisor(c, 0, {"x1": 1, "x2": 2})
        assert euler_char_oracle(c, d) == 1

    def test_canonical_237(self):
        assert euler_char_oracle(C237, canonical_divisor(C237)) == -1


class TestSectorContribution:
    def test_e_factor_sum(self):
        # weight-0 contributions over one point of order 3 sum to 1/3
        c = StackyCurve(0, (("p", 3),))
        total = rational(0)
        for s in curve_sectors(c)[1:]:
            total = total + sector_contribution(s, q_divisor(c))
        assert total == Fraction(1, 3)

    def test_order_two_value(self):
        c = StackyCurve(0, (("p", 2),))
        d = q_divisor(c, 0, {"p": 1})
        s = curve_sectors(c)[1]
        assert sector_contribution(s, d) == Fraction(-1, 4)

    def test_total_over_k_rational(self):
        c = StackyCurve(0, (("p", 7),))
        for a in range(7):
            d = q_divisor(c, 0, {"p": a})
            total = rational(0)
            for s in curve_sectors(c)[1:]:
                total = total + sector_contribution(s, d)
            assert total.as_rational() is not None

    def test_untwisted_rejected(self):
        s = curve_sectors(C237)[0]
        with pytest.raises(ValueError):
            sector_contribution(s, q_divisor(C237))


class TestHrrIntegral:
    def test_smooth_classical(self):
        for g in (0, 1, 2):
            c = StackyCurve(g)
            for d in range(-3, 4):
                assert hrr_integral(c, q_divisor(c, d)) == d + 1 - g

    def test_structure_sheaf(self):
        for c in grid_curves(2, 6, 2):
            assert hrr_integral(c, q_divisor(c)) == 1 - c.genus

    def test_oracle_equality_237_full(self):
        for d in range(-2, 3):
            for w in itertools.product(range(2), range(3), range(7)):
                div = q_divisor(C237, d,
                                {"x1": w[0], "x2": w[1], "x3": w[2]})
                assert hrr_integral(C237, div) == euler_char_oracle(C237, div)

    def test_degree_shift_by_free_point(self):
        for c in grid_curves(1, 5, 2):
            base = q_divisor(c, 0, {lab: n - 1 for lab, n in c.points})
            shifted = q_divisor(c, 1, {lab: n - 1 for lab, n in c.points})
            assert hrr_integral(c, shifted) - hrr_integral(c, base) == 1

    def test_serre_duality_shadow(self):
        for c in grid_curves(2, 5, 2):
            K = canonical_divisor(c)
            for d in (-2, 0, 1):
                div = q_divisor(c, d, {lab: 1 for lab, _ in c.points})
                assert euler_char_oracle(c, div) == \
                    -euler_char_oracle(c, K - div)

    def test_integrality_guard_fires_on_bad_sector_sum(self, monkeypatch):
        monkeypatch.setattr(curves_mod, "_point_total",
                            lambda n, a: Fraction(1, 3))
        with pytest.raises(HrrIntegralityError):
            hrr_integral(C237, q_divisor(C237))


class TestEulerCharacteristics:
    def test_orb_smooth(self):
        for g in (0, 1, 2, 5):
            assert euler_orb(StackyCurve(g)) == 2 - 2 * g

    def test_orb_237(self):
        assert euler_orb(C237) == Fraction(-1, 42)

    def test_orb_equals_tangent_degree(self):
        for c in grid_curves(2, 8, 3):
            assert euler_orb(c) == tangent_degree(c)

    def test_phy_smooth(self):
        for g in (0, 1, 3):
            assert euler_phy(StackyCurve(g)) == 2 - 2 * g

    def test_phy_237(self):
        assert euler_phy(C237) == 11

    def test_gauss_bonnet_237(self):
        assert gauss_bonnet_coarse(C237) == 2

    def test_gauss_bonnet_genus_one(self):
        for orders in ((), (2,), (2, 3, 4)):
            pts = tuple((f"x{i+1}", n) for i, n in enumerate(orders))
            assert gauss_bonnet_coarse(StackyCurve(1, pts)) == 0

    def test_gauss_bonnet_smooth_genus_two(self):
        assert gauss_bonnet_coarse(StackyCurve(2)) == -2

    def test_gauss_bonnet_whole_grid(self):
        for c in grid_curves(2, 6, 2):
            assert gauss_bonnet_coarse(c) == 2 - 2 * c.genus


class TestFromGroupAction:
    def test_klein_quartic_data(self):
        curve, g_x = from_group_action(0, [2, 3, 7], 168)
        assert curve == C237 and g_x == 3

    def test_double_cover(self):
        _, g_x = from_group_action(0, [2, 2], 2)
        assert g_x == 0

    def test_unramified_torus_cover(self):
        _, g_x = from_group_action(1, [], 5)
        assert g_x == 1

    def test_rejects_nondividing_order(self):
        with pytest.raises(ValueError):
            from_group_action(0, [3], 4)

    def test_rejects_negative_genus(self):
        with pytest.raises(ValueError):
            from_group_action(0, [], 3)  # would give 2-2g = 6, g = -2

    def test_rejects_non_integer_genus(self):
        with pytest.raises(ValueError):
            from_group_action(0, [2], 2)  # 2 - 2g would be odd
