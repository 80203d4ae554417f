import random
from fractions import Fraction

import pytest

from orbirr.chartab import character_table
from orbirr.exact import rational
from orbirr.groups import cyclic, dihedral, symmetric
from orbirr.repring import (ClassFunction, adams, exterior_power,
                            inner_product, invariants_dim, irreducible,
                            irreducibles, lambda_minus_one,
                            permutation_character, regular_character,
                            rep_from_json, tensor, trivial_character,
                            virtual_rep)

from exact_oracles import det_fraction, exterior_trace, perm_matrix


def s3_named():
    G = symmetric(3)
    triv = trivial_character(G)
    sign = next(v for v in irreducibles(G) if v.dim() == 1 and v != triv)
    std = next(v for v in irreducibles(G) if v.dim() == 2)
    return G, triv, sign, std


class TestTensor:
    def test_unit(self):
        G, triv, sign, std = s3_named()
        assert tensor(triv, std) == std

    def test_sign_squared(self):
        G, triv, sign, std = s3_named()
        assert tensor(sign, sign) == triv

    def test_std_squared(self):
        G, triv, sign, std = s3_named()
        vr = virtual_rep(tensor(std, std))
        # triv + sign + std, whatever the row order
        assert sorted(vr.coords) == [1, 1, 1]
        assert vr.dim == 4

    def test_group_mismatch(self):
        a = trivial_character(symmetric(3))
        b = trivial_character(cyclic(3))
        with pytest.raises(ValueError):
            tensor(a, b)


class TestInnerProduct:
    def test_orthonormal_irreducibles(self, catalog_groups):
        for G in catalog_groups:
            rows = irreducibles(G)
            for i, a in enumerate(rows):
                for j, b in enumerate(rows):
                    assert inner_product(a, b) == (1 if i == j else 0)

    def test_regular_contains_trivial_once(self, catalog_groups):
        for G in catalog_groups:
            assert inner_product(regular_character(G),
                                 trivial_character(G)) == 1

    def test_burnside_orbit_count(self):
        G = symmetric(3)
        assert inner_product(permutation_character(G),
                             trivial_character(G)) == 1


class TestInvariantsDim:
    def test_regular(self, catalog_groups):
        for G in catalog_groups:
            assert invariants_dim(regular_character(G)) == 1

    def test_nontrivial_character_of_cyclic(self):
        G = cyclic(5)
        for v in irreducibles(G):
            want = 1 if v == trivial_character(G) else 0
            assert invariants_dim(v) == want

    def test_std_s3(self):
        _, _, _, std = s3_named()
        assert invariants_dim(std) == 0


class TestVirtualRep:
    def test_decompose_then_reassemble(self, small_catalog):
        rng = random.Random(11)
        for G in small_catalog:
            rows = irreducibles(G)
            coeffs = [rng.randrange(-3, 4) for _ in rows]
            v = ClassFunction(G, [0] * len(rows))
            for c, chi in zip(coeffs, rows):
                v = v + c * chi
            vr = virtual_rep(v)
            assert list(vr.coords) == coeffs
            assert vr.function == v

    def test_rejects_non_virtual(self):
        G = cyclic(3)
        v = ClassFunction(G, [rational(Fraction(1, 2)), rational(0), rational(0)])
        with pytest.raises(ValueError):
            virtual_rep(v)

    def test_dimension_identity(self):
        G, triv, sign, std = s3_named()
        vr = virtual_rep(std + std + sign)
        table = character_table(G)
        assert vr.dim == sum(c * d for c, d in zip(vr.coords, table.degrees))


class TestExteriorPowers:
    def test_lambda_one_is_identity(self, small_catalog):
        for G in small_catalog:
            chi = permutation_character(G)
            assert exterior_power(chi, 1) == chi

    def test_lambda_zero(self):
        G = symmetric(3)
        assert exterior_power(permutation_character(G), 0) == \
            trivial_character(G)

    def test_lambda2_std_is_sign(self):
        G, triv, sign, std = s3_named()
        assert exterior_power(std, 2) == sign

    def test_top_power_of_perm_rep_is_sign(self):
        G, triv, sign, std = s3_named()
        assert exterior_power(permutation_character(G), 3) == sign

    @pytest.mark.parametrize("G", [symmetric(3), symmetric(4), dihedral(4),
                                   cyclic(2), cyclic(5), cyclic(8)])
    def test_matches_minor_sums(self, G):
        # trace of the induced action on Lambda^k equals the recursion output
        chi = permutation_character(G)
        for k in range(G.degree + 2):
            lam = exterior_power(chi, k)
            for idx, cls in enumerate(G.conjugacy_classes()):
                want = exterior_trace(perm_matrix(cls.representative), k)
                assert lam.values[idx] == rational(want)

    def test_vanishes_above_dimension(self, small_catalog):
        for G in small_catalog:
            chi = permutation_character(G)
            above = exterior_power(chi, G.degree + 1)
            assert all(v.is_zero() for v in above.values)

    def test_whitney_sum_factorization(self):
        G, triv, sign, std = s3_named()
        v, w = std, sign
        total = v + w
        dim = int(total.dim())
        for idx in range(len(G.conjugacy_classes())):
            for k in range(dim + 1):
                direct = exterior_power(total, k).values[idx]
                conv = rational(0)
                for i in range(k + 1):
                    conv = conv + (exterior_power(v, i).values[idx]
                                   * exterior_power(w, k - i).values[idx])
                assert direct == conv


class TestLambdaMinusOne:
    def test_trivial_character(self):
        G = cyclic(4)
        lam = lambda_minus_one(trivial_character(G))
        assert all(v.is_zero() for v in lam.values)

    def test_one_dim_value(self):
        G = cyclic(6)
        for chi in irreducibles(G):
            lam = lambda_minus_one(chi)
            for i in range(len(lam.values)):
                assert lam.values[i] == rational(1) - chi.values[i]

    @pytest.mark.parametrize("G", [symmetric(3), symmetric(4), dihedral(4),
                                   cyclic(3), cyclic(8)])
    def test_det_identity(self, G):
        chi = permutation_character(G)
        lam = lambda_minus_one(chi)
        for idx, cls in enumerate(G.conjugacy_classes()):
            mat = perm_matrix(cls.representative)
            n = len(mat)
            id_minus = [[Fraction(1 if i == j else 0) - mat[i][j]
                         for j in range(n)] for i in range(n)]
            assert lam.values[idx] == rational(det_fraction(id_minus))

    def test_rejects_virtual(self):
        G, triv, sign, std = s3_named()
        with pytest.raises(ValueError):
            lambda_minus_one(std - sign - sign)


class TestAdams:
    def test_psi_one(self):
        G = symmetric(4)
        chi = permutation_character(G)
        assert adams(chi, 1) == chi

    def test_psi_at_identity(self):
        G = symmetric(3)
        chi = permutation_character(G)
        for m in (2, 3, 5):
            assert adams(chi, m).dim() == chi.dim()


class TestJsonDescriptors:
    def test_kinds(self):
        G = symmetric(3)
        assert rep_from_json(G, {"kind": "regular"}) == regular_character(G)
        assert rep_from_json(G, {"kind": "permutation"}) == \
            permutation_character(G)
        assert rep_from_json(G, {"kind": "irreducible", "index": 0}) == \
            irreducible(G, 0)
        v = rep_from_json(G, {"kind": "character",
                              "values_by_class": ["2", "0", "-1"]})
        assert v.dim() == 2

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            rep_from_json(symmetric(3), {"kind": "spin"})

    def test_bad_index(self):
        with pytest.raises(ValueError):
            rep_from_json(symmetric(3), {"kind": "irreducible", "index": 9})
