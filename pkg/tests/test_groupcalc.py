"""Standard elements, membership, orders, hops and the factorisation."""

from fractions import Fraction
from random import Random

import pytest

from thompson.dyadic import CirclePoint, Dyadic, dyadic
from thompson.plmap import (Arc, CIRCLE, PLMap, compose, conjugate, inverse, power,
                            rotation, thompson_like_map, transport)
from thompson.groupcalc import (HopCertificate, HopFailure, INFINITE, UnknownOrder,
                                admits_hops, box_generators, factor_over_cover,
                                is_member, is_prime, order_of, rotation_number,
                                torsion_rep, x, zeta)
from thompson.treepair import TreePair, parse_element
from conftest import random_element


class TestStandardElements:
    def test_generator_pairs(self):
        assert TreePair.from_plmap(x(0)).render() == "(00, 01, 1) -> (0, 10, 11)"
        assert TreePair.from_plmap(x(1)).render() == "(0, 100, 101, 11) -> (0, 10, 110, 111)"

    def test_presentation_relations(self):
        for i in range(5):
            for j in range(i + 1, 5):
                assert conjugate(x(j), x(i)) == x(j + 1)

    def test_torsion_rep_displays(self):
        assert TreePair.from_plmap(torsion_rep(2)).render() == "(0, 1) -> (1, 0)"
        assert TreePair.from_plmap(torsion_rep(3)).render() == "(0, 10, 11) -> (10, 11, 0)"
        assert TreePair.from_plmap(torsion_rep(5)).render() == \
            "(00, 01, 10, 110, 111) -> (01, 10, 110, 111, 00)"
        assert TreePair.from_plmap(torsion_rep(7)).render() == \
            "(00, 01, 10, 110, 1110, 11110, 11111) -> (01, 10, 110, 1110, 11110, 11111, 00)"

    def test_torsion_rep_rejects_composites(self):
        with pytest.raises(ValueError):
            torsion_rep(4)
        assert is_prime(2) and is_prime(7) and not is_prime(9)

    def test_half_rotation(self):
        assert torsion_rep(2) == rotation(dyadic("1/2"))


class TestMembership:
    def test_zeta_in_box(self):
        assert is_member(zeta(), "F", box=(dyadic(0), dyadic("3/4")))
        assert not is_member(zeta(), "F", box=(dyadic(0), dyadic("5/8")))

    def test_rotation_not_in_F(self):
        assert not is_member(rotation(dyadic("1/2")), "F")
        assert is_member(rotation(dyadic("1/2")), "T")

    def test_case_c_kappa1_in_box(self):
        kappa1 = conjugate(zeta().as_circle(), torsion_rep(5))
        assert is_member(kappa1, "T", box=Arc(0, "7/8"))
        assert is_member(kappa1, "F")  # it also fixes 0


class TestOrder:
    def test_torsion_orders(self):
        for p in (2, 3, 5, 7):
            assert order_of(torsion_rep(p)) == p
            assert power(torsion_rep(p), p).is_identity()
            for m in range(1, p):
                assert not power(torsion_rep(p), m).is_identity()

    def test_case_b_cube_directly(self):
        a = torsion_rep(3)
        assert compose(compose(a, a), a).is_identity()

    def test_zeta_is_infinite_via_fixed_set(self):
        assert order_of(zeta()) is INFINITE

    def test_infinite_without_fixed_points(self):
        bump = box_generators((dyadic("1/2"), dyadic("3/4")), [x(0)])[0]
        f = compose(rotation(dyadic("1/2")), bump.as_circle())
        assert f.fixed_points().is_empty()
        assert order_of(f) is INFINITE

    def test_unknown_when_bound_too_small(self):
        assert order_of(torsion_rep(5), bound=3) == UnknownOrder(3)

    def test_identity(self):
        assert order_of(PLMap.identity()) == 1


class TestRotationNumber:
    def test_values(self):
        assert rotation_number(torsion_rep(2)) == Fraction(1, 2)
        assert rotation_number(torsion_rep(5)) == Fraction(1, 5)
        assert rotation_number(PLMap.identity(CIRCLE)) == 0

    def test_powers_add(self):
        for p in (2, 3, 5, 7):
            rho = rotation_number(torsion_rep(p))
            for m in range(1, p + 1):
                got = rotation_number(power(torsion_rep(p), m))
                want = (m * rho) % 1
                assert got == want

    def test_unknown_for_infinite(self):
        assert rotation_number(zeta()) is None

    def test_general_rotation(self):
        assert rotation_number(rotation(dyadic("3/8"))) == Fraction(3, 8)


class TestHops:
    def test_zeta_hops_at_eighth(self):
        cert = admits_hops(zeta(), CirclePoint(dyadic("1/8")), 5)
        assert isinstance(cert, HopCertificate)
        assert [str(p) for p in cert.orbit] == ["1/8", "1/4", "1/2", "5/8", "11/16", "23/32"]
        assert cert.validate()

    def test_x0_eighteen_hops(self):
        cert = admits_hops(x(0), CirclePoint(dyadic("1/4")), 18)
        assert isinstance(cert, HopCertificate)

    def test_half_rotation_caps_at_two(self):
        f = rotation(dyadic("1/2"))
        assert isinstance(admits_hops(f, CirclePoint(0), 2), HopCertificate)
        fail = admits_hops(f, CirclePoint(0), 3)
        assert isinstance(fail, HopFailure) and (fail.i, fail.j) == (0, 2)

    def test_fixed_base_rejected(self):
        with pytest.raises(ValueError):
            admits_hops(zeta(), CirclePoint(dyadic("7/8")), 2)

    def test_independent_pairwise_oracle(self):
        # re-check certificates with a different disjointness routine
        for f, p, k in ((zeta(), "1/8", 6), (x(0), "1/4", 12),
                        (rotation(dyadic("1/4")), "1/8", 4)):
            cert = admits_hops(f, CirclePoint(dyadic(p)), k)
            assert isinstance(cert, HopCertificate)
            arcs = cert.arcs()
            for i in range(len(arcs)):
                for j in range(i + 1, len(arcs)):
                    assert arcs[i].intersect(arcs[j]) == []


class TestFactorisation:
    def test_identity(self):
        fact = factor_over_cover(PLMap.identity(), 0, dyadic("1/4"),
                                 dyadic("7/8"), 1)
        assert fact.alpha.is_identity() and fact.beta.is_identity()

    def test_zeta_example(self):
        fact = factor_over_cover(zeta(), 0, dyadic("1/4"), dyadic("7/8"), 1)
        assert not fact.inverted
        assert fact.product() == zeta()
        assert fact.alpha.support().issubset_of([Arc(0, "7/8")])
        assert fact.beta.support().issubset_of([Arc("1/4", 0)])
        # alpha copies zeta up to the preimage of the cut
        e = inverse(zeta()).eval(dyadic("1/4"))
        assert fact.alpha.agrees_with(zeta(), Arc(0, e))

    def test_inverse_branch(self):
        fact = factor_over_cover(inverse(zeta()), 0, dyadic("1/4"), dyadic("7/8"), 1)
        assert fact.inverted
        assert fact.product() == inverse(zeta())
        assert fact.alpha.support().issubset_of([Arc(0, "7/8")])
        assert fact.beta.support().issubset_of([Arc("1/4", 0)])

    def test_bad_cuts_rejected(self):
        with pytest.raises(ValueError):
            factor_over_cover(zeta(), 0, dyadic("7/8"), dyadic("1/4"), 1)
        with pytest.raises(ValueError):
            factor_over_cover(zeta(), 0, dyadic("1/16"), dyadic("1/8"), dyadic("1/2"))

    def test_random_sample(self):
        rng = Random(31)
        for _ in range(25):
            ticks = sorted(rng.sample(range(17), 4))
            a, b, c, d = (Dyadic(t, 4) for t in ticks)
            g = transport(random_element(rng),
                          thompson_like_map(Arc(0, 0), Arc(a, d))).to_interval()
            fact = factor_over_cover(g, a, b, c, d)
            assert fact.product() == g
            assert fact.alpha.support().issubset_of([Arc(a, c)])
            assert fact.beta.support().issubset_of([Arc(b, d)])


class TestBoxGenerators:
    def test_unit_box_is_identity_transport(self):
        g0, g1 = box_generators((dyadic(0), dyadic(1)), [x(0), x(1)])
        assert g0 == x(0) and g1 == x(1)

    def test_supports_contained(self):
        rng = Random(41)
        for _ in range(8):
            ticks = sorted(rng.sample(range(1, 16), 2))
            box = Arc(Dyadic(ticks[0], 4), Dyadic(ticks[1], 4))
            for h in box_generators(box, [x(0), x(1), zeta()]):
                assert h.support().issubset_of([box])

    def test_wrapping_box(self):
        box = Arc("3/4", "1/4")
        for h in box_generators(box, [x(0), x(1)]):
            assert h.support().issubset_of([box])
