"""The PL homeomorphism layer: evaluation, algebra, dynamics, fragments."""

from fractions import Fraction
from random import Random

import pytest

from thompson.dyadic import CirclePoint, Dyadic, ONE, ZERO, dyadic
from thompson.plmap import (Arc, ArcMap, CIRCLE, INTERVAL, MapError, PLMap,
                            compose, conjugate, commutator, inverse, power,
                            restrict_patch, rotation, thompson_like_map,
                            transport, union_covers_circle, normalize_arc_union,
                            WHOLE_CIRCLE, dyadic_points_in_arc)
from conftest import random_element, random_dyadic_in_unit


def zeta_map():
    return PLMap(INTERVAL, [("0", "0"), ("1/4", "1/2"), ("3/4", "3/4"), ("1", "1")])


def x1_map():
    return PLMap(INTERVAL, [("0", "0"), ("1/2", "1/2"), ("5/8", "3/4"),
                            ("3/4", "7/8"), ("1", "1")])


class TestEval:
    def test_zeta_display_values(self):
        z = zeta_map()
        assert z.eval(dyadic("1/8")) == dyadic("1/4")
        assert z.eval(dyadic("1/2")) == dyadic("5/8")
        assert z.eval(dyadic("7/8")) == dyadic("7/8")

    def test_eval_compose_contract(self):
        rng = Random(11)
        for _ in range(20):
            f = random_element(rng, circle=True)
            g = random_element(rng, circle=True)
            fg = compose(f, g)
            for _ in range(100):
                p = CirclePoint(random_dyadic_in_unit(rng))
                assert fg.eval(p) == g.eval(f.eval(p))

    def test_identity_and_rotation(self):
        assert PLMap.identity().eval(dyadic("5/8")) == dyadic("5/8")
        assert rotation(0) == PLMap.identity(CIRCLE)
        r = rotation(dyadic("1/4"))
        assert r.eval(CirclePoint(dyadic("7/8"))) == CirclePoint(dyadic("1/8"))
        assert power(r, 4).is_identity()


class TestGroupAxioms:
    def test_axioms_on_random_sample(self):
        rng = Random(5)
        for _ in range(15):
            f = random_element(rng, circle=True)
            g = random_element(rng, circle=True)
            h = random_element(rng, circle=True)
            assert compose(compose(f, g), h) == compose(f, compose(g, h))
            assert compose(f, inverse(f)).is_identity()
            assert compose(inverse(f), f).is_identity()
            assert compose(f, PLMap.identity(CIRCLE)) == f
            assert compose(PLMap.identity(CIRCLE), f) == f

    def test_conjugate_and_commutator(self):
        z = zeta_map()
        assert conjugate(z, PLMap.identity()) == z
        assert commutator(z, z).is_identity()

    def test_power(self):
        z = zeta_map()
        assert power(z, 0).is_identity()
        assert power(z, 3) == compose(compose(z, z), z)
        assert power(z, -2) == inverse(compose(z, z))

    def test_chain_rule_at_fixed_endpoints(self):
        rng = Random(3)
        for _ in range(15):
            f = random_element(rng)
            g = random_element(rng)
            fg = compose(f, g)
            assert fg.one_sided_slope(ZERO, "right") == \
                f.one_sided_slope(ZERO, "right") + g.one_sided_slope(ZERO, "right")
            assert fg.one_sided_slope(ONE, "left") == \
                f.one_sided_slope(ONE, "left") + g.one_sided_slope(ONE, "left")


class TestSlopes:
    def test_zeta_endpoint_slopes(self):
        z = zeta_map()
        assert z.one_sided_slope(ZERO, "right") == 1
        assert z.one_sided_slope(ONE, "left") == 0

    def test_interval_boundary_errors(self):
        z = zeta_map()
        with pytest.raises(ValueError):
            z.one_sided_slope(ZERO, "left")
        with pytest.raises(ValueError):
            z.one_sided_slope(ONE, "right")

    def test_circle_wraps(self):
        z = zeta_map().as_circle()
        assert z.one_sided_slope(CirclePoint(0), "left") == 0
        assert z.one_sided_slope(CirclePoint(0), "right") == 1

    def test_interior_two_sided(self):
        x1 = x1_map()
        assert x1.one_sided_slope(dyadic("1/2"), "left") == 0
        assert x1.one_sided_slope(dyadic("1/2"), "right") == 1


class TestFixedSets:
    def test_identity_fixes_everything(self):
        assert PLMap.identity().fixed_points().everything
        assert PLMap.identity().support().is_empty()

    def test_zeta_fixed_set(self):
        fixed = zeta_map().fixed_points()
        assert fixed.points == (Fraction(0),)
        assert fixed.arcs == ((Fraction(3, 4), Fraction(1)),)
        supp = zeta_map().support()
        assert len(supp) == 1 and supp.arcs[0] == Arc(0, "3/4")

    def test_half_rotation_is_fixed_point_free(self):
        fixed = rotation(dyadic("1/2")).fixed_points()
        assert fixed.is_empty()
        assert rotation(dyadic("1/2")).support().whole

    def test_x1_support(self):
        supp = x1_map().support()
        assert len(supp) == 1 and supp.arcs[0] == Arc("1/2", 0)

    def test_non_dyadic_isolated_fixed_point(self):
        # slope-4 piece crossing the diagonal fixes 7/24
        f = PLMap(INTERVAL, [("0", "0"), ("1/4", "1/8"), ("3/8", "5/8"),
                             ("1/2", "3/4"), ("1", "1")])
        fixed = f.fixed_points()
        assert Fraction(7, 24) in fixed.points

    def test_brute_force_oracle(self):
        rng = Random(9)
        den = 1 << 10
        for _ in range(12):
            f = random_element(rng, circle=True)
            fixed = f.fixed_points()
            for k in range(den):
                p = CirclePoint(Dyadic(k, 10))
                assert (f.eval(p) == p) == fixed.contains(p.pos.as_fraction())

    def test_support_interiors_move(self):
        rng = Random(21)
        for _ in range(10):
            f = random_element(rng, circle=True)
            for a in f.support():
                for p in dyadic_points_in_arc(a, 3):
                    assert f.eval(p) != p


class TestValidator:
    def test_rejects_non_monotone(self):
        with pytest.raises(MapError):
            PLMap(INTERVAL, [("0", "0"), ("1/2", "3/4"), ("3/4", "1/2"), ("1", "1")])

    def test_rejects_slope_three(self):
        with pytest.raises(MapError, match="power of two"):
            PLMap(INTERVAL, [("0", "0"), ("1/4", "3/4"), ("1", "1")])

    def test_rejects_non_dyadic_breakpoints(self):
        with pytest.raises(MapError):
            PLMap.from_json_dict({"carrier": "interval",
                                  "breaks": [["0", "0"], ["1/3", "2/3"], ["1", "1"]]})

    def test_rejects_bad_windows(self):
        with pytest.raises(MapError):
            PLMap(INTERVAL, [("0", "0"), ("1/2", "1/2")])
        with pytest.raises(MapError):
            PLMap(INTERVAL, [("0", "1/4"), ("1", "5/4")])  # does not fix 0
        PLMap(CIRCLE, [("0", "1/4"), ("1", "5/4")])  # fine on the circle

    def test_carrier_mismatch(self):
        with pytest.raises(MapError):
            compose(zeta_map(), zeta_map().as_circle())


class TestThompsonLike:
    def test_translation(self):
        tl = thompson_like_map(Arc(0, "1/2"), Arc("1/2", 0))
        assert len(tl.offs) == 2 and tl.ks == (0,)
        assert tl.eval_point(CirclePoint(dyadic("1/8"))) == CirclePoint(dyadic("5/8"))

    def test_greedy_pairing_example(self):
        tl = thompson_like_map(Arc(0, "3/4"), Arc(0, 0))
        # x on [0,1/2], then 2x - 1/2 on [1/2,3/4]
        assert tl.offs == ((ZERO, ZERO), (dyadic("1/2"), dyadic("1/2")),
                           (dyadic("3/4"), ONE))

    def test_case_c_flattening_accepted(self):
        tau = ArcMap(Arc(0, "7/8"), Arc(0, 0),
                     [("0", "0"), ("3/4", "3/4"), ("7/8", "1")])
        assert tau.ks == (0, 1)

    def test_fragment_validator(self):
        with pytest.raises(MapError):
            ArcMap(Arc(0, "1/2"), Arc(0, "1/2"),
                   [("0", "0"), ("1/4", "3/16"), ("1/2", "1/2")])  # slope 3/4 then ...

    def test_transport_moves_support(self):
        rng = Random(13)
        src, dst = Arc(0, 0), Arc("1/8", "5/8")
        tau = thompson_like_map(src, dst)
        for _ in range(10):
            f = random_element(rng)
            g = transport(f, tau)
            assert g.support().issubset_of([dst])
            # and transport along the inverse brings it back
            assert transport(g, tau.inverse()) == f.as_circle()

    def test_wrapping_arcs(self):
        tl = thompson_like_map(Arc("3/4", "1/4"), Arc("1/2", "7/8"))
        a = Arc("3/4", "1/4")
        for t in ("1/8", "1/2", "7/8"):
            p = a.interp(dyadic(t))
            assert Arc("1/2", "7/8").contains_closure(tl.eval_point(p).pos.as_fraction())


class TestPatch:
    def test_identity_patch(self):
        frags = [ArcMap.identity(Arc(0, "1/2")), ArcMap.identity(Arc("1/2", 0))]
        assert restrict_patch(frags, INTERVAL).is_identity()

    def test_zeta_from_formula_pieces(self):
        frags = [
            ArcMap(Arc(0, "1/4"), Arc(0, "1/2"), [("0", "0"), ("1/4", "1/2")]),
            ArcMap(Arc("1/4", "3/4"), Arc("1/2", "3/4"), [("0", "0"), ("1/2", "1/4")]),
            ArcMap.identity(Arc("3/4", 0)),
        ]
        assert restrict_patch(frags, INTERVAL) == zeta_map()

    def test_mismatched_endpoints_rejected(self):
        frags = [
            ArcMap(Arc(0, "1/4"), Arc(0, "1/2"), [("0", "0"), ("1/4", "1/2")]),
            ArcMap.identity(Arc("1/4", 0)),
        ]
        with pytest.raises(MapError, match="disagree|tile"):
            restrict_patch(frags, INTERVAL)

    def test_gap_rejected(self):
        frags = [ArcMap.identity(Arc(0, "1/2")), ArcMap.identity(Arc("5/8", 0))]
        with pytest.raises(MapError):
            restrict_patch(frags, INTERVAL)

    def test_restrict_then_patch_is_identity_decomposition(self):
        z = zeta_map().as_circle()
        frags = [z.restrict(Arc(0, "1/2")), z.restrict(Arc("1/2", 0))]
        assert restrict_patch(frags, CIRCLE) == z


class TestTransportConjugation:
    def test_support_lands_in_target(self):
        rng = Random(17)
        boxes = [(Arc(0, 0), Arc("1/4", "3/8")), (Arc(0, 0), Arc("3/4", "1/8")),
                 (Arc("1/8", "1/2"), Arc("1/2", "7/8"))]
        for src, dst in boxes:
            tau = thompson_like_map(src, dst)
            for _ in range(5):
                f = random_element(rng)
                g = transport(f, thompson_like_map(Arc(0, 0), src))
                moved = transport(g, tau)
                assert moved.support().issubset_of([dst])


class TestArcs:
    def test_full_minus_point(self):
        a = Arc(0, 0)
        assert a.span() == 1
        assert a.contains(Fraction(1, 3)) and not a.contains(0)

    def test_union_covers(self):
        assert union_covers_circle([Arc(0, 0), Arc("1/2", "1/2")])
        assert not union_covers_circle([Arc(0, "1/2"), Arc("1/2", 0)])
        assert not union_covers_circle([])

    def test_normalize_union(self):
        out = normalize_arc_union([Arc(0, "1/2"), Arc("1/4", "5/8")])
        assert out == [Arc(0, "5/8")]
        assert normalize_arc_union([Arc(0, 0), Arc("1/2", "1/2")]) is WHOLE_CIRCLE
        out = normalize_arc_union([Arc("3/4", "1/8"), Arc("1/16", "1/4")])
        assert out == [Arc("3/4", "1/4")]

    def test_intersection(self):
        pieces = Arc(0, "3/4").intersect(Arc("1/2", "1/4"))
        assert sorted(str(p) for p in pieces) == ["(0, 1/4)", "(1/2, 3/4)"]

    def test_samples_inside(self):
        a = Arc(Fraction(1, 3), Fraction(3, 7))
        pts = dyadic_points_in_arc(a, 50)
        assert len(set(pts)) == 50
        assert all(a.contains(p.pos.as_fraction()) for p in pts)


class TestSerialization:
    def test_json_roundtrip(self):
        rng = Random(23)
        for _ in range(10):
            f = random_element(rng, circle=True)
            assert PLMap.from_json_dict(f.to_json_dict()) == f

    def test_schema_tag(self):
        assert zeta_map().to_json_dict()["schema"] == "plmap/1"
