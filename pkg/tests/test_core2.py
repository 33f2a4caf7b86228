"""Forest, folding fixpoint and the labeled class graph."""

import warnings
from random import Random

import pytest

from thompson.core2 import (CoreDeterminismError, CoreGraph, EquivRelation, Forest,
                            NonReducedInputWarning, build_core, coarsen,
                            criterion_graph, initial_relation)
from thompson.groupcalc import x, zeta
from thompson.plmap import compose, conjugate
from thompson.treepair import TreePair, parse_element
from conftest import random_element


def kappa_pairs():
    zc = zeta().as_circle()
    from thompson.groupcalc import torsion_rep
    w = compose(torsion_rep(2), zc)
    kappa1 = conjugate(zc, compose(w, w))
    return [TreePair.from_plmap(zc), TreePair.from_plmap(kappa1)]


class TestInitialRelation:
    def test_kappa_pair_has_23_classes(self):
        _, rel = initial_relation(kappa_pairs())
        assert rel.class_count() == 23

    def test_identity_single_class(self):
        _, rel = initial_relation([TreePair.identity()])
        assert rel.class_count() == 1

    def test_x0_six_classes(self):
        _, rel = initial_relation([TreePair.from_plmap(x(0))])
        assert rel.class_count() == 6

    def test_nonzero_offset_rejected(self):
        with pytest.raises(ValueError):
            initial_relation([parse_element("(0,1) -> (1,0)")])

    def test_non_reduced_warns_and_reduces(self):
        nr = parse_element("(000,001,01,1) -> (00,01,10,11)")
        with warnings.catch_warnings(record=True) as rec:
            warnings.simplefilter("always")
            forest, _ = initial_relation([nr])
            assert any(isinstance(w.message, NonReducedInputWarning) for w in rec)
        assert len(forest.trees[0]) == 3  # reduced x0 has three leaves


class TestCoarsen:
    def test_kappa_pair_folds_to_4(self):
        forest, rel0 = initial_relation(kappa_pairs())
        assert coarsen(forest, rel0).class_count() == 4

    def test_identity_stays_single(self):
        forest, rel0 = initial_relation([TreePair.identity()])
        assert coarsen(forest, rel0).class_count() == 1

    def test_x0_x1_fold_to_4(self):
        forest, rel0 = initial_relation([TreePair.from_plmap(x(0)),
                                         TreePair.from_plmap(x(1))])
        assert coarsen(forest, rel0).class_count() == 4

    def test_order_independence_20_schedules(self):
        for pairs in (kappa_pairs(),
                      [TreePair.from_plmap(x(0)), TreePair.from_plmap(x(1))]):
            forest, rel0 = initial_relation(pairs)
            reference = coarsen(forest, rel0).classes()
            for seed in range(20):
                assert coarsen(forest, rel0, rng=Random(seed)).classes() == reference

    def test_monotone_and_reaches_fixpoint(self):
        # an independent, instrumented fixpoint loop: counts never increase
        # and the result matches coarsen
        forest, rel0 = initial_relation(kappa_pairs())
        rel = rel0.copy()
        counts = [rel.class_count()]
        changed = True
        while changed:
            changed = False
            for (l1, r1, r1r) in forest.carets:
                for (l2, r2, r2r) in forest.carets:
                    if rel.related(r1, r2):
                        changed |= rel.union(l1, l2)
                        changed |= rel.union(r1r, r2r)
                    if rel.related(l1, l2) and rel.related(r1r, r2r):
                        changed |= rel.union(r1, r2)
                    counts.append(rel.class_count())
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        assert rel.classes() == coarsen(forest, rel0).classes()

    def test_input_relation_not_mutated(self):
        forest, rel0 = initial_relation(kappa_pairs())
        before = rel0.classes()
        coarsen(forest, rel0)
        assert rel0.classes() == before


class TestCoreGraph:
    def test_kappa_core_is_criterion(self):
        core = build_core(kappa_pairs())
        assert core.is_generation_graph()
        assert core == criterion_graph()
        assert core.to_dot() == criterion_graph().to_dot()

    def test_identity_core(self):
        core = build_core([TreePair.identity()])
        assert core.size == 1 and not core.succ0 and not core.succ1
        assert not core.is_generation_graph()

    def test_single_generator_cores_fail(self):
        assert not build_core([TreePair.from_plmap(x(0))]).is_generation_graph()
        assert not build_core([TreePair.from_plmap(x(1))]).is_generation_graph()

    def test_determinism_invariant_on_builds(self):
        # every class has all its children in a single class, rechecked
        # directly against the forest
        rng = Random(4)
        for _ in range(10):
            pairs = [TreePair.from_plmap(random_element(rng)) for _ in range(2)]
            forest, rel0 = initial_relation(pairs)
            rel = coarsen(forest, rel0)
            seen = {}
            for left, parent, right in forest.carets:
                for label, child in ((0, left), (1, right)):
                    key = (rel.find(parent), label)
                    assert seen.setdefault(key, rel.find(child)) == rel.find(child)
            build_core(pairs)  # must not raise

    def test_dot_is_stable(self):
        dot = build_core(kappa_pairs()).to_dot()
        expected = (
            "digraph core {\n"
            "  0;\n  1;\n  2;\n  3;\n"
            '  0 -> 1 [label="0"];\n'
            '  0 -> 2 [label="1"];\n'
            '  1 -> 1 [label="0"];\n'
            '  1 -> 3 [label="1"];\n'
            '  2 -> 3 [label="0"];\n'
            '  2 -> 2 [label="1"];\n'
            '  3 -> 3 [label="0"];\n'
            '  3 -> 3 [label="1"];\n'
            "}\n")
        assert dot == expected

    def test_criterion_rejects_truncations(self):
        g = criterion_graph()
        broken = CoreGraph(g.size, dict(g.succ0), dict(g.succ1))
        del broken.succ1[3]
        assert not broken.is_generation_graph()
        assert not CoreGraph(1, {}, {}).is_generation_graph()


class TestForest:
    def test_vertex_and_caret_counts(self):
        forest, _ = initial_relation(kappa_pairs())
        assert len(forest) == 36  # 7 + 7 + 11 + 11
        assert len(forest.carets) == 16  # 3 + 3 + 5 + 5
        assert len(forest.roots) == 4

    def test_union_find_min_representative(self):
        rel = EquivRelation(5)
        rel.union(4, 2)
        rel.union(2, 3)
        assert rel.find(4) == rel.find(3) == 2
