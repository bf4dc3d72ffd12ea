import random
from fractions import Fraction
from itertools import combinations

import pytest

from lmqlab.concepts import (
    DecisionTree,
    DnfFormula,
    Junta,
    Leaf,
    Node,
    SparsePoly,
    SparsePtf,
    Term,
    maj_poly,
)
from lmqlab.cube import CubePoint, enumerate_cube
from lmqlab.distributions import UniformCube
from lmqlab.harness import parity_dfa, random_dfa, random_tree
from lmqlab.learner import learn_evident_dnf
from lmqlab.oracle import draw_training_set
from lmqlab.reductions import (
    AnchorUniquenessError,
    QReduction,
    ReplicateMap,
    SyntheticAnswerer,
    build_block_checker,
    build_block_simulator,
    build_detector,
    corrupted_dfa_reduction_stuck_simulator,
    corrupted_dnf_reduction_without_detector,
    corrupted_tree_reduction_first_copy,
    dfa_product_or,
    dfa_type_a_reduction,
    dnf_type_a_reduction,
    junta_type_b_reduction,
    majority_label,
    poly_type_b_reduction,
    ptf_type_b_reduction,
    reduce_dnf_type_a,
    reduce_junta_type_b,
    reduce_poly_type_b,
    reduce_tree_type_b,
    simulate_pac_from_local,
    tree_type_b_reduction,
    verify_reduction,
)


def P(text: str) -> CubePoint:
    return CubePoint.from_string(text)


class TestReplicateMap:
    def test_triple_expansion(self):
        assert ReplicateMap(2, 3).apply(P("+-")) == P("+++---")

    def test_identity_factor(self):
        phi = ReplicateMap(3, 1)
        for x in enumerate_cube(3):
            assert phi.apply(x) == x

    def test_distance_scaling(self):
        phi = ReplicateMap(4, 3)
        points = list(enumerate_cube(4))
        for x in points:
            for y in points:
                assert phi.apply(x).hamming(phi.apply(y)) == 3 * x.hamming(y)

    def test_block_coordinates(self):
        phi = ReplicateMap(2, 4)
        assert list(phi.block_coordinates(2)) == [5, 6, 7, 8]


class TestDnfReduction:
    def test_detector_term_count(self):
        assert len(build_detector(2).terms) == 2 * 2 * 3

    def test_detector_silent_on_constant_blocks(self):
        g = build_detector(2)
        phi = ReplicateMap(2, 4)
        for x in enumerate_cube(2):
            assert g.evaluate(phi.apply(x)) == 0

    def test_detector_fires_on_one_internal_flip(self):
        g = build_detector(2)
        phi = ReplicateMap(2, 4)
        z = phi.apply(P("+-")).flip(2)
        assert g.evaluate(z) == 1

    def test_image_agreement(self):
        f = DnfFormula(2, (Term.of(1),))
        fp = reduce_dnf_type_a(f)
        phi = ReplicateMap(2, 4)
        for x in enumerate_cube(2):
            assert fp.evaluate(phi.apply(x)) == f.evaluate(x)

    def test_verifier_passes(self):
        report = verify_reduction(dnf_type_a_reduction(2), DnfFormula(2, (Term.of(1),)))
        assert report.passed
        assert report.image_checked == 4
        assert report.ball_checked > 0

    def test_lifted_terms_read_block_heads(self):
        f = DnfFormula(2, (Term.of(1, -2),))
        fp = reduce_dnf_type_a(f)
        assert fp.terms[0] == Term(frozenset({1}), frozenset({5}))

    def test_custom_replication_factor(self):
        f = DnfFormula(2, (Term.of(1),))
        reduction = dnf_type_a_reduction(2, k=6)
        assert reduction.q == 5
        assert reduction.phi.target_n == 12
        assert verify_reduction(reduction, f).passed


class TestDfaReduction:
    def test_simulator_transition_structure(self):
        a = parity_dfa(2)
        sim = build_block_simulator(a, 2)
        assert sim.num_states == 2 * 4
        assert sim.transitions[(("even", 1), -1)] == ("even", 2)
        assert sim.transitions[(("even", 4), -1)] == ("odd", 1)
        assert sim.transitions[(("even", 4), 1)] == ("even", 1)

    def test_simulator_agrees_with_source_on_images(self):
        a = parity_dfa(2)
        sim = build_block_simulator(a, 2)
        phi = ReplicateMap(2, 4)
        for x in enumerate_cube(2):
            assert sim.evaluate(phi.apply(x)) == a.evaluate(x)

    def test_checker_rejects_images_accepts_flips(self):
        checker = build_block_checker(2)
        phi = ReplicateMap(2, 4)
        for x in enumerate_cube(2):
            z = phi.apply(x)
            assert checker.evaluate(z) == 0
            for j in range(1, 9):
                assert checker.evaluate(z.flip(j)) == 1

    def test_checker_state_budget(self):
        assert build_block_checker(3).num_states <= 2 * 9 + 2

    def test_product_language_is_union(self):
        c = build_block_checker(2)
        s = build_block_simulator(parity_dfa(2), 2)
        both = dfa_product_or(c, s)
        assert both.num_states == c.num_states * s.num_states
        for z in enumerate_cube(8):
            assert both.evaluate(z) == (c.evaluate(z) | s.evaluate(z))

    def test_verifier_passes(self):
        report = verify_reduction(dfa_type_a_reduction(2), parity_dfa(2))
        assert report.passed
        rng = random.Random(5)
        report = verify_reduction(dfa_type_a_reduction(3), random_dfa(3, 3, rng))
        assert report.passed

    def test_custom_replication_factor(self):
        reduction = dfa_type_a_reduction(2, k=5)
        assert reduction.phi.target_n == 10
        assert verify_reduction(reduction, parity_dfa(2)).passed


class TestJuntaReduction:
    def test_single_variable_becomes_block_majority(self):
        h = Junta(1, (1,), (0, 1))
        hp = reduce_junta_type_b(h, 1)
        assert hp.k == 3
        assert hp.relevant == (1, 2, 3)
        maj = maj_poly(3)
        for z in enumerate_cube(3):
            expected = 1 if maj.evaluate(z) == 1 else 0
            assert hp.evaluate(z) == expected

    def test_zero_budget_is_renaming(self):
        h = Junta(3, (2, 3), (0, 1, 1, 1))
        hp = reduce_junta_type_b(h, 0)
        assert hp.relevant == (2, 3)
        assert hp.table == h.table

    def test_flips_below_budget_never_change_labels(self):
        h = Junta(4, (1, 2), (0, 1, 1, 0))
        for q0 in (1, 2):
            phi = ReplicateMap(4, 2 * q0 + 1)
            hp = reduce_junta_type_b(h, q0)
            for x in enumerate_cube(4):
                z = phi.apply(x)
                base = hp.evaluate(z)
                assert base == h.evaluate(x)
                for flips in combinations(range(1, phi.target_n + 1), q0):
                    w = z
                    for j in flips:
                        w = w.flip(j)
                    assert hp.evaluate(w) == base

    def test_depends_on_scaled_variable_count(self):
        h = Junta(5, (1, 4), (1, 0, 0, 1))
        assert reduce_junta_type_b(h, 2).k == 5 * 2

    def test_cap_enforced(self):
        h = Junta(8, tuple(range(1, 7)), tuple([0, 1] * 32))
        with pytest.raises(ValueError):
            reduce_junta_type_b(h, 2)

    def test_verifier_passes(self):
        report = verify_reduction(junta_type_b_reduction(4, 1), Junta(4, (1, 2), (0, 1, 1, 0)))
        assert report.passed


class TestTreeReduction:
    def test_leaf_count_power(self):
        tree = DecisionTree(2, Node(1, Leaf(0), Leaf(1)))
        assert reduce_tree_type_b(tree, 1).leaf_count == 2 ** 3
        assert reduce_tree_type_b(tree, 2).leaf_count == 2 ** 5

    def test_zero_budget_is_renaming(self):
        tree = DecisionTree(2, Node(1, Leaf(0), Node(2, Leaf(1), Leaf(0))))
        reduced = reduce_tree_type_b(tree, 0)
        for x in enumerate_cube(2):
            assert reduced.evaluate(x) == tree.evaluate(x)

    def test_semantics_is_majority_over_copies(self):
        rng = random.Random(44)
        tree = random_tree(3, 4, rng)
        q0 = 1
        reduced = reduce_tree_type_b(tree, q0)
        for z in enumerate_cube(9):
            copies = []
            for c in range(1, 2 * q0 + 2):
                bits = [z.bit((i - 1) * (2 * q0 + 1) + c) for i in range(1, 4)]
                copies.append(tree.evaluate(CubePoint.from_bits(bits)))
            assert reduced.evaluate(z) == majority_label(copies)

    def test_leaf_cap_enforced(self):
        tree = random_tree(4, 16, random.Random(1))
        with pytest.raises(ValueError):
            reduce_tree_type_b(tree, 2, leaf_cap=1000)

    def test_verifier_passes(self):
        tree = random_tree(4, 4, random.Random(2))
        assert verify_reduction(tree_type_b_reduction(4, 1), tree).passed


class TestPolyReduction:
    def test_single_variable_becomes_majority_poly(self):
        p = SparsePoly(1, {frozenset({1}): Fraction(1)})
        grown = reduce_poly_type_b(p, 1)
        assert grown.monomials == maj_poly(3).monomials
        assert grown.degree <= 3
        assert grown.coefficient_count <= 8

    def test_zero_budget_unchanged(self):
        p = SparsePoly(3, {frozenset({1, 3}): Fraction(2, 7), frozenset(): Fraction(1)})
        assert reduce_poly_type_b(p, 0).monomials == p.monomials

    def test_values_preserved_through_map(self):
        p = SparsePoly(
            4, {frozenset({1, 2}): Fraction(1, 3), frozenset({4}): Fraction(-2), frozenset(): Fraction(1, 5)}
        )
        for q0 in (0, 1):
            phi = ReplicateMap(4, 2 * q0 + 1)
            grown = reduce_poly_type_b(p, q0)
            for x in enumerate_cube(4):
                assert grown.evaluate(phi.apply(x)) == p.evaluate(x)

    def test_degree_two_expansion_is_product_of_supports(self):
        # Majority factors on disjoint blocks multiply coefficient counts.
        p = SparsePoly(2, {frozenset({1, 2}): Fraction(1)})
        grown = reduce_poly_type_b(p, 1)
        assert grown.degree == 6
        assert grown.coefficient_count == 16

    def test_ptf_threshold_preserved(self):
        poly = SparsePoly(3, {frozenset({j}): Fraction(1) for j in range(1, 4)})
        f = SparsePtf(poly, Fraction(1, 2))
        grown = ptf_type_b_reduction(3, 1).transform(f)
        assert grown.theta == f.theta
        phi = ReplicateMap(3, 3)
        for x in enumerate_cube(3):
            assert grown.evaluate(phi.apply(x)) == f.evaluate(x)

    def test_verifier_passes_linear_and_ptf(self):
        linear = SparsePoly(3, {frozenset({1}): Fraction(1, 2), frozenset({2}): Fraction(1, 3)})
        assert verify_reduction(poly_type_b_reduction(3, 1), linear).passed
        ptf = SparsePtf(linear, Fraction(0))
        assert verify_reduction(ptf_type_b_reduction(3, 2), ptf).passed


class TestSimulation:
    def _samples(self, concept, n, m, seed):
        dist = UniformCube(n)
        return (
            draw_training_set(dist, concept, m, seed),
            draw_training_set(dist, concept, m, seed + 1),
        )

    def test_kind_a_answers_match_ground_truth(self):
        f = DnfFormula(3, (Term.of(1),))
        reduction = dnf_type_a_reduction(3)
        s1, s2 = self._samples(f, 3, 200, seed=900)
        transformed = reduction.transform(f)
        composed, answerer = simulate_pac_from_local(learn_evident_dnf, reduction, s1, s2)
        assert len(answerer.log) == 27 * len(s1.positives())
        for z, answer in answerer.log:
            assert answer == transformed.evaluate(z)

    def test_kind_a_off_image_answer_is_one(self):
        f = DnfFormula(2, (Term.of(1),))
        reduction = dnf_type_a_reduction(2)
        anchor = ReplicateMap(2, 4).apply(P("+-"))
        answerer = SyntheticAnswerer(reduction, [(anchor, 1)])
        assert answerer.query(anchor.flip(3)) == 1

    def test_kind_a_anchor_answer_is_its_label(self):
        f = DnfFormula(2, (Term.of(1),))
        reduction = dnf_type_a_reduction(2)
        anchor = ReplicateMap(2, 4).apply(P("-+"))
        answerer = SyntheticAnswerer(reduction, [(anchor, 0)])
        assert answerer.query(anchor) == 0

    def test_kind_b_answers_match_ground_truth(self):
        h = Junta(4, (1, 2), (0, 1, 1, 0))
        reduction = junta_type_b_reduction(4, 1)
        s1, s2 = self._samples(h, 4, 200, seed=901)
        transformed = reduction.transform(h)
        composed, answerer = simulate_pac_from_local(learn_evident_dnf, reduction, s1, s2)
        assert len(answerer.log) == 12 * len(s1.positives())
        for z, answer in answerer.log:
            assert answer == transformed.evaluate(z)
        for x in enumerate_cube(4):
            assert composed.evaluate(x) in (0, 1)

    def test_kind_b_unique_anchor_at_distance_zero(self):
        reduction = junta_type_b_reduction(2, 1)
        phi = reduction.phi
        z = phi.apply(P("+-"))
        answerer = SyntheticAnswerer(reduction, [(z, 1), (phi.apply(P("-+")), 0)])
        assert answerer.query(z) == 1
        assert answerer.query(z.flip(1)) == 1

    def test_kind_b_ambiguous_anchors_raise(self):
        # A fake budget-1 reduction without replication lets two anchors
        # crowd the same query point.
        fake = QReduction("fake", "B", ReplicateMap(2, 1), 1, lambda h: h)
        answerer = SyntheticAnswerer(fake, [(P("++"), 1), (P("+-"), 0)])
        with pytest.raises(AnchorUniquenessError):
            answerer.query(P("++"))

    def test_kind_b_no_anchor_raises(self):
        fake = QReduction("fake", "B", ReplicateMap(2, 1), 1, lambda h: h)
        answerer = SyntheticAnswerer(fake, [(P("++"), 1)])
        with pytest.raises(AnchorUniquenessError):
            answerer.query(P("--"))


class TestNegativeControls:
    def test_missing_detector_is_flagged(self):
        report = verify_reduction(
            corrupted_dnf_reduction_without_detector(2), DnfFormula(2, (Term.of(1),))
        )
        assert not report.passed
        assert report.ball_failures > 0
        assert report.counterexamples

    def test_stuck_simulator_is_flagged(self):
        report = verify_reduction(corrupted_dfa_reduction_stuck_simulator(2), parity_dfa(2))
        assert not report.passed
        assert report.counterexamples

    def test_first_copy_labeling_is_flagged(self):
        tree = DecisionTree(2, Node(1, Leaf(0), Leaf(1)))
        report = verify_reduction(corrupted_tree_reduction_first_copy(2, 1), tree)
        assert not report.passed
        assert report.ball_failures > 0
        assert report.counterexamples


class TestVerifierGuards:
    def test_flip_budget_guard(self):
        with pytest.raises(ValueError, match="budget"):
            verify_reduction(dnf_type_a_reduction(6), DnfFormula(6, (Term.of(1),)), enum_budget=1000)

    def test_ball_radius_respects_cap(self):
        report = verify_reduction(dnf_type_a_reduction(3), DnfFormula(3, (Term.of(1),)), cap_q=1)
        assert report.flip_radius == 1
        assert report.passed
