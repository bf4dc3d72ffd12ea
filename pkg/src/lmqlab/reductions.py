"""Locality-neutralizing reductions between concept classes, with verifiers.

A reduction here is an injective coordinate map phi from {-1,+1}^n into a
larger cube together with a concept transform h -> h' such that
h = h' o phi. Two kinds are distinguished by how h' behaves on points
near the image of phi:

* kind "A": every point within distance q of the image, other than image
  points themselves, is labeled 1;
* kind "B": every point within distance q of the image has a unique
  nearest source point, and carries that point's label.

Either way, answers to q-local membership queries around mapped training
data become predictable, which is what ``simulate_pac_from_local``
exploits to run a query-using learner without any oracle access.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .concepts import (
    Concept,
    DecisionTree,
    Dfa,
    DnfFormula,
    Junta,
    JUNTA_CAP,
    Leaf,
    Node,
    SparsePoly,
    SparsePtf,
    Term,
    TreeNode,
    maj_poly,
)
from .cube import CubePoint, DimensionMismatch, masks_at_distance
from .distributions import LabeledSample
from .oracle import OracleStats

TREE_LEAF_CAP = 32768
POLY_COEFF_CAP = 1 << 16
FLIP_ENUM_BUDGET = 5_000_000


# ---------------------------------------------------------------------------
# Coordinate maps


@dataclass(frozen=True)
class ReplicateMap:
    """Each source coordinate expanded into k adjacent copies.

    Source coordinate i lands on target coordinates (i-1)*k+1 .. i*k, so
    Hamming distances scale exactly by k.
    """

    source_n: int
    k: int
    _expand: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.source_n < 1 or self.k < 1:
            raise ValueError(f"need positive dimension and factor, got n={self.source_n}, k={self.k}")
        n, k, target = self.source_n, self.k, self.source_n * self.k
        block = (1 << k) - 1
        expand = tuple(block << (target - i * k) for i in range(1, n + 1))
        object.__setattr__(self, "_expand", expand)

    @property
    def target_n(self) -> int:
        return self.source_n * self.k

    def apply(self, x: CubePoint) -> CubePoint:
        if x.n != self.source_n:
            raise DimensionMismatch(f"map expects dimension {self.source_n}, point has {x.n}")
        mask = 0
        for i in range(1, self.source_n + 1):
            if (x.mask >> (self.source_n - i)) & 1:
                mask |= self._expand[i - 1]
        return CubePoint(self.target_n, mask)

    def block_coordinates(self, i: int) -> range:
        """Target coordinates carrying source coordinate i."""
        return range((i - 1) * self.k + 1, i * self.k + 1)


def replicate_map(n: int, k: int) -> ReplicateMap:
    return ReplicateMap(n, k)


@dataclass(frozen=True)
class ComposedConcept:
    """h' composed with a coordinate map: evaluates h'(phi(x))."""

    inner: Concept
    phi: ReplicateMap

    @property
    def n(self) -> int:
        return self.phi.source_n

    def evaluate(self, x: CubePoint) -> int:
        return self.inner.evaluate(self.phi.apply(x))


@dataclass(frozen=True)
class QReduction:
    """A coordinate map with its locality budget, kind, and concept transform."""

    name: str
    kind: str
    phi: ReplicateMap
    q: int
    transform: Callable[[Concept], Concept]

    def __post_init__(self) -> None:
        if self.kind not in ("A", "B"):
            raise ValueError(f"kind must be 'A' or 'B', got {self.kind!r}")
        if self.q < 0:
            raise ValueError(f"locality budget must be non-negative, got {self.q}")


# ---------------------------------------------------------------------------
# DNF construction (kind A, replication factor n^2)


def build_detector(n: int, k: int | None = None) -> DnfFormula:
    """DNF over k*n variables firing iff some replication block is non-constant.

    For each source coordinate block, adjacent copy pairs are compared in
    both polarities: 2 * n * (k - 1) two-literal terms. The default
    replication factor k = n^2 puts the formula over n^3 variables.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    k = n * n if k is None else k
    terms = []
    for i in range(1, n + 1):
        base = (i - 1) * k
        for j in range(1, k):
            a, b = base + j, base + j + 1
            terms.append(Term(frozenset({a}), frozenset({b})))
            terms.append(Term(frozenset({b}), frozenset({a})))
    return DnfFormula(n * k, tuple(terms))


def _lift_terms_to_block_heads(formula: DnfFormula, k: int) -> tuple[Term, ...]:
    """Re-index each term onto the first coordinate of its variable's block."""
    lifted = []
    for t in formula.terms:
        pos = frozenset((i - 1) * k + 1 for i in t.positives)
        neg = frozenset((i - 1) * k + 1 for i in t.negatives)
        lifted.append(Term(pos, neg))
    return tuple(lifted)


def reduce_dnf_type_a(formula: DnfFormula, k: int | None = None) -> DnfFormula:
    """Transform a DNF over n variables into one over k*n variables.

    Original terms read the first coordinate of each block; the detector
    terms force label 1 on any point with a non-constant block, which
    covers the whole near-image region. Defaults to k = n^2.
    """
    n = formula.n
    k = n * n if k is None else k
    lifted = _lift_terms_to_block_heads(formula, k)
    return DnfFormula(n * k, lifted + build_detector(n, k).terms)


def dnf_type_a_reduction(n: int, k: int | None = None) -> QReduction:
    k = n * n if k is None else k
    return QReduction("dnf", "A", ReplicateMap(n, k), k - 1, lambda f: reduce_dnf_type_a(f, k))


# ---------------------------------------------------------------------------
# DFA construction (kind A)


def build_block_checker(n: int, k: int | None = None) -> Dfa:
    """Automaton accepting exactly the length-k*n strings with a non-constant block.

    Tracks the position inside the current block and the block's first bit;
    one absorbing accept state flags the first mismatch. At most 2k + 2
    states, so 2*n^2 + 2 at the default replication factor.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    k = n * n if k is None else k
    init, acc = "init", "acc"
    states: list = [init, acc]
    transitions: dict = {(acc, -1): acc, (acc, 1): acc}
    for first in (-1, 1):
        for pos in range(1, k + 1):
            states.append((pos, first))
    for first in (-1, 1):
        for pos in range(1, k + 1):
            for b in (-1, 1):
                if pos == k:
                    transitions[((pos, first), b)] = (1, b)
                elif b == first:
                    transitions[((pos, first), b)] = (pos + 1, first)
                else:
                    transitions[((pos, first), b)] = acc
    for b in (-1, 1):
        transitions[(init, b)] = (1, b)
    return Dfa(tuple(states), init, frozenset({acc}), transitions, n * k)


def build_block_simulator(automaton: Dfa, n: int, k: int | None = None) -> Dfa:
    """Automaton over length-k*n strings running the source machine once per block.

    States are (source state, position in block); the source transition is
    applied on each block's final symbol, so on replicated inputs the run
    agrees with the source automaton. Exactly |states| * k states, with
    k = n^2 by default.
    """
    if automaton.length != n:
        raise ValueError(f"source automaton reads length {automaton.length}, expected {n}")
    k = n * n if k is None else k
    states = tuple((s, i) for s in automaton.states for i in range(1, k + 1))
    transitions: dict = {}
    for s in automaton.states:
        for i in range(1, k + 1):
            for b in (-1, 1):
                if i < k:
                    transitions[((s, i), b)] = (s, i + 1)
                else:
                    transitions[((s, i), b)] = (automaton.transitions[(s, b)], 1)
    accepting = frozenset((s, i) for s in automaton.accepting for i in range(1, k + 1))
    return Dfa(states, (automaton.start, 1), accepting, transitions, n * k)


def dfa_product_or(a1: Dfa, a2: Dfa) -> Dfa:
    """Pair construction accepting iff either machine accepts."""
    if a1.length != a2.length:
        raise DimensionMismatch(f"input lengths differ: {a1.length} vs {a2.length}")
    states = tuple((s1, s2) for s1 in a1.states for s2 in a2.states)
    transitions = {
        ((s1, s2), b): (a1.transitions[(s1, b)], a2.transitions[(s2, b)])
        for s1 in a1.states
        for s2 in a2.states
        for b in (-1, 1)
    }
    accepting = frozenset(
        (s1, s2) for s1 in a1.states for s2 in a2.states
        if s1 in a1.accepting or s2 in a2.accepting
    )
    return Dfa(states, (a1.start, a2.start), accepting, transitions, a1.length)


def reduce_dfa_type_a(automaton: Dfa, k: int | None = None) -> Dfa:
    n = automaton.length
    k = n * n if k is None else k
    return dfa_product_or(build_block_checker(n, k), build_block_simulator(automaton, n, k))


def dfa_type_a_reduction(n: int, k: int | None = None) -> QReduction:
    k = n * n if k is None else k
    return QReduction("dfa", "A", ReplicateMap(n, k), k - 1, lambda a: reduce_dfa_type_a(a, k))


# ---------------------------------------------------------------------------
# Kind-B constructions: majority over 2*q0+1 copies absorbs q0 flips


def majority_label(labels: Sequence[int]) -> int:
    """Majority of an odd-length 0/1 sequence."""
    if len(labels) % 2 == 0:
        raise ValueError(f"need an odd count for a strict majority, got {len(labels)}")
    return 1 if sum(labels) * 2 > len(labels) else 0


def reduce_junta_type_b(junta: Junta, q0: int, cap: int = JUNTA_CAP) -> Junta:
    """Junta over (2*q0+1)*n variables applying the source to block majorities."""
    if q0 < 0:
        raise ValueError(f"q0 must be non-negative, got {q0}")
    r = 2 * q0 + 1
    k = junta.k
    k_new = r * k
    if k_new > cap:
        raise ValueError(f"reduced junta would depend on {k_new} variables, cap is {cap}")
    relevant = tuple((i - 1) * r + c for i in junta.relevant for c in range(1, r + 1))
    half = r // 2
    table = []
    for m in range(1 << k_new):
        idx = 0
        for t in range(k):
            chunk = (m >> (k_new - (t + 1) * r)) & ((1 << r) - 1)
            idx = (idx << 1) | (chunk.bit_count() > half)
        table.append(junta.table[idx])
    return Junta(junta.n * r, relevant, tuple(table))


def junta_type_b_reduction(n: int, q0: int) -> QReduction:
    r = 2 * q0 + 1
    return QReduction("junta", "B", ReplicateMap(n, r), q0, lambda h: reduce_junta_type_b(h, q0))


def _stack_tree(tree: DecisionTree, q0: int, label_rule: Callable[[tuple[int, ...]], int]) -> DecisionTree:
    """Chain 2*q0+1 renamed replicas of the tree; leaves combine path outcomes."""
    r = 2 * q0 + 1

    def rename(var: int, copy: int) -> int:
        return (var - 1) * r + copy

    def build(node: TreeNode, copy: int, outcomes: tuple[int, ...]) -> TreeNode:
        if isinstance(node, Leaf):
            collected = outcomes + (node.label,)
            if copy == r:
                return Leaf(label_rule(collected))
            return build(tree.root, copy + 1, collected)
        return Node(
            rename(node.var, copy),
            build(node.low, copy, outcomes),
            build(node.high, copy, outcomes),
        )

    return DecisionTree(tree.n * r, build(tree.root, 1, ()))


def reduce_tree_type_b(tree: DecisionTree, q0: int, leaf_cap: int = TREE_LEAF_CAP) -> DecisionTree:
    """Decision tree over (2*q0+1)*n variables taking the majority over copies.

    Leaf count is exactly leafcount(tree) ** (2*q0+1).
    """
    if q0 < 0:
        raise ValueError(f"q0 must be non-negative, got {q0}")
    r = 2 * q0 + 1
    if tree.leaf_count ** r > leaf_cap:
        raise ValueError(
            f"stacked tree would have {tree.leaf_count ** r} leaves, cap is {leaf_cap}"
        )
    return _stack_tree(tree, q0, majority_label)


def tree_type_b_reduction(n: int, q0: int) -> QReduction:
    r = 2 * q0 + 1
    return QReduction("tree", "B", ReplicateMap(n, r), q0, lambda h: reduce_tree_type_b(h, q0))


def reduce_poly_type_b(poly: SparsePoly, q0: int, coeff_cap: int = POLY_COEFF_CAP) -> SparsePoly:
    """Substitute the block majority polynomial for every variable and expand.

    Blocks are disjoint, so the expansion stays multilinear; the degree
    grows by a factor of at most 2*q0+1.
    """
    if q0 < 0:
        raise ValueError(f"q0 must be non-negative, got {q0}")
    r = 2 * q0 + 1
    maj = maj_poly(r)
    result: dict[frozenset[int], Fraction] = {}
    for vars_, coeff in poly.monomials.items():
        partial: dict[frozenset[int], Fraction] = {frozenset(): coeff}
        for i in sorted(vars_):
            base = (i - 1) * r
            shifted = [(frozenset(base + c for c in u), cu) for u, cu in maj.monomials.items()]
            grown: dict[frozenset[int], Fraction] = {}
            for acc_vars, acc_coeff in partial.items():
                for u_vars, u_coeff in shifted:
                    grown[acc_vars | u_vars] = acc_coeff * u_coeff
            partial = grown
            if len(partial) * max(1, len(result)) > coeff_cap * 4:
                raise ValueError(f"expansion exceeds coefficient cap {coeff_cap}")
        for new_vars, new_coeff in partial.items():
            result[new_vars] = result.get(new_vars, Fraction(0)) + new_coeff
        if len(result) > coeff_cap:
            raise ValueError(f"expansion exceeds coefficient cap {coeff_cap}")
    return SparsePoly(poly.n * r, result)


def reduce_ptf_type_b(ptf: SparsePtf, q0: int, coeff_cap: int = POLY_COEFF_CAP) -> SparsePtf:
    return SparsePtf(reduce_poly_type_b(ptf.poly, q0, coeff_cap), ptf.theta)


def poly_type_b_reduction(n: int, q0: int) -> QReduction:
    r = 2 * q0 + 1
    return QReduction("poly", "B", ReplicateMap(n, r), q0, lambda h: reduce_poly_type_b(h, q0))


def ptf_type_b_reduction(n: int, q0: int) -> QReduction:
    r = 2 * q0 + 1
    return QReduction("ptf", "B", ReplicateMap(n, r), q0, lambda h: reduce_ptf_type_b(h, q0))


# ---------------------------------------------------------------------------
# Query synthesis: running a local-query learner without an oracle


class AnchorUniquenessError(RuntimeError):
    """A kind-B query had zero or several distinct anchors within range."""


class SyntheticAnswerer:
    """Answers local queries from mapped training data alone.

    Kind A: a query matching a mapped training point returns its label;
    anything else nearby is labeled 1 by construction. Kind B: the unique
    mapped training point within distance q supplies the label.
    """

    def __init__(self, reduction: QReduction, mapped: Sequence[tuple[CubePoint, int]]):
        self.kind = reduction.kind
        self.q = reduction.q
        self.n = reduction.phi.target_n
        self._labels: dict[int, int] = {}
        for z, y in mapped:
            self._labels[z.mask] = y
        self._log: list[tuple[CubePoint, int]] = []

    @property
    def log(self) -> tuple[tuple[CubePoint, int], ...]:
        return tuple(self._log)

    def stats(self) -> OracleStats:
        """Query count only; synthesized answers involve no distance bookkeeping."""
        return OracleStats(len(self._log), 0, {})

    def _ball_cost(self) -> int:
        total, c = 0, 1
        for r in range(self.q + 1):
            total += c
            c = c * (self.n - r) // (r + 1)
        return total

    def _matches_within_q(self, z: CubePoint) -> set[int]:
        if self._ball_cost() <= max(256, 4 * len(self._labels)):
            found = set()
            for r in range(self.q + 1):
                for m in masks_at_distance(z.mask, self.n, r):
                    if m in self._labels:
                        found.add(m)
            return found
        return {m for m in self._labels if (m ^ z.mask).bit_count() <= self.q}

    def query(self, z: CubePoint) -> int:
        if z.n != self.n:
            raise DimensionMismatch(f"query dimension {z.n} differs from {self.n}")
        if self.kind == "A":
            answer = self._labels.get(z.mask, 1)
        else:
            matches = self._matches_within_q(z)
            if len(matches) != 1:
                raise AnchorUniquenessError(
                    f"{len(matches)} anchors within distance {self.q} of {z.to_string()}"
                )
            answer = self._labels[matches.pop()]
        self._log.append((z, answer))
        return answer


def simulate_pac_from_local(
    learner: Callable[[LabeledSample, LabeledSample, object], Concept],
    reduction: QReduction,
    s1: LabeledSample,
    s2: LabeledSample,
) -> tuple[ComposedConcept, SyntheticAnswerer]:
    """Run a local-query learner on mapped samples, synthesizing all answers.

    Returns the learned hypothesis composed back with the map, plus the
    answerer whose log allows auditing every synthesized answer.
    """
    phi = reduction.phi

    def mapped(s: LabeledSample) -> LabeledSample:
        return LabeledSample(tuple((phi.apply(x), y) for x, y in s))

    m1, m2 = mapped(s1), mapped(s2)
    answerer = SyntheticAnswerer(reduction, m1.pairs + m2.pairs)
    hypothesis = learner(m1, m2, answerer)
    return ComposedConcept(hypothesis, phi), answerer


# ---------------------------------------------------------------------------
# Brute-force verification


@dataclass
class ReductionReport:
    name: str
    kind: str
    source_n: int
    target_n: int
    q: int
    flip_radius: int
    image_checked: int = 0
    ball_checked: int = 0
    image_failures: int = 0
    ball_failures: int = 0
    anchor_failures: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.image_failures == 0 and self.ball_failures == 0 and self.anchor_failures == 0

    def _note(self, kind: str, z: CubePoint, expected, got) -> None:
        if len(self.counterexamples) < 10:
            self.counterexamples.append(
                {"check": kind, "point": z.to_string(), "expected": str(expected), "got": str(got)}
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "source_n": self.source_n,
            "target_n": self.target_n,
            "q": self.q,
            "flip_radius": self.flip_radius,
            "image_checked": self.image_checked,
            "ball_checked": self.ball_checked,
            "image_failures": self.image_failures,
            "ball_failures": self.ball_failures,
            "anchor_failures": self.anchor_failures,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
        }


def verify_reduction(
    reduction: QReduction,
    concept: Concept,
    cap_q: int = 3,
    enum_budget: int = FLIP_ENUM_BUDGET,
) -> ReductionReport:
    """Exhaustively check a reduction against one source concept.

    Confirms value agreement on the whole image, then walks every point
    obtained by flipping at most min(q, cap_q) coordinates of an image
    point: kind A requires label 1 off the image, kind B requires a unique
    in-range anchor carrying the point's value. Flip enumeration is guarded
    by a binomial budget since the target cube itself is astronomically
    large.
    """
    phi = reduction.phi
    n, n_target = phi.source_n, phi.target_n
    transformed = reduction.transform(concept)
    radius = min(reduction.q, cap_q)

    per_point, c = 0, 1
    for r in range(radius + 1):
        per_point += c
        c = c * (n_target - r) // (r + 1)
    if per_point * (1 << n) > enum_budget:
        raise ValueError(
            f"flip enumeration needs {per_point * (1 << n)} checks, budget is {enum_budget}"
        )

    report = ReductionReport(reduction.name, reduction.kind, n, n_target, reduction.q, radius)

    source_points = [CubePoint(n, m) for m in range(1 << n)]
    values = {x.mask: concept.evaluate(x) for x in source_points}
    images = {phi.apply(x).mask: x for x in source_points}

    for x in source_points:
        z = phi.apply(x)
        got = transformed.evaluate(z)
        report.image_checked += 1
        if got != values[x.mask]:
            report.image_failures += 1
            report._note("image", z, values[x.mask], got)

    seen: set[int] = set()
    for x in source_points:
        zx = phi.apply(x)
        for r in range(1, radius + 1):
            for m in masks_at_distance(zx.mask, n_target, r):
                if m in images or m in seen:
                    continue
                seen.add(m)
                z = CubePoint(n_target, m)
                report.ball_checked += 1
                if reduction.kind == "A":
                    got = transformed.evaluate(z)
                    if got != 1:
                        report.ball_failures += 1
                        report._note("ball", z, 1, got)
                else:
                    anchors = [
                        src for img, src in images.items()
                        if (img ^ m).bit_count() <= reduction.q
                    ]
                    if len(anchors) != 1:
                        report.anchor_failures += 1
                        report._note("anchor", z, "unique anchor", f"{len(anchors)} anchors")
                        continue
                    expected = values[anchors[0].mask]
                    got = transformed.evaluate(z)
                    if got != expected:
                        report.ball_failures += 1
                        report._note("ball", z, expected, got)
    return report


# ---------------------------------------------------------------------------
# Deliberately broken constructions, used as verifier negative controls


def corrupted_dnf_reduction_without_detector(n: int) -> QReduction:
    """DNF reduction missing the non-constant-block detector terms."""

    def transform(formula: DnfFormula) -> DnfFormula:
        return DnfFormula(n ** 3, _lift_terms_to_block_heads(formula, n * n))

    return QReduction("dnf-no-detector", "A", ReplicateMap(n, n * n), n * n - 1, transform)


def corrupted_dfa_reduction_stuck_simulator(n: int) -> QReduction:
    """DFA reduction whose simulator wraps blocks without ever stepping."""

    def broken_simulator(automaton: Dfa) -> Dfa:
        good = build_block_simulator(automaton, n)
        k = n * n
        transitions = dict(good.transitions)
        for s in automaton.states:
            for b in (-1, 1):
                transitions[((s, k), b)] = (s, 1)
        return Dfa(good.states, good.start, good.accepting, transitions, good.length)

    def transform(automaton: Dfa) -> Dfa:
        return dfa_product_or(build_block_checker(n), broken_simulator(automaton))

    return QReduction("dfa-stuck-simulator", "A", ReplicateMap(n, n * n), n * n - 1, transform)


def corrupted_tree_reduction_first_copy(n: int, q0: int) -> QReduction:
    """Tree reduction labeling leaves by the first copy instead of the majority."""
    r = 2 * q0 + 1

    def transform(tree: DecisionTree) -> DecisionTree:
        return _stack_tree(tree, q0, lambda outcomes: outcomes[0])

    return QReduction("tree-first-copy", "B", ReplicateMap(n, r), q0, transform)
