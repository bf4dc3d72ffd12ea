"""Concept classes over the cube and their evaluators.

All concepts expose ``n`` (input dimension) and ``evaluate(x) -> {0,1}``;
sparse polynomials additionally evaluate to exact rationals. Variable
indices are 1-based everywhere, matching the textual formats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Protocol, Union

from .cube import CubePoint, DimensionMismatch

JUNTA_CAP = 16
MAJ_POLY_CAP = 15


class Concept(Protocol):
    """Anything evaluable to a {0,1} label on cube points of dimension n."""

    n: int

    def evaluate(self, x: CubePoint) -> int: ...


# ---------------------------------------------------------------------------
# DNF formulas


@dataclass(frozen=True, slots=True)
class Term:
    """A conjunction of literals: positive and negated variable index sets."""

    positives: frozenset[int]
    negatives: frozenset[int]

    def __post_init__(self) -> None:
        if self.positives & self.negatives:
            raise ValueError(
                f"term contains a variable and its negation: {sorted(self.positives & self.negatives)}"
            )
        for j in self.positives | self.negatives:
            if not isinstance(j, int) or j < 1:
                raise ValueError(f"variable indices must be positive integers, got {j!r}")

    @classmethod
    def of(cls, *literals: int) -> "Term":
        """Build a term from signed indices, e.g. Term.of(1, -2) = x1 AND NOT x2."""
        pos = frozenset(v for v in literals if v > 0)
        neg = frozenset(-v for v in literals if v < 0)
        if 0 in literals:
            raise ValueError("0 is not a valid signed variable index")
        return cls(pos, neg)

    @property
    def width(self) -> int:
        return len(self.positives) + len(self.negatives)

    @property
    def variables(self) -> frozenset[int]:
        return self.positives | self.negatives

    def masks(self, n: int) -> tuple[int, int]:
        """(must-be-+1 mask, must-be--1 mask) for dimension n."""
        pos = 0
        for j in self.positives:
            pos |= 1 << (n - j)
        neg = 0
        for j in self.negatives:
            neg |= 1 << (n - j)
        return pos, neg

    def satisfied_by(self, x: CubePoint) -> bool:
        pos, neg = self.masks(x.n)
        return (x.mask & pos) == pos and (x.mask & neg) == 0

    def signed(self) -> tuple[int, ...]:
        return tuple(sorted(self.positives)) + tuple(-j for j in sorted(self.negatives))


@dataclass(frozen=True)
class DnfFormula:
    """A disjunction of terms over n variables.

    Conventions: the empty formula evaluates to 0 everywhere; a term with
    no literals is satisfied by every point.
    """

    n: int
    terms: tuple[Term, ...]
    _masks: tuple[tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        for t in self.terms:
            for j in t.variables:
                if j > self.n:
                    raise ValueError(f"variable {j} exceeds dimension {self.n}")
        object.__setattr__(self, "_masks", tuple(t.masks(self.n) for t in self.terms))

    def _check_dim(self, x: CubePoint) -> None:
        if x.n != self.n:
            raise DimensionMismatch(f"formula over {self.n} variables, point has {x.n}")

    def evaluate(self, x: CubePoint) -> int:
        self._check_dim(x)
        m = x.mask
        for pos, neg in self._masks:
            if (m & pos) == pos and (m & neg) == 0:
                return 1
        return 0

    def satisfied_indices(self, x: CubePoint) -> tuple[int, ...]:
        """0-based indices of all terms satisfied by x."""
        self._check_dim(x)
        m = x.mask
        return tuple(
            i for i, (pos, neg) in enumerate(self._masks) if (m & pos) == pos and (m & neg) == 0
        )


def term_satisfied(term: Term, x: CubePoint) -> bool:
    """True iff x meets every literal of the term."""
    for j in term.variables:
        if j > x.n:
            raise DimensionMismatch(f"term variable {j} exceeds point dimension {x.n}")
    return term.satisfied_by(x)


def eval_dnf(formula: DnfFormula, x: CubePoint) -> int:
    return formula.evaluate(x)


# ---------------------------------------------------------------------------
# Decision trees


@dataclass(frozen=True, slots=True)
class Leaf:
    label: int

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise ValueError(f"leaf label must be 0 or 1, got {self.label!r}")


@dataclass(frozen=True, slots=True)
class Node:
    """Internal node testing one variable: ``low`` when -1, ``high`` when +1."""

    var: int
    low: Union["Node", Leaf]
    high: Union["Node", Leaf]


TreeNode = Union[Node, Leaf]


@dataclass(frozen=True)
class DecisionTree:
    n: int
    root: TreeNode

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        for var in self._vars(self.root):
            if not 1 <= var <= self.n:
                raise ValueError(f"node variable {var} out of range 1..{self.n}")

    @staticmethod
    def _vars(node: TreeNode) -> Iterator[int]:
        if isinstance(node, Node):
            yield node.var
            yield from DecisionTree._vars(node.low)
            yield from DecisionTree._vars(node.high)

    @property
    def leaf_count(self) -> int:
        def count(node: TreeNode) -> int:
            if isinstance(node, Leaf):
                return 1
            return count(node.low) + count(node.high)

        return count(self.root)

    def evaluate(self, x: CubePoint) -> int:
        if x.n != self.n:
            raise DimensionMismatch(f"tree over {self.n} variables, point has {x.n}")
        node = self.root
        while isinstance(node, Node):
            node = node.high if x.bit(node.var) == 1 else node.low
        return node.label


def eval_tree(tree: DecisionTree, x: CubePoint) -> int:
    return tree.evaluate(x)


def dnf_of_tree(tree: DecisionTree) -> DnfFormula:
    """Expand a decision tree into one term per reachable 1-leaf.

    Each term conjoins the literals along the root-to-leaf path. Paths that
    test a variable in both directions are unreachable and dropped; repeated
    same-direction tests collapse. On every positive point exactly one term
    of the result is satisfied, and the term count never exceeds the leaf
    count.
    """
    terms: list[Term] = []

    def walk(node: TreeNode, pos: frozenset[int], neg: frozenset[int]) -> None:
        if isinstance(node, Leaf):
            if node.label == 1:
                terms.append(Term(pos, neg))
            return
        j = node.var
        if j not in pos:
            walk(node.low, pos, neg | {j})
        if j not in neg:
            walk(node.high, pos | {j}, neg)

    walk(tree.root, frozenset(), frozenset())
    return DnfFormula(tree.n, tuple(terms))


# ---------------------------------------------------------------------------
# Finite automata over fixed-length ±1 strings


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton reading the bits of a point in coordinate order.

    ``length`` is the exact number of symbols consumed; acceptance is
    inspected only after the full input.
    """

    states: tuple
    start: object
    accepting: frozenset
    transitions: Mapping[tuple, object]
    length: int

    def __post_init__(self) -> None:
        state_set = set(self.states)
        if self.start not in state_set:
            raise ValueError(f"start state {self.start!r} not in state set")
        if not set(self.accepting) <= state_set:
            raise ValueError("accepting states must be a subset of the state set")
        for s in self.states:
            for b in (-1, 1):
                if (s, b) not in self.transitions:
                    raise ValueError(f"transition missing for ({s!r}, {b})")
                if self.transitions[(s, b)] not in state_set:
                    raise ValueError(f"transition from ({s!r}, {b}) leaves the state set")
        if self.length < 1:
            raise ValueError(f"input length must be positive, got {self.length}")

    @property
    def n(self) -> int:
        return self.length

    @property
    def num_states(self) -> int:
        return len(self.states)

    def evaluate(self, x: CubePoint) -> int:
        if x.n != self.length:
            raise DimensionMismatch(f"automaton expects length {self.length}, point has {x.n}")
        state = self.start
        trans = self.transitions
        mask, n = x.mask, x.n
        for j in range(1, n + 1):
            b = 1 if (mask >> (n - j)) & 1 else -1
            state = trans[(state, b)]
        return 1 if state in self.accepting else 0


def eval_dfa(dfa: Dfa, x: CubePoint) -> int:
    return dfa.evaluate(x)


# ---------------------------------------------------------------------------
# Juntas


@dataclass(frozen=True)
class Junta:
    """A function depending only on the listed variables, given as a table.

    ``table`` has 2^K entries indexed by the relevant variables in order,
    first variable most significant, bit 1 for +1.
    """

    n: int
    relevant: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.relevant)
        if k > JUNTA_CAP:
            raise ValueError(f"junta depends on {k} variables, cap is {JUNTA_CAP}")
        if len(set(self.relevant)) != k:
            raise ValueError("relevant variables must be distinct")
        for j in self.relevant:
            if not 1 <= j <= self.n:
                raise ValueError(f"relevant variable {j} out of range 1..{self.n}")
        if len(self.table) != 1 << k:
            raise ValueError(f"table must have {1 << k} entries, got {len(self.table)}")
        if any(v not in (0, 1) for v in self.table):
            raise ValueError("table entries must be 0 or 1")

    @property
    def k(self) -> int:
        return len(self.relevant)

    def evaluate(self, x: CubePoint) -> int:
        if x.n != self.n:
            raise DimensionMismatch(f"junta over {self.n} variables, point has {x.n}")
        idx = 0
        for j in self.relevant:
            idx = (idx << 1) | (x.bit(j) == 1)
        return self.table[idx]


def eval_junta(junta: Junta, x: CubePoint) -> int:
    return junta.evaluate(x)


# ---------------------------------------------------------------------------
# Sparse multilinear polynomials and threshold functions


@dataclass(frozen=True)
class SparsePoly:
    """Multilinear polynomial with exact rational coefficients.

    ``monomials`` maps a frozenset of variable indices to its coefficient;
    zero coefficients are dropped at construction.
    """

    n: int
    monomials: Mapping[frozenset[int], Fraction]

    def __post_init__(self) -> None:
        cleaned: dict[frozenset[int], Fraction] = {}
        for vars_, coeff in self.monomials.items():
            vs = frozenset(vars_)
            for j in vs:
                if not 1 <= j <= self.n:
                    raise ValueError(f"monomial variable {j} out of range 1..{self.n}")
            c = Fraction(coeff)
            if c != 0:
                cleaned[vs] = c
        object.__setattr__(self, "monomials", cleaned)
        # Integer form over a common denominator: evaluation needs one
        # popcount per monomial and a single Fraction at the end.
        denom = 1
        for c in cleaned.values():
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        scaled = tuple(
            (sum(1 << (self.n - j) for j in vs), int(c * denom)) for vs, c in cleaned.items()
        )
        object.__setattr__(self, "_scaled", scaled)
        object.__setattr__(self, "_denom", denom)

    @property
    def degree(self) -> int:
        return max((len(s) for s in self.monomials), default=0)

    @property
    def coefficient_count(self) -> int:
        return len(self.monomials)

    def evaluate(self, x: CubePoint) -> Fraction:
        if x.n != self.n:
            raise DimensionMismatch(f"polynomial over {self.n} variables, point has {x.n}")
        minus = ~x.mask
        total = 0
        for mono_mask, num in self._scaled:
            total += -num if (mono_mask & minus).bit_count() & 1 else num
        return Fraction(total, self._denom)


def eval_poly(poly: SparsePoly, x: CubePoint) -> Fraction:
    return poly.evaluate(x)


@dataclass(frozen=True)
class PolyConcept:
    """Label adapter for a ±1-valued polynomial: +1 -> 1, -1 -> 0."""

    poly: SparsePoly

    @property
    def n(self) -> int:
        return self.poly.n

    def evaluate(self, x: CubePoint) -> int:
        v = self.poly.evaluate(x)
        if v == 1:
            return 1
        if v == -1:
            return 0
        raise ValueError(f"polynomial value {v} at {x.to_string()} is not in {{-1,+1}}")


@dataclass(frozen=True)
class SparsePtf:
    """Polynomial threshold function: label 1 iff the polynomial is >= theta."""

    poly: SparsePoly
    theta: Fraction

    @property
    def n(self) -> int:
        return self.poly.n

    def evaluate(self, x: CubePoint) -> int:
        return 1 if self.poly.evaluate(x) >= self.theta else 0


def eval_ptf(ptf: SparsePtf, x: CubePoint) -> int:
    return ptf.evaluate(x)


def maj_poly(k: int) -> SparsePoly:
    """Exact multilinear expansion of majority on k variables, outputs in ±1.

    Computed by a Walsh transform over all 2^k points; k must be odd so no
    tie-breaking is needed. Degree <= k and at most 2^k nonzero coefficients.
    """
    if k % 2 == 0:
        raise ValueError(f"majority needs an odd variable count, got {k}")
    if not 1 <= k <= MAJ_POLY_CAP:
        raise ValueError(f"variable count {k} out of range 1..{MAJ_POLY_CAP}")
    size = 1 << k
    half = k // 2
    vals = [1 if m.bit_count() > half else -1 for m in range(size)]
    # In-place butterfly: vals[s] becomes sum_x maj(x) * prod_{t in s} x_t.
    for b in range(k):
        step = 1 << b
        for block in range(0, size, step << 1):
            for i in range(block, block + step):
                u, v = vals[i], vals[i + step]
                vals[i] = u + v
                vals[i + step] = v - u
    monomials: dict[frozenset[int], Fraction] = {}
    for smask in range(size):
        if vals[smask]:
            vars_ = frozenset(k - t for t in range(k) if (smask >> t) & 1)
            monomials[vars_] = Fraction(vals[smask], size)
    return SparsePoly(k, monomials)
