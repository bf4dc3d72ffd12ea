"""Textual formats for fixtures: formulas, trees, automata, polynomials.

All formats are line-oriented; blank lines and lines starting with '#' are
ignored. An optional ``dim N`` line pins the ambient dimension, which is
otherwise inferred from the largest variable mentioned.

DNF          one term per line as signed variable indices ("1 -2" is
             x1 AND NOT x2); a lone "0" is the empty, always-true term.
Tree         a single s-expression: leaf ::= 0 | 1,
             node ::= ( var low-subtree high-subtree ),
             where the low branch is taken when the variable is -1.
Automaton    "len: N", "start: STATE", "accept: STATE...", and one
             "trans: STATE (+|-) STATE" line per edge.
Polynomial   one monomial per line as "COEFF: v1 v2 ..." with a rational
             coefficient; "theta: R" turns the file into a threshold
             function.
Junta        "dim N", "relevant: v1 v2 ...", "table: 0110..." (row-major,
             first relevant variable most significant, bit 1 for +1).
Distribution "uniform:N", "product:p1,...,pN", or "file:PATH" where the
             file holds "POINT PROB" lines like "+-+ 1/4".
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional

from .concepts import (
    DecisionTree,
    Dfa,
    DnfFormula,
    Junta,
    Leaf,
    Node,
    SparsePoly,
    SparsePtf,
    Term,
    TreeNode,
)
from .cube import CubePoint
from .distributions import Distribution, FiniteSupport, ProductDist, UniformCube


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def _split_dim(lines: list[str]) -> tuple[Optional[int], list[str]]:
    if lines and lines[0].lower().startswith("dim"):
        parts = lines[0].split()
        if len(parts) != 2:
            raise ValueError(f"malformed dimension line: {lines[0]!r}")
        return int(parts[1]), lines[1:]
    return None, lines


# ---------------------------------------------------------------------------
# DNF


def parse_dnf(text: str, n: Optional[int] = None) -> DnfFormula:
    declared, lines = _split_dim(_content_lines(text))
    n = n or declared
    terms = []
    max_var = 1
    for line in lines:
        literals = [int(tok) for tok in line.split()]
        if literals == [0]:
            terms.append(Term(frozenset(), frozenset()))
            continue
        if 0 in literals:
            raise ValueError(f"literal 0 is only valid alone (empty term): {line!r}")
        terms.append(Term.of(*literals))
        max_var = max(max_var, *(abs(v) for v in literals))
    return DnfFormula(n if n is not None else max_var, tuple(terms))


def dump_dnf(formula: DnfFormula) -> str:
    lines = [f"dim {formula.n}"]
    for t in formula.terms:
        lines.append(" ".join(map(str, t.signed())) if t.width else "0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Decision trees


def _tokenize(expr: str) -> list[str]:
    return expr.replace("(", " ( ").replace(")", " ) ").split()


def parse_tree(text: str, n: Optional[int] = None) -> DecisionTree:
    declared, lines = _split_dim(_content_lines(text))
    n = n or declared
    tokens = _tokenize(" ".join(lines))

    def parse_node(pos: int) -> tuple[TreeNode, int]:
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree expression")
        tok = tokens[pos]
        if tok == "(":
            var = int(tokens[pos + 1])
            low, after_low = parse_node(pos + 2)
            high, after_high = parse_node(after_low)
            if tokens[after_high] != ")":
                raise ValueError(f"expected ')' at token {after_high}")
            return Node(var, low, high), after_high + 1
        if tok in ("0", "1"):
            return Leaf(int(tok)), pos + 1
        raise ValueError(f"unexpected token {tok!r}")

    root, end = parse_node(0)
    if end != len(tokens):
        raise ValueError(f"trailing tokens after tree expression: {tokens[end:]}")
    max_var = max((v for v in DecisionTree._vars(root)), default=1)
    return DecisionTree(n if n is not None else max_var, root)


def dump_tree(tree: DecisionTree) -> str:
    def render(node: TreeNode) -> str:
        if isinstance(node, Leaf):
            return str(node.label)
        return f"({node.var} {render(node.low)} {render(node.high)})"

    return f"dim {tree.n}\n{render(tree.root)}\n"


# ---------------------------------------------------------------------------
# Automata


def parse_dfa(text: str) -> Dfa:
    length = start = None
    accepting: list[str] = []
    transitions: dict[tuple, str] = {}
    states: list[str] = []

    def remember(state: str) -> None:
        if state not in states:
            states.append(state)

    for line in _content_lines(text):
        key, _, rest = line.partition(":")
        key, rest = key.strip().lower(), rest.strip()
        if key == "len":
            length = int(rest)
        elif key == "start":
            start = rest
            remember(start)
        elif key == "accept":
            accepting.extend(rest.split())
            for s in rest.split():
                remember(s)
        elif key == "trans":
            src, symbol, dst = rest.split()
            if symbol not in "+-":
                raise ValueError(f"transition symbol must be '+' or '-', got {symbol!r}")
            remember(src)
            remember(dst)
            transitions[(src, 1 if symbol == "+" else -1)] = dst
        else:
            raise ValueError(f"unknown automaton line: {line!r}")
    if length is None or start is None:
        raise ValueError("automaton needs 'len:' and 'start:' lines")
    return Dfa(tuple(states), start, frozenset(accepting), transitions, length)


def dump_dfa(dfa: Dfa) -> str:
    lines = [f"len: {dfa.length}", f"start: {dfa.start}"]
    if dfa.accepting:
        lines.append("accept: " + " ".join(str(s) for s in sorted(dfa.accepting, key=str)))
    for state in dfa.states:
        for bit, symbol in ((-1, "-"), (1, "+")):
            lines.append(f"trans: {state} {symbol} {dfa.transitions[(state, bit)]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Polynomials and threshold functions


def parse_poly(text: str, n: Optional[int] = None) -> SparsePoly | SparsePtf:
    declared, lines = _split_dim(_content_lines(text))
    n = n or declared
    monomials: dict[frozenset[int], Fraction] = {}
    theta: Optional[Fraction] = None
    max_var = 1
    for line in lines:
        head, _, rest = line.partition(":")
        if head.strip().lower() == "theta":
            theta = Fraction(rest.strip())
            continue
        coeff = Fraction(head.strip())
        variables = frozenset(int(tok) for tok in rest.split())
        if variables:
            max_var = max(max_var, *variables)
        monomials[variables] = monomials.get(variables, Fraction(0)) + coeff
    poly = SparsePoly(n if n is not None else max_var, monomials)
    return poly if theta is None else SparsePtf(poly, theta)


def dump_poly(poly: SparsePoly | SparsePtf) -> str:
    theta = None
    if isinstance(poly, SparsePtf):
        theta, poly = poly.theta, poly.poly
    lines = [f"dim {poly.n}"]
    for vars_ in sorted(poly.monomials, key=lambda s: (len(s), sorted(s))):
        lines.append(f"{poly.monomials[vars_]}: " + " ".join(map(str, sorted(vars_))))
    if theta is not None:
        lines.append(f"theta: {theta}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Juntas


def parse_junta(text: str) -> Junta:
    declared, lines = _split_dim(_content_lines(text))
    relevant: Optional[tuple[int, ...]] = None
    table: Optional[tuple[int, ...]] = None
    for line in lines:
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        if key == "relevant":
            relevant = tuple(int(tok) for tok in rest.split())
        elif key == "table":
            bits = rest.strip().replace(" ", "")
            table = tuple(int(c) for c in bits)
        else:
            raise ValueError(f"unknown junta line: {line!r}")
    if declared is None or relevant is None or table is None:
        raise ValueError("junta needs 'dim', 'relevant:' and 'table:' lines")
    return Junta(declared, relevant, table)


def dump_junta(junta: Junta) -> str:
    table = "".join(map(str, junta.table))
    return f"dim {junta.n}\nrelevant: {' '.join(map(str, junta.relevant))}\ntable: {table}\n"


# ---------------------------------------------------------------------------
# Distributions


def parse_distribution(spec: str) -> Distribution:
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "uniform":
        return UniformCube(int(rest))
    if kind == "product":
        probs = tuple(Fraction(tok) for tok in rest.split(","))
        return ProductDist(len(probs), probs)
    if kind == "file":
        return parse_finite_support(Path(rest).read_text())
    raise ValueError(f"unknown distribution spec {spec!r} (use uniform:/product:/file:)")


def parse_finite_support(text: str) -> FiniteSupport:
    entries = []
    for line in _content_lines(text):
        point_text, prob_text = line.split()
        entries.append((CubePoint.from_string(point_text), Fraction(prob_text)))
    if not entries:
        raise ValueError("finite support file has no entries")
    return FiniteSupport(entries[0][0].n, tuple(entries))


def dump_finite_support(dist: FiniteSupport) -> str:
    return "\n".join(f"{p.to_string()} {prob}" for p, prob in dist.entries) + "\n"
