"""
Cover tests and poset construction for the classical k-Bruhat order, the
Grassmannian Bruhat order, and the (truncated) quantum k-Bruhat order on
S_n[q], including intervals, maximal chains with their left-transposition
labels, and the classical monoid relation checks.

Poset nodes are raw (alpha, w) pairs; alpha is the q-exponent vector.

>>> classical_leq_k((1, 3, 4, 2, 5), (2, 5, 3, 1, 4), 2)
True
"""

__all__ = [
    "CoverLabel", "TruncatedPoset", "covers_of", "quantum_cover_check",
    "classical_cover_check", "classical_leq_k", "grassmannian_leq",
    "build_poset", "interval", "maximal_chains",
    "classical_monoid_relation_check", "poset_to_dot", "poset_to_json",
]

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .perms import Perm, all_perms, compose, length, swap_positions
from .qalgebra import (QElement, QExp, degree, format_element, q_interval,
                       q_multiply, zero_exponent)
from .operators import Word, apply_word
from .qalgebra import Zero

Node = tuple[QExp, Perm]


@dataclass(frozen=True)
class CoverLabel:
    """Left transposition s_{ab} labelling a cover, with its q factor."""
    a: int
    b: int
    kind: str  # "classical" or "quantum"
    q_factor: QExp


def covers_of(w: Perm, k: int) -> Iterator[tuple[QExp, Perm, CoverLabel]]:
    """
    Yield the quantum k-Bruhat covers of w as (delta_alpha, w', label).

    >>> [(d, v) for d, v, _ in covers_of((3, 2, 1), 2)]
    [((1, 1), (1, 2, 3)), ((0, 1), (3, 1, 2))]
    """
    n = len(w)
    for i in range(1, k + 1):
        for j in range(k + 1, n + 1):
            wi, wj = w[i - 1], w[j - 1]
            between = w[i:j - 1]
            if wi < wj:
                if any(wi < x < wj for x in between):
                    continue
                yield (zero_exponent(n), swap_positions(w, i, j),
                       CoverLabel(wi, wj, "classical", zero_exponent(n)))
            else:
                if not all(wj < x < wi for x in between):
                    continue
                qf = q_interval(i, j, n)
                yield (qf, swap_positions(w, i, j),
                       CoverLabel(wi, wj, "quantum", qf))


def quantum_cover_check(w: Perm, target: QElement,
                        k: int) -> Optional[CoverLabel]:
    """
    Label of the cover w < target in the quantum k-Bruhat order, if any.

    >>> quantum_cover_check((3, 2, 1), QElement((0, 1), (3, 1, 2)), 2).kind
    'quantum'
    """
    if len(w) != target.n:
        raise ValueError("size mismatch")
    for delta, w2, label in covers_of(w, k):
        if w2 == target.w and delta == target.q:
            return label
    return None


def classical_cover_check(u: Perm, v: Perm, k: int) -> Optional[CoverLabel]:
    """
    Label of the classical cover u < v in the k-Bruhat order, if any.

    >>> classical_cover_check((1, 3, 4, 2, 5), (1, 4, 3, 2, 5), 2)
    CoverLabel(a=3, b=4, kind='classical', q_factor=(0, 0, 0, 0))
    """
    n = len(u)
    label = quantum_cover_check(u, QElement(zero_exponent(n), v), k)
    if label is not None and label.kind == "classical":
        return label
    return None


def classical_leq_k(u: Perm, w: Perm, k: int) -> bool:
    """
    Comparison criterion for the classical k-Bruhat order: entries weakly
    rise left of the column and weakly fall right of it, and every
    inversion created between u and w must straddle the column.

    >>> classical_leq_k((1, 2, 3), (1, 2, 3), 1)
    True
    """
    n = len(u)
    for a in range(1, n + 1):
        if a <= k and u[a - 1] > w[a - 1]:
            return False
        if a > k and u[a - 1] < w[a - 1]:
            return False
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if u[a - 1] < u[b - 1] and w[a - 1] > w[b - 1] \
                    and not (a <= k < b):
                return False
    return True


def grassmannian_leq(eta: Perm, xi: Perm) -> bool:
    """
    Grassmannian Bruhat order by brute force: eta precedes xi when some
    u and k satisfy u <=_k eta*u <=_k xi*u.

    >>> grassmannian_leq((1, 2, 3), (1, 2, 3))
    True
    """
    n = len(eta)
    for u in all_perms(n):
        eu = compose(eta, u)
        xu = compose(xi, u)
        for k in range(1, n):
            if classical_leq_k(u, eu, k) and classical_leq_k(eu, xu, k):
                return True
    return False


def _node_key(node: Node):
    alpha, w = node
    return (degree(alpha), alpha, w)


@dataclass(frozen=True)
class TruncatedPoset:
    """Quantum k-Bruhat order truncated at a total q-degree cap."""
    n: int
    k: int
    max_qdeg: int
    nodes: tuple[Node, ...]
    edges: tuple[tuple[Node, Node, CoverLabel], ...]

    def successors(self, node: Node) -> list[tuple[Node, CoverLabel]]:
        return [(up, lab) for lo, up, lab in self.edges if lo == node]


def build_poset(n: int, k: int, max_qdeg: int,
                node_limit: int = 100_000) -> TruncatedPoset:
    """
    All nodes q^alpha * w with deg(alpha) <= max_qdeg and all covers
    between them.

    >>> p = build_poset(3, 2, 0)
    >>> (len(p.nodes), len(p.edges))
    (6, 5)
    """
    if n < 2 or not 1 <= k <= n - 1 or max_qdeg < 0:
        raise ValueError("invalid poset parameters")
    exps = _exponents_up_to(n, max_qdeg)
    perms = list(all_perms(n))
    if len(exps) * len(perms) > node_limit:
        raise ResourceWarning(
            f"poset would exceed the {node_limit}-node limit")
    nodes = sorted(((alpha, w) for alpha in exps for w in perms),
                   key=_node_key)
    node_set = set(nodes)
    edges = []
    for alpha, w in nodes:
        for delta, w2, label in covers_of(w, k):
            beta = q_multiply(alpha, delta)
            if (beta, w2) in node_set:
                edges.append(((alpha, w), (beta, w2), label))
    edges.sort(key=lambda e: (_node_key(e[0]), _node_key(e[1])))
    return TruncatedPoset(n, k, max_qdeg, tuple(nodes), tuple(edges))


def _exponents_up_to(n: int, cap: int) -> list[QExp]:
    slots = n - 1
    out = [()]
    for _ in range(slots):
        out = [e + (x,) for e in out for x in range(cap + 1)]
    return sorted((e for e in out if sum(e) <= cap),
                  key=lambda e: (sum(e), e))


def interval(p: TruncatedPoset, lo: Node, hi: Node) -> TruncatedPoset:
    """
    Induced subposet on {z : lo <= z <= hi}.

    >>> p = build_poset(3, 2, 0)
    >>> len(interval(p, p.nodes[0], p.nodes[0]).nodes)
    1
    """
    if lo not in p.nodes or hi not in p.nodes:
        raise ValueError("interval endpoints not in poset")
    up = _reachable(p.edges, lo, forward=True)
    down = _reachable(p.edges, hi, forward=False)
    keep = up & down
    nodes = tuple(x for x in p.nodes if x in keep)
    edges = tuple(e for e in p.edges if e[0] in keep and e[1] in keep)
    return TruncatedPoset(p.n, p.k, p.max_qdeg, nodes, edges)


def _reachable(edges, start: Node, forward: bool) -> set[Node]:
    adj: dict[Node, list[Node]] = {}
    for lo, up, _ in edges:
        src, dst = (lo, up) if forward else (up, lo)
        adj.setdefault(src, []).append(dst)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def maximal_chains(p: TruncatedPoset, lo: Node,
                   hi: Node) -> list[tuple[CoverLabel, ...]]:
    """
    All saturated chains from lo to hi, each as its label word.

    >>> p = build_poset(3, 2, 0)
    >>> maximal_chains(p, ((0, 0), (1, 2, 3)), ((0, 0), (1, 2, 3)))
    [()]
    """
    sub = interval(p, lo, hi)
    chains: list[tuple[CoverLabel, ...]] = []

    def walk(x: Node, acc: tuple[CoverLabel, ...]):
        if x == hi:
            chains.append(acc)
            return
        for y, lab in sub.successors(x):
            walk(y, acc + (lab,))

    if lo in sub.nodes:
        walk(lo, ())
    return chains


def classical_monoid_relation_check(n: int) -> dict:
    """
    Verify the defining relations of the classical operator monoid as
    action equalities over all of S_n and every column.  Returns a report
    with instance counts and any violations.

    >>> classical_monoid_relation_check(3)["violations"]
    []
    """
    checked = 0
    violations = []

    def eq(word1: Word, word2: Word, tag: str):
        nonlocal checked
        checked += 1
        for u in all_perms(n):
            for k in range(1, n):
                if apply_word(word1, u, k) != apply_word(word2, u, k):
                    violations.append((tag, u, k))
                    return

    def zero(word: Word, tag: str):
        nonlocal checked
        checked += 1
        for u in all_perms(n):
            for k in range(1, n):
                if not isinstance(apply_word(word, u, k), Zero):
                    violations.append((tag, u, k))
                    return

    for a, b, c, d in combinations(range(1, n + 1), 4):
        eq(((a, c), (c, d), (b, c)), ((b, c), (a, b), (b, d)),
           f"(i).1 a={a} b={b} c={c} d={d}")
        eq(((b, c), (c, d), (a, c)), ((b, d), (a, b), (b, c)),
           f"(i).2 a={a} b={b} c={c} d={d}")
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for a, b in pairs:
        for c, d in pairs:
            if b < c or (a < c and d < b):
                eq(((c, d), (a, b)), ((a, b), (c, d)),
                   f"(ii) a={a} b={b} c={c} d={d}")
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            for c in range(b + 1, n + 1):
                for d in range(c, n + 1):
                    zero(((b, d), (a, c)), f"(iii).1 a={a} b={b} c={c} d={d}")
                    zero(((a, c), (b, d)), f"(iii).2 a={a} b={b} c={c} d={d}")
    for a, b, c in combinations(range(1, n + 1), 3):
        zero(((b, c), (a, b), (b, c)), f"(iv).1 a={a} b={b} c={c}")
        zero(((a, b), (b, c), (a, b)), f"(iv).2 a={a} b={b} c={c}")
    return {"n": n, "instances": checked, "violations": violations}


def _node_text(node: Node, k: Optional[int] = None) -> str:
    alpha, w = node
    return format_element(QElement(alpha, w), k)


def poset_to_dot(p: TruncatedPoset) -> str:
    """DOT export; quantum edges are dashed and carry their q monomial."""
    lines = ["digraph qkbruhat {", "  rankdir=BT;"]
    for node in p.nodes:
        lines.append(f'  "{_node_text(node, p.k)}";')
    for lo, up, lab in p.edges:
        attrs = [f'label="s({min(lab.a, lab.b)},{max(lab.a, lab.b)})'
                 + (_q_text(lab.q_factor) if lab.kind == "quantum" else "")
                 + '"']
        if lab.kind == "quantum":
            attrs.append("style=dashed")
        lines.append(f'  "{_node_text(lo, p.k)}" -> "{_node_text(up, p.k)}"'
                     f' [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _q_text(qf: QExp) -> str:
    terms = [f"q{s + 1}" for s, e in enumerate(qf) for _ in range(e)]
    return " " + "*".join(terms) if terms else ""


def poset_to_json(p: TruncatedPoset) -> dict:
    """JSON export with deterministically sorted nodes and edges."""
    return {
        "n": p.n,
        "k": p.k,
        "max_qdeg": p.max_qdeg,
        "nodes": [{"q": list(a), "w": list(w)} for a, w in p.nodes],
        "edges": [
            {
                "lower": {"q": list(lo[0]), "w": list(lo[1])},
                "upper": {"q": list(up[0]), "w": list(up[1])},
                "a": lab.a,
                "b": lab.b,
                "kind": lab.kind,
                "q_factor": list(lab.q_factor),
            }
            for lo, up, lab in p.edges
        ],
    }
