"""
The operator monoid acting on S_n[q] union {0}: single operators v_{ab}
(classical when a < b, quantum when a > b), compositions, the bullet_k
action, support/degree accounting, flattening/truncation, and the three
equivalence-preserving transformations (cyclic shift, horizontal flip,
vertical flip) with orbit generation.

A composition is stored as a tuple of (a, b) pairs in application order:
the first pair acts first.  The textual form follows the right-to-left
product convention, so the leftmost printed term acts last.

>>> apply_word(((5, 4), (1, 2)), (7, 1, 6, 3, 5, 4, 2, 8), 5)
QElement(q=(0, 0, 0, 0, 1, 0, 0), w=(7, 2, 6, 3, 4, 5, 1, 8))
>>> flatten_word(((3, 7), (1, 3), (3, 5)))
((2, 4), (1, 2), (2, 3))
"""

__all__ = [
    "Word", "Composition", "DiagramModel",
    "is_classical", "is_quantum", "apply_op_raw", "apply_operator",
    "apply_word", "apply_composition", "support", "word_degree",
    "quantum_count", "flatten_word", "truncate_word", "cyclic_shift",
    "horizontal_flip", "vertical_flip", "orbit", "diagram_model",
    "render_diagram", "parse_composition", "format_composition",
    "word_to_json", "word_from_json",
]

import re
from dataclasses import dataclass
from typing import Optional

from .perms import Perm, truncate_value
from .qalgebra import (ActionResult, QElement, QExp, Zero, ZERO,
                       zero_exponent)

# a composition as a tuple of (a, b) index pairs in application order
Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Composition:
    """A word of operators; `word` is in application order."""
    word: Word

    def __post_init__(self):
        for a, b in self.word:
            if a == b or a < 1 or b < 1:
                raise ValueError(f"invalid operator pair ({a},{b})")

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def support(self) -> frozenset[int]:
        return support(self.word)


def is_classical(op: tuple[int, int]) -> bool:
    """
    >>> is_classical((1, 2))
    True
    """
    return op[0] < op[1]


def is_quantum(op: tuple[int, int]) -> bool:
    """
    >>> is_quantum((2, 1))
    True
    """
    return op[0] > op[1]


def apply_op_raw(alpha: QExp, perm: Perm, k: int, a: int,
                 b: int) -> Optional[tuple[QExp, Perm]]:
    """
    Apply v_{ab} at column k to q^alpha * perm; return None on zero.

    Positions here are 0-based while k is the 1-based column: with
    i = pos(a) and j = pos(b) the action needs i < k <= j.  A classical
    operator (a < b) forbids intermediate values inside (a, b); a quantum
    operator (a > b) demands every intermediate value inside (b, a) and
    contributes q_{i+1, j+1} to the exponent.

    >>> apply_op_raw((0, 0), (3, 2, 1), 2, 2, 1)
    ((0, 1), (3, 1, 2))
    >>> apply_op_raw((0,), (2, 1), 1, 1, 2) is None
    True
    """
    i = perm.index(a)
    j = perm.index(b)
    if i >= k or j < k:
        return None
    if a < b:
        for l in range(i + 1, j):
            if a < perm[l] < b:
                return None
        new_alpha = alpha
    else:
        for l in range(i + 1, j):
            if not b < perm[l] < a:
                return None
        acc = list(alpha)
        for s in range(i, j):
            acc[s] += 1
        new_alpha = tuple(acc)
    out = list(perm)
    out[i], out[j] = out[j], out[i]
    return new_alpha, tuple(out)


def apply_operator(op: tuple[int, int], e: ActionResult,
                   k: int) -> ActionResult:
    """
    Apply a single operator to an element of S_n[q] union {0}.

    >>> apply_operator((2, 1), QElement((0, 0), (3, 2, 1)), 2)
    QElement(q=(0, 1), w=(3, 1, 2))
    """
    if isinstance(e, Zero):
        return ZERO
    n = e.n
    a, b = op
    if a > n or b > n:
        raise ValueError(f"operator ({a},{b}) exceeds n={n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"column k={k} out of range for n={n}")
    res = apply_op_raw(e.q, e.w, k, a, b)
    if res is None:
        return ZERO
    return QElement(res[0], res[1])


def apply_word(word: Word, u: Perm, k: int,
               alpha: Optional[QExp] = None) -> ActionResult:
    """
    Apply a composition (application order) to q^alpha * u at column k.

    >>> apply_word(((3, 4), (1, 2), (4, 5)), (1, 3, 4, 2, 5), 2)
    QElement(q=(0, 0, 0, 0), w=(2, 5, 3, 1, 4))
    """
    state = (alpha if alpha is not None else zero_exponent(len(u)), u)
    for a, b in word:
        state = apply_op_raw(state[0], state[1], k, a, b)
        if state is None:
            return ZERO
    return QElement(state[0], state[1])


def apply_composition(v: Composition, e: ActionResult, k: int) -> ActionResult:
    """
    Composition counterpart of apply_operator; Zero short-circuits.

    >>> w = apply_composition(Composition(((3, 4), (1, 2), (4, 5))),
    ...     QElement((0,) * 4, (1, 3, 4, 2, 5)), 2)
    >>> w.w
    (2, 5, 3, 1, 4)
    """
    for op in v.word:
        e = apply_operator(op, e, k)
        if isinstance(e, Zero):
            return ZERO
    return e


def support(word: Word) -> frozenset[int]:
    """
    >>> sorted(support(((1, 6), (6, 2), (1, 4))))
    [1, 2, 4, 6]
    """
    return frozenset(x for op in word for x in op)


def word_degree(word: Word) -> int:
    """
    >>> word_degree(((1, 2), (2, 1)))
    2
    """
    return len(word)


def quantum_count(word: Word) -> int:
    """
    Number of quantum operators in the word.

    >>> quantum_count(((1, 6), (6, 2), (1, 4)))
    1
    """
    return sum(1 for op in word if is_quantum(op))


def flatten_word(word: Word) -> Word:
    """
    Relabel the support by the order-preserving bijection onto [m].

    >>> flatten_word(((2, 5), (5, 2)))
    ((1, 2), (2, 1))
    """
    if not word:
        raise ValueError("cannot flatten an empty composition")
    relabel = {t: i + 1 for i, t in enumerate(sorted(support(word)))}
    return tuple((relabel[a], relabel[b]) for a, b in word)


def truncate_word(word: Word, p: int) -> Word:
    """
    Apply tau_p to every index; p must avoid the support.

    >>> truncate_word(((3, 7), (1, 3), (3, 5)), 6)
    ((3, 6), (1, 3), (3, 5))
    """
    if p in support(word):
        raise ValueError(f"{p} lies in the support")
    return tuple((truncate_value(a, p), truncate_value(b, p))
                 for a, b in word)


def cyclic_shift(word: Word) -> Word:
    """
    Advance each index one step along the sorted support cycle.

    >>> cyclic_shift(((2, 5), (8, 3), (2, 8)))
    ((3, 8), (2, 5), (3, 2))
    """
    ts = sorted(support(word))
    nxt = {t: ts[(i + 1) % len(ts)] for i, t in enumerate(ts)}
    return tuple((nxt[a], nxt[b]) for a, b in word)


def horizontal_flip(word: Word) -> Word:
    """
    Reverse the support order and swap each pair: v_{ab} -> v_{h(b)h(a)}.

    >>> horizontal_flip(((2, 5), (8, 3), (2, 8)))
    ((3, 8), (5, 2), (2, 8))
    """
    ts = sorted(support(word))
    m = len(ts)
    flip = {t: ts[m - 1 - i] for i, t in enumerate(ts)}
    return tuple((flip[b], flip[a]) for a, b in word)


def vertical_flip(word: Word) -> Word:
    """
    Reverse the application order of the word.

    >>> vertical_flip(((2, 5), (8, 3), (2, 8)))
    ((2, 8), (8, 3), (2, 5))
    """
    return tuple(reversed(word))


def orbit(word: Word) -> frozenset[Word]:
    """
    Closure of the flattened word under cyclic shift and both flips.

    >>> len(orbit(((1, 2), (2, 1))))
    2
    """
    start = flatten_word(word)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for img in (cyclic_shift(w), horizontal_flip(w), vertical_flip(w)):
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return frozenset(seen)


@dataclass(frozen=True)
class DiagramModel:
    """Rows of a composition diagram over its sorted support columns."""
    columns: tuple[int, ...]
    # one (a, b, kind) row per operator, in application order
    rows: tuple[tuple[int, int, str], ...]


def diagram_model(word: Word) -> DiagramModel:
    """
    >>> diagram_model(((1, 6), (6, 2))).columns
    (1, 2, 6)
    """
    if not word:
        raise ValueError("cannot draw an empty composition")
    cols = tuple(sorted(support(word)))
    rows = tuple((a, b, "classical" if a < b else "quantum")
                 for a, b in word)
    return DiagramModel(cols, rows)


def render_diagram(word: Word, fmt: str = "ascii") -> str:
    """
    Deterministic ASCII or SVG rendering: columns are the sorted support,
    rows run bottom-to-top in application order, classical rows are solid
    and quantum rows dotted.
    """
    model = diagram_model(word)
    if fmt == "ascii":
        return _render_ascii(model)
    if fmt == "svg":
        return _render_svg(model)
    raise ValueError(f"unknown diagram format {fmt!r}")


_CELL = 4  # fixed column spacing for both renderers


def _render_ascii(model: DiagramModel) -> str:
    col_at = {c: i * _CELL for i, c in enumerate(model.columns)}
    width = (len(model.columns) - 1) * _CELL + 1
    lines = []
    for a, b, kind in reversed(model.rows):  # last applied on top
        lo, hi = sorted((col_at[a], col_at[b]))
        fill = "-" if kind == "classical" else "."
        row = [" "] * width
        for x in range(lo + 1, hi):
            row[x] = fill
        row[col_at[a]] = "*"
        row[col_at[b]] = "*"
        label = f"v({a},{b})"
        lines.append("".join(row) + "   " + label)
    axis = [" "] * width
    for c in model.columns:
        axis[col_at[c]] = "|"
    lines.append("".join(axis))
    lines.append("".join(str(c).ljust(_CELL) for c in model.columns).rstrip())
    return "\n".join(lines) + "\n"


def _render_svg(model: DiagramModel) -> str:
    pad, dy = 20, 24
    xs = {c: pad + i * _CELL * 10 for i, c in enumerate(model.columns)}
    height = pad * 2 + dy * len(model.rows)
    width = pad * 2 + (len(model.columns) - 1) * _CELL * 10
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for c in model.columns:
        parts.append(
            f'<line x1="{xs[c]}" y1="{pad // 2}" x2="{xs[c]}" '
            f'y2="{height - pad // 2}" stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{xs[c]}" y="{height - 2}" font-size="10" '
            f'text-anchor="middle">{c}</text>'
        )
    for r, (a, b, kind) in enumerate(model.rows):
        y = height - pad - r * dy  # bottom-to-top in application order
        dash = '' if kind == "classical" else ' stroke-dasharray="4,3"'
        parts.append(
            f'<line x1="{xs[a]}" y1="{y}" x2="{xs[b]}" y2="{y}" '
            f'stroke="#000000" stroke-width="2"{dash}/>'
        )
        for x in (xs[a], xs[b]):
            parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#000000"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


_TERM_RE = re.compile(r"v\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_composition(text: str, order: str = "display") -> Word:
    """
    Parse whitespace-separated `v(a,b)` terms.  With order="display" the
    leftmost term acts last; order="apply" reads terms in application order.

    >>> parse_composition("v(4,5) v(1,2) v(3,4)")
    ((3, 4), (1, 2), (4, 5))
    """
    terms = _TERM_RE.findall(text)
    if not terms or "".join(
            _TERM_RE.sub("", text).split()):
        raise ValueError(f"cannot parse composition {text!r}")
    word = tuple((int(a), int(b)) for a, b in terms)
    if order == "display":
        word = tuple(reversed(word))
    elif order != "apply":
        raise ValueError(f"unknown word order {order!r}")
    for a, b in word:
        if a == b or a < 1 or b < 1:
            raise ValueError(f"invalid operator pair ({a},{b})")
    return word


def format_composition(word: Word, order: str = "display") -> str:
    """
    Inverse of parse_composition.

    >>> format_composition(((3, 4), (1, 2), (4, 5)))
    'v(4,5) v(1,2) v(3,4)'
    """
    seq = tuple(reversed(word)) if order == "display" else word
    if order not in ("display", "apply"):
        raise ValueError(f"unknown word order {order!r}")
    return " ".join(f"v({a},{b})" for a, b in seq)


def word_to_json(word: Word) -> dict:
    """
    >>> word_to_json(((3, 4), (1, 2)))
    {'word': [[1, 2], [3, 4]], 'order': 'display'}
    """
    return {"word": [[a, b] for a, b in reversed(word)], "order": "display"}


def word_from_json(obj: dict) -> Word:
    """
    >>> word_from_json({'word': [[1, 2], [3, 4]], 'order': 'display'})
    ((3, 4), (1, 2))
    """
    word = tuple((int(a), int(b)) for a, b in obj["word"])
    if obj.get("order", "display") == "display":
        word = tuple(reversed(word))
    return word
