"""
Exponent-vector arithmetic for q-monomials and elements q^alpha * w of
S_n[q], plus the absorbing Zero used as the "no result" value of the
operator action.

Exponent vectors have n-1 slots; slot i (1-based) carries the exponent of
q_i and is stored at index i-1.

>>> q_interval(5, 6, 8)
(0, 0, 0, 0, 1, 0, 0)
>>> q_multiply((1, 0), (0, 2))
(1, 2)
"""

__all__ = [
    "QExp", "QElement", "Zero", "ZERO", "ActionResult",
    "zero_exponent", "q_interval", "q_multiply", "degree",
    "extended_length", "reverse_exponent", "exponent_delete",
    "exponent_insert", "signed_q_interval",
    "parse_element", "format_element", "element_to_json", "element_from_json",
]

from dataclasses import dataclass
from typing import Union

from .perms import Perm, format_perm, is_permutation, length, parse_perm

# exponent vector with n-1 slots; also used with signed entries for the
# cyclic-shift bookkeeping factor q_{ij}^{-1}
QExp = tuple[int, ...]


@dataclass(frozen=True)
class QElement:
    """An element q^alpha * w of S_n[q]."""
    q: QExp
    w: Perm

    def __post_init__(self):
        if len(self.q) != len(self.w) - 1:
            raise ValueError("exponent vector must have n-1 slots")
        if not is_permutation(self.w):
            raise ValueError(f"{self.w} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.w)


class Zero:
    """The absorbing zero result of the operator action (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"


ZERO = Zero()

ActionResult = Union[Zero, QElement]


def zero_exponent(n: int) -> QExp:
    """
    The all-zero exponent vector for S_n[q].

    >>> zero_exponent(3)
    (0, 0)
    """
    return (0,) * (n - 1)


def q_interval(i: int, j: int, n: int) -> QExp:
    """
    Exponent vector of q_{ij} = q_i q_{i+1} ... q_{j-1}.

    >>> q_interval(3, 7, 8)
    (0, 0, 1, 1, 1, 1, 0)
    """
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return tuple(1 if i <= s < j else 0 for s in range(1, n))


def signed_q_interval(i: int, j: int, n: int, sign: int) -> QExp:
    """
    Signed exponent vector sign * q_{ij}; used only to verify the
    cyclic-shift correction factor, never produced by the action.

    >>> signed_q_interval(1, 3, 4, -1)
    (-1, -1, 0)
    """
    return tuple(sign * e for e in q_interval(i, j, n))


def q_multiply(a: QExp, b: QExp) -> QExp:
    """
    Componentwise sum of exponent vectors.

    >>> q_multiply((0, 1, 0), (0, 1, 2))
    (0, 2, 2)
    """
    if len(a) != len(b):
        raise ValueError("exponent size mismatch")
    return tuple(x + y for x, y in zip(a, b))


def degree(a: QExp) -> int:
    """
    Total degree of a q-monomial.

    >>> degree((0, 1, 2))
    3
    """
    return sum(a)


def extended_length(e: QElement) -> int:
    """
    Extended length ell(q^alpha * w) = ell(w) + 2 deg(alpha).

    >>> extended_length(QElement((0, 1), (3, 1, 2)))
    4
    """
    return length(e.w) + 2 * degree(e.q)


def reverse_exponent(a: QExp) -> QExp:
    """
    Reverse the slot order (the exponent part of the horizontal flip).

    >>> reverse_exponent((2, 0, 2, 5))
    (5, 2, 0, 2)
    """
    return tuple(reversed(a))


def exponent_delete(a: QExp, s: int) -> QExp:
    """
    alpha/s: omit the s-th component (1-based).

    >>> exponent_delete((2, 2, 3, 1), 2)
    (2, 3, 1)
    """
    if not 1 <= s <= len(a):
        raise ValueError(f"slot {s} out of range")
    return a[:s - 1] + a[s:]


def exponent_insert(a: QExp, r: int, v: int) -> QExp:
    """
    epsilon_{r,v}(alpha): insert the value v at position r (1-based).

    >>> exponent_insert((2, 2, 3, 1), 2, 4)
    (2, 4, 2, 3, 1)
    """
    if not 1 <= r <= len(a) + 1:
        raise ValueError(f"position {r} out of range")
    return a[:r - 1] + (v,) + a[r - 1:]


def format_element(e: ActionResult, k: int = None) -> str:
    """
    Text form: `q[0,1]*3,1,2` for q-elements, the bare one-line notation
    when the exponent is zero, and `0` for Zero.

    >>> format_element(QElement((0, 1), (3, 1, 2)))
    'q[0,1]*3,1,2'
    >>> format_element(QElement((0, 0), (3, 1, 2)))
    '3,1,2'
    >>> format_element(ZERO)
    '0'
    """
    if isinstance(e, Zero):
        return "0"
    perm_text = format_perm(e.w, k)
    if degree(e.q) == 0:
        return perm_text
    return "q[" + ",".join(str(x) for x in e.q) + "]*" + perm_text


def parse_element(text: str) -> ActionResult:
    """
    Inverse of format_element.

    >>> parse_element("q[0,1]*3,1,2")
    QElement(q=(0, 1), w=(3, 1, 2))
    >>> parse_element("0")
    ZERO
    """
    text = text.strip()
    if text == "0":
        return ZERO
    if text.startswith("q["):
        close = text.index("]")
        q = tuple(int(x) for x in text[2:close].split(","))
        if not text[close + 1:].startswith("*"):
            raise ValueError(f"cannot parse element {text!r}")
        w = parse_perm(text[close + 2:])
        return QElement(q, w)
    w = parse_perm(text)
    return QElement(zero_exponent(len(w)), w)


def element_to_json(e: ActionResult):
    """
    JSON form: {"q": [...], "w": [...]}; Zero serializes as the string "0".

    >>> element_to_json(ZERO)
    '0'
    >>> element_to_json(QElement((1, 0), (2, 3, 1)))
    {'q': [1, 0], 'w': [2, 3, 1]}
    """
    if isinstance(e, Zero):
        return "0"
    return {"q": list(e.q), "w": list(e.w)}


def element_from_json(obj) -> ActionResult:
    """
    Inverse of element_to_json.

    >>> element_from_json({"q": [1, 0], "w": [2, 3, 1]})
    QElement(q=(1, 0), w=(2, 3, 1))
    """
    if obj == "0":
        return ZERO
    return QElement(tuple(obj["q"]), tuple(obj["w"]))
