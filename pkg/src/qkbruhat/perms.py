"""
Permutations of [n] = {1, ..., n} in one-line notation, stored as tuples of
1-based values, together with the index-manipulation helpers (truncation,
deletion, insertion, flips, cyclic value shift) used by the transformation
lemmas for operator compositions.

>>> length((3, 2, 1))
3
>>> delete_and_flatten((3, 2, 4, 1), 2)
(2, 3, 1)
>>> insert_value((3, 2, 4, 1), 2, 3)
(4, 3, 2, 5, 1)
"""

__all__ = [
    "Perm",
    "all_perms", "is_permutation", "length", "inverse", "compose",
    "longest_element", "swap_values", "swap_positions",
    "delete_and_flatten", "insert_value", "truncate_value",
    "count_smaller_left", "conjugate_by_longest", "reverse_positions",
    "cyclic_value_shift", "parse_perm", "format_perm",
]

from itertools import permutations
from typing import Iterator, NewType, Optional

# a permutation of [n] in one-line notation, 1-based values
Perm = NewType("Perm", tuple[int, ...])


def all_perms(n: int) -> Iterator[Perm]:
    """
    Yield all permutations of [n] in lexicographic order.

    >>> list(all_perms(2))
    [(1, 2), (2, 1)]
    """
    return permutations(range(1, n + 1))


def is_permutation(w: tuple[int, ...]) -> bool:
    """
    Check that `w` is a bijection of [n] in one-line notation.

    >>> is_permutation((2, 1, 3))
    True
    >>> is_permutation((1, 1, 2))
    False
    """
    return sorted(w) == list(range(1, len(w) + 1))


def length(w: Perm) -> int:
    """
    Number of inversions of `w`.

    >>> length((1, 2, 3))
    0
    >>> length((7, 1, 6, 3, 5, 4, 2, 8))
    14
    """
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def inverse(w: Perm) -> Perm:
    """
    Inverse permutation.

    >>> inverse((2, 3, 1))
    (3, 1, 2)
    """
    inv = [0] * len(w)
    for i, v in enumerate(w):
        inv[v - 1] = i + 1
    return tuple(inv)


def compose(sigma: Perm, tau: Perm) -> Perm:
    """
    Product sigma*tau, i.e. (sigma*tau)(i) = sigma(tau(i)).

    >>> compose((2, 1, 3), (1, 3, 2))
    (2, 3, 1)
    """
    return tuple(sigma[t - 1] for t in tau)


def longest_element(n: int) -> Perm:
    """
    The longest element w_0 = (n, n-1, ..., 1).

    >>> longest_element(3)
    (3, 2, 1)
    """
    return tuple(range(n, 0, -1))


def swap_values(w: Perm, a: int, b: int) -> Perm:
    """
    Left transposition s_{ab}*w: exchange the entries equal to a and b.

    >>> swap_values((1, 3, 2), 1, 3)
    (3, 1, 2)
    """
    n = len(w)
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise ValueError(f"values {a},{b} invalid for n={n}")
    return tuple(b if v == a else a if v == b else v for v in w)


def swap_positions(w: Perm, i: int, j: int) -> Perm:
    """
    Right transposition w*s_{ij}: exchange the entries at 1-based positions i, j.

    >>> swap_positions((1, 3, 2), 1, 3)
    (2, 3, 1)
    """
    out = list(w)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def truncate_value(j: int, p: int) -> int:
    """
    Truncation map tau_p: j stays put below p, drops by one at or above p.

    >>> truncate_value(3, 5)
    3
    >>> truncate_value(5, 5)
    4
    """
    return j if j < p else j - 1


def delete_and_flatten(u: Perm, r: int) -> Perm:
    """
    u/r: omit the r-th value of u and relabel the rest by tau_{u(r)}.

    >>> delete_and_flatten((3, 2, 4, 1), 2)
    (2, 3, 1)
    """
    if not 1 <= r <= len(u):
        raise ValueError(f"position {r} out of range")
    s = u[r - 1]
    return tuple(truncate_value(v, s) for i, v in enumerate(u) if i != r - 1)


def insert_value(v: Perm, r: int, s: int) -> Perm:
    """
    epsilon_{r,s}(v): the unique u with u(r) = s and u/r = v.

    >>> insert_value((3, 2, 4, 1), 2, 3)
    (4, 3, 2, 5, 1)
    """
    n = len(v) + 1
    if not (1 <= r <= n and 1 <= s <= n):
        raise ValueError(f"insertion ({r},{s}) out of range for n={n}")
    lifted = [x if x < s else x + 1 for x in v]
    lifted.insert(r - 1, s)
    return tuple(lifted)


def count_smaller_left(u: Perm, p: int) -> int:
    """
    Number of positions strictly left of p's position holding values < p.

    >>> count_smaller_left((3, 1, 2), 3)
    0
    >>> count_smaller_left((7, 1, 6, 3, 5, 4, 2, 8), 5)
    2
    """
    t = u.index(p)
    return sum(1 for i in range(t) if u[i] < p)


def conjugate_by_longest(u: Perm) -> Perm:
    """
    w_0*u*w_0: entry i becomes n - u(n-i+1) + 1.

    >>> conjugate_by_longest((2, 4, 3, 1))
    (4, 2, 1, 3)
    """
    n = len(u)
    return tuple(n - v + 1 for v in reversed(u))


def reverse_positions(u: Perm) -> Perm:
    """
    u*w_0: read the one-line notation backwards.

    >>> reverse_positions((2, 4, 3, 1))
    (1, 3, 4, 2)
    """
    return tuple(reversed(u))


def cyclic_value_shift(u: Perm) -> Perm:
    """
    Value cycle: each value v becomes v+1, and n becomes 1.

    >>> cyclic_value_shift((2, 4, 3, 1))
    (3, 1, 4, 2)
    """
    n = len(u)
    return tuple(1 if v == n else v + 1 for v in u)


def parse_perm(text: str) -> Perm:
    """
    Parse comma-separated one-line notation; an optional `|` is ignored.

    >>> parse_perm("7,1,6,3,5|4,2,8")
    (7, 1, 6, 3, 5, 4, 2, 8)
    """
    cleaned = text.replace("|", ",").replace(" ", "")
    parts = [p for p in cleaned.split(",") if p]
    try:
        w = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"cannot parse permutation {text!r}") from exc
    if not is_permutation(w):
        raise ValueError(f"{text!r} is not a permutation of [n]")
    return w


def format_perm(w: Perm, k: Optional[int] = None) -> str:
    """
    Comma-separated one-line notation, with an optional `|` after position k.

    >>> format_perm((7, 1, 6, 3, 5, 4, 2, 8), k=5)
    '7,1,6,3,5|4,2,8'
    """
    if k is None or not 1 <= k < len(w):
        return ",".join(str(v) for v in w)
    head = ",".join(str(v) for v in w[:k])
    tail = ",".join(str(v) for v in w[k:])
    return head + "|" + tail
