import pytest

from qkbruhat.perms import (all_perms, is_permutation, length, inverse,
                            compose, longest_element, swap_values,
                            swap_positions, truncate_value,
                            delete_and_flatten, insert_value,
                            conjugate_by_longest, reverse_positions,
                            cyclic_value_shift, parse_perm, format_perm)


def test_all_perms_counts_and_order():
    perms = list(all_perms(3))
    assert len(perms) == 6
    assert perms == sorted(perms)
    assert perms[0] == (1, 2, 3)


def test_is_permutation():
    assert is_permutation((2, 1, 3))
    assert not is_permutation((1, 1, 3))
    assert not is_permutation((0, 1, 2))


def test_length_and_longest():
    assert length((1, 2, 3)) == 0
    assert length((3, 2, 1)) == 3
    w0 = longest_element(4)
    assert w0 == (4, 3, 2, 1)
    assert length(w0) == 6


def test_inverse_compose():
    for u in all_perms(4):
        assert compose(u, inverse(u)) == (1, 2, 3, 4)
        assert compose(inverse(u), u) == (1, 2, 3, 4)


def test_swaps():
    assert swap_values((1, 3, 2), 1, 3) == (3, 1, 2)
    assert swap_positions((1, 3, 2), 1, 3) == (2, 3, 1)
    # left swap is composition with the transposition on the left
    u = (2, 4, 1, 3)
    s24 = swap_values((1, 2, 3, 4), 2, 4)
    assert swap_values(u, 2, 4) == compose(s24, u)
    assert swap_positions(u, 2, 4) == compose(u, s24)


def test_truncate_value():
    assert [truncate_value(j, 3) for j in (1, 2, 3, 4, 5)] == [1, 2, 2, 3, 4]


def test_delete_insert_inverse():
    u = (3, 2, 4, 1)
    for r in range(1, 5):
        v = delete_and_flatten(u, r)
        assert is_permutation(v)
        assert insert_value(v, r, u[r - 1]) == u


def test_dualizing_maps():
    assert conjugate_by_longest((2, 4, 3, 1)) == (4, 2, 1, 3)
    assert reverse_positions((2, 4, 3, 1)) == (1, 3, 4, 2)
    assert cyclic_value_shift((2, 4, 3, 1)) == (3, 1, 4, 2)
    for u in all_perms(4):
        assert conjugate_by_longest(conjugate_by_longest(u)) == u
        assert reverse_positions(reverse_positions(u)) == u


def test_parse_format_roundtrip():
    w = (7, 1, 6, 3, 5, 4, 2, 8)
    assert parse_perm(format_perm(w, k=5)) == w
    assert parse_perm("2,1") == (2, 1)
    with pytest.raises(ValueError):
        parse_perm("1,1,2")
