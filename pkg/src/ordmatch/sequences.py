"""Longest monotone subsequences with witnesses (patience sorting)."""

from __future__ import annotations

from bisect import bisect_left
from typing import Sequence


def longest_increasing(seq: Sequence[int]) -> list[int]:
    """Positions of a longest strictly increasing subsequence of ``seq``.

    Among all longest subsequences the one returned ends at the leftmost
    possible position of the final pile.
    """
    tails: list[int] = []  # value at the top of each pile
    tail_pos: list[int] = []
    back = [-1] * len(seq)
    for i, x in enumerate(seq):
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
            tail_pos.append(i)
        else:
            tails[k] = x
            tail_pos[k] = i
        back[i] = tail_pos[k - 1] if k else -1
    out = []
    i = tail_pos[-1] if tail_pos else -1
    while i != -1:
        out.append(i)
        i = back[i]
    return out[::-1]


def longest_decreasing(seq: Sequence[int]) -> list[int]:
    return longest_increasing([-x for x in seq])


def lis_length(seq: Sequence[int]) -> int:
    tails: list[int] = []
    for x in seq:
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
        else:
            tails[k] = x
    return len(tails)
