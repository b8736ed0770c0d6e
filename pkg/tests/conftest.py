"""Shared test oracles.

Everything here is deliberately independent of the library's fast paths:
linear scans, exhaustive tree enumeration, a greedy explicit-tree codec,
and a two-queue Huffman cost. Tests compare library output against these.
"""

from __future__ import annotations

import collections
import functools

import numpy as np
import pytest


# -- exhaustive ordered-tree enumeration ------------------------------------

@functools.lru_cache(maxsize=None)
def all_ordered_profiles(m: int) -> tuple[tuple[int, ...], ...]:
    """Leaf-depth tuples of every ordered binary tree with m leaves."""
    if m == 1:
        return ((0,),)
    out = []
    for k in range(1, m):
        for left in all_ordered_profiles(k):
            for right in all_ordered_profiles(m - k):
                out.append(tuple(d + 1 for d in left) + tuple(d + 1 for d in right))
    return tuple(out)


def brute_optimal_cost(freqs, height_cap=None) -> int:
    """Minimum cost over all ordered trees (optionally height-capped)."""
    profiles = all_ordered_profiles(len(freqs))
    if height_cap is not None:
        profiles = [p for p in profiles if max(p) <= height_cap]
    return min(sum(f * d for f, d in zip(freqs, p)) for p in profiles)


@functools.lru_cache(maxsize=None)
def kraft_complete_multisets(m: int) -> tuple[tuple[int, ...], ...]:
    """All codeword-length multisets of full binary trees with m leaves."""
    def rec(k):
        if k == 1:
            return {(0,)}
        res = set()
        for a in range(1, k):
            for left in rec(a):
                for right in rec(k - a):
                    res.add(tuple(sorted([d + 1 for d in left] + [d + 1 for d in right])))
        return res
    return tuple(sorted(rec(m)))


# -- greedy explicit-tree codec for alphabetic profiles ----------------------

class TreeCodec:
    """Reference codec: an explicit tree built greedily from leaf depths."""

    def __init__(self, depths):
        depths = list(depths)
        if depths == [0]:
            self.codes = {1: (0, 0)}
            self.root = {"sym": 1}
            return
        root: dict = {}
        stack = [(root, 0)]
        for i, d in enumerate(depths, 1):
            placed = False
            while stack:
                node, nd = stack.pop()
                if nd == d:
                    node["sym"] = i
                    placed = True
                    break
                if nd < d:
                    left, right = {}, {}
                    node[0], node[1] = left, right
                    stack.append((right, nd + 1))
                    stack.append((left, nd + 1))
            if not placed:
                raise ValueError("depths not realizable in order")
        self.root = root
        self.codes = {}
        walk = [(root, 0, 0)]
        while walk:
            node, v, l = walk.pop()
            if "sym" in node:
                self.codes[node["sym"]] = (v, l)
            else:
                if 0 not in node:
                    raise ValueError("tree not full")
                walk.append((node[1], (v << 1) | 1, l + 1))
                walk.append((node[0], v << 1, l + 1))

    def encode(self, i):
        return self.codes[i]

    def decode_bits(self, bits, pos):
        """(symbol, new position) consuming from a 0/1 list."""
        node = self.root
        while "sym" not in node:
            node = node[bits[pos]]
            pos += 1
        return node["sym"], pos


# -- reverse-lex explicit construction for the rank-arithmetic code ----------

def revlex_tree_codewords(lengths) -> dict[int, list[str]]:
    """Per depth, labels of the code tree where the leaves at each depth are
    the reverse-lexicographically smallest nodes. Returns depth -> labels,
    in reverse-lex order."""
    L = max(lengths)
    leaf_cnt = [0] * (L + 1)
    for l in lengths:
        leaf_cnt[l] += 1
    level = [""]
    out: dict[int, list[str]] = {}
    for d in range(L + 1):
        level.sort(key=lambda s: s[::-1])
        out[d] = level[:leaf_cnt[d]]
        level = [lab + b for lab in level[leaf_cnt[d]:] for b in ("0", "1")]
    return out


def revlex_char_codewords(lengths) -> list[str]:
    """Codeword (as a bit string) per character under the reverse-lex rule."""
    by_depth = revlex_tree_codewords(lengths)
    used = collections.Counter()
    out = []
    for l in lengths:
        out.append(by_depth[l][used[l]])
        used[l] += 1
    return out


# -- independent Huffman cost -------------------------------------------------

def huffman_cost_twoqueue(freqs) -> int:
    """Sum of internal node weights = optimal total code length."""
    if len(freqs) == 1:
        return 0
    q1 = collections.deque(sorted(int(f) for f in freqs))
    q2: collections.deque = collections.deque()

    def pop_min():
        if q1 and (not q2 or q1[0] <= q2[0]):
            return q1.popleft()
        return q2.popleft()

    cost = 0
    while len(q1) + len(q2) > 1:
        a = pop_min()
        b = pop_min()
        cost += a + b
        q2.append(a + b)
    return cost


# -- misc ---------------------------------------------------------------------

def bits_of(value: int, length: int) -> str:
    return format(value, f"0{length}b") if length else ""


def to_bitlist(data: bytes, nbits: int) -> list[int]:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))[:nbits].tolist()


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0DE)
