"""Optimal prefix codes whose reversed codewords are in canonical order.

Codeword lengths are non-decreasing when the codewords are sorted by
their bit-reversed form, and within one length the reversed order equals
character order. Under that convention the whole code is determined by
the depth sequence D (one codeword length per character) plus per-depth
leaf/node counts, and codewords are never materialized: encoding walks
the implicit code tree from leaf to root and decoding from root to leaf,
using only rank arithmetic.

Rank conventions at depth d (1-based ranks over reversed path labels):
leaves occupy ranks 1..leaves[d], internal nodes the rest; a node is a
left child iff its rank is <= nodes[d]/2; the parent/child rank maps are
affine shifts by leaves[d-1] and nodes[d]/2.
"""

from __future__ import annotations

import heapq

import numpy as np

from .bits import BitReader
from .errors import (InvalidCodeState, KraftViolation, TruncatedStream,
                     Underflow)
from .succinct import WaveletTree


def huffman_lengths(freqs) -> list[int]:
    """Codeword lengths of an optimal prefix code for positive weights.

    Ties in the merge heap break on (weight, smallest character index in
    the subtree); only the length multiset matters downstream.
    """
    n = len(freqs)
    if n == 0:
        raise ValueError("empty alphabet")
    w = [int(f) for f in freqs]
    if min(w) <= 0:
        raise ValueError("weights must be positive")
    if n == 1:
        return [0]
    heap = [(w[i], i, i) for i in range(n)]
    heapq.heapify(heap)
    lch: dict[int, int] = {}
    rch: dict[int, int] = {}
    nid = n
    while len(heap) > 1:
        wa, ta, a = heapq.heappop(heap)
        wb, tb, b = heapq.heappop(heap)
        lch[nid], rch[nid] = a, b
        heapq.heappush(heap, (wa + wb, min(ta, tb), nid))
        nid += 1
    lengths = [0] * n
    stack = [(heap[0][2], 0)]
    while stack:
        node, d = stack.pop()
        if node < n:
            lengths[node] = d
        else:
            stack.append((lch[node], d + 1))
            stack.append((rch[node], d + 1))
    return lengths


class RevCanonCode:
    """Code model: depth sequence D plus leaves/nodes tables."""

    def __init__(self, lengths, shape: str = "balanced",
                 select_sample: int = 64) -> None:
        lengths = [int(x) for x in lengths]
        sigma = len(lengths)
        if sigma == 0:
            raise ValueError("empty alphabet")
        L = max(lengths)
        if sigma == 1:
            if lengths != [0]:
                raise KraftViolation("single character must have an empty codeword")
        elif min(lengths) < 1:
            raise KraftViolation("codeword lengths must be >= 1")
        if sum(1 << (L - l) for l in lengths) != (1 << L):
            raise KraftViolation("lengths do not satisfy the Kraft equality")

        self.sigma = sigma
        self.L = L
        self.depths = tuple(lengths)

        leaves = [0] * (L + 1)
        for l in lengths:
            leaves[l] += 1
        nodes = [0] * (L + 1)
        nodes[0] = 1
        for d in range(L):
            nodes[d + 1] = 2 * (nodes[d] - leaves[d])
        if nodes[L] != leaves[L]:
            raise KraftViolation("leaf counts inconsistent with a full tree")
        for d in range(L + 1):
            if leaves[d] > nodes[d]:
                raise KraftViolation("more leaves than nodes at some depth")
        self.leaves = leaves
        self.nodes = nodes
        self._half = [nodes[d] // 2 for d in range(L + 1)]

        self.D = (WaveletTree(lengths, L, shape=shape, select_sample=select_sample)
                  if sigma > 1 else None)
        self._arrays: tuple[np.ndarray, np.ndarray] | None = None

    # -- rank arithmetic ---------------------------------------------------

    def child_rank(self, d_child: int, r_parent: int, bit: int) -> int:
        """Rank of the child reached by `bit` from the parent at d_child-1."""
        if not 1 <= d_child <= self.L:
            raise ValueError(f"depth out of range: {d_child}")
        if not self.leaves[d_child - 1] < r_parent <= self.nodes[d_child - 1]:
            raise ValueError(f"parent rank out of range or not internal: {r_parent}")
        r = r_parent - self.leaves[d_child - 1]
        if bit:
            r += self._half[d_child]
        return r

    def parent_rank(self, d_child: int, r_child: int) -> tuple[int, int]:
        """(parent rank, bit) for the node of rank r_child at depth d_child."""
        if not 1 <= d_child <= self.L:
            raise ValueError(f"depth out of range: {d_child}")
        if not 1 <= r_child <= self.nodes[d_child]:
            raise ValueError(f"rank out of range: {r_child}")
        bit = 0 if r_child <= self._half[d_child] else 1
        r = r_child + self.leaves[d_child - 1]
        if bit:
            r -= self._half[d_child]
        return (r, bit)

    # -- codec ---------------------------------------------------------------

    def encode(self, i: int) -> tuple[int, int]:
        """Codeword (value, length) of character i, by leaf-to-root ascent."""
        if not 1 <= i <= self.sigma:
            raise IndexError(f"character out of range: {i}")
        if self.sigma == 1:
            return (0, 0)
        l = self.D.access(i)
        r = self.D.rank(l, i)
        v = 0
        for d in range(l, 0, -1):
            r, bit = self.parent_rank(d, r)
            v |= bit << (l - d)
        return (v, l)

    def decode(self, reader: BitReader) -> tuple[int, int]:
        """(character, length) for the next codeword, by root-to-leaf descent."""
        if self.sigma == 1:
            return (1, 0)
        leaves = self.leaves
        half = self._half
        d = 0
        r = 1
        while True:
            if reader.remaining == 0:
                raise TruncatedStream("truncated stream")
            bit = reader.read(1)
            d += 1
            if d > self.L:
                raise InvalidCodeState("invalid code state")
            r = r - leaves[d - 1] + (half[d] if bit else 0)
            if r <= leaves[d]:
                return (self.D.select(d, r), d)

    def decode_fast(self, table: "DescentTable", reader: BitReader) -> tuple[int, int]:
        """decode() accelerated by t-bit chunk jumps; identical output."""
        if self.sigma == 1:
            return (1, 0)
        t = table.t
        leaves = self.leaves
        half = self._half
        d = 0
        r = 1
        while True:
            chunk = reader.peek(t)
            if d < self.L and r > int(table.thr_max[d][chunk]):
                # no leaf reachable within the next t bits for this rank
                try:
                    reader.skip(t)
                except Underflow:
                    raise TruncatedStream("truncated stream") from None
                r += int(table.delta[d][chunk])
                d += t
                continue
            for _ in range(t):
                if reader.remaining == 0:
                    raise TruncatedStream("truncated stream")
                bit = reader.read(1)
                d += 1
                if d > self.L:
                    raise InvalidCodeState("invalid code state")
                r = r - leaves[d - 1] + (half[d] if bit else 0)
                if r <= leaves[d]:
                    return (self.D.select(d, r), d)

    def codeword_set(self) -> list[tuple[int, int, int]]:
        """All (character, value, length) triples via encode()."""
        return [(i, *self.encode(i)) for i in range(1, self.sigma + 1)]

    def codeword_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, lengths) for all characters; vectorized ascent, cached."""
        if self._arrays is not None:
            return self._arrays
        if self.sigma == 1:
            self._arrays = (np.zeros(1, dtype=np.uint64), np.zeros(1, dtype=np.int64))
            return self._arrays
        lens = np.asarray(self.depths, dtype=np.int64)
        order = np.argsort(lens, kind="stable")
        ranks = np.empty(self.sigma, dtype=np.int64)
        sl = lens[order]
        group_start = np.concatenate(([0], np.flatnonzero(np.diff(sl)) + 1))
        starts_per = np.repeat(group_start, np.diff(np.concatenate((group_start, [self.sigma]))))
        ranks[order] = np.arange(self.sigma) - starts_per + 1

        vals = np.zeros(self.sigma, dtype=np.uint64)
        r = ranks.copy()
        leaves = self.leaves
        half = self._half
        for d in range(self.L, 0, -1):
            act = lens >= d
            rd = r[act]
            bit = rd > half[d]
            vals[act] |= bit.astype(np.uint64) << (lens[act] - d).astype(np.uint64)
            r[act] = rd - bit * half[d] + leaves[d - 1]
        self._arrays = (vals, lens)
        return self._arrays

    def model_size_bits(self) -> int:
        """Accounted size: wavelet tree of D plus leaves/nodes as 64-bit words."""
        wt = self.D.size_bits() if self.D is not None else 0
        return wt + 64 * 2 * (self.L + 1)


class DescentTable:
    """Per-(depth, chunk) descent accelerator.

    For every start depth d and t-bit chunk: delta[d][chunk] is the rank
    shift accumulated by descending those t bits, and thr_max[d][chunk]
    the largest start rank for which some prefix of the chunk can land on
    a leaf. Ranks above the threshold jump t bits at once; ranks at or
    below it fall back to the per-bit walk for at most t steps.
    """

    __slots__ = ("t", "thr_max", "delta")

    def __init__(self, t: int, thr_max: list[np.ndarray], delta: list[np.ndarray]):
        self.t = t
        self.thr_max = thr_max
        self.delta = delta


_BIG = 1 << 60


def build_descent_table(code: RevCanonCode, t: int) -> DescentTable:
    if not 1 <= t <= 16:
        raise ValueError(f"chunk width out of range: {t}")
    nchunks = 1 << t
    chunks = np.arange(nchunks, dtype=np.int64)
    thr_list: list[np.ndarray] = []
    delta_list: list[np.ndarray] = []
    for d0 in range(code.L):
        delta = np.zeros(nchunks, dtype=np.int64)
        thr = np.full(nchunks, -_BIG, dtype=np.int64)
        if d0 + t > code.L:
            thr = np.full(nchunks, _BIG, dtype=np.int64)  # always take the slow path
        else:
            for k in range(1, t + 1):
                d = d0 + k
                bit = (chunks >> (t - k)) & 1
                delta += -code.leaves[d - 1] + bit * code._half[d]
                np.maximum(thr, code.leaves[d] - delta, out=thr)
        thr_list.append(thr)
        delta_list.append(delta)
    return DescentTable(t, thr_list, delta_list)
