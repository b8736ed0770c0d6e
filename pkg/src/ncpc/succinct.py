"""Rank/select bitvectors and a wavelet tree over small alphabets.

The bitvector is plain (uncompressed) with a two-level rank directory:
one absolute count per 512-bit superblock and one relative count per
64-bit block, i.e. 64 + 8*16 bits of directory per 512 bits of data
(37.5% overhead at the accounting level). select1 is guided by sampled
positions of every s-th 1-bit; the sampling rate trades speed for space
and never changes results.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from collections import Counter

import numpy as np

from .errors import NoSuchOccurrence

_POP8 = [bin(b).count("1") for b in range(256)]
_SEL8 = [[i for i in range(8) if b >> i & 1] for b in range(256)]


def _as_bit_array(bits) -> np.ndarray:
    if isinstance(bits, str):
        if bits and set(bits) - {"0", "1"}:
            raise ValueError("bit string may only contain 0 and 1")
        return (np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
                if bits else np.zeros(0, dtype=np.uint8))
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("bit array may only contain 0 and 1")
    return arr


class Bitvector:
    """Static bit array with rank/select. Positions are 1-based."""

    __slots__ = ("n_bits", "ones", "select_sample", "_words", "_super",
                 "_rel", "_samples")

    def __init__(self, bits, select_sample: int = 64) -> None:
        if not isinstance(select_sample, int) or select_sample <= 0:
            raise ValueError(f"select_sample must be a positive integer: {select_sample}")
        arr = _as_bit_array(bits)
        n = int(arr.size)
        self.n_bits = n
        self.select_sample = select_sample

        nwords = (n + 63) // 64
        padded = np.zeros(nwords * 64, dtype=np.uint8)
        padded[:n] = arr
        if nwords:
            words = np.packbits(padded, bitorder="little").view("<u8")
        else:
            words = np.zeros(0, dtype="<u8")
        pop = np.bitwise_count(words).astype(np.int64)
        cum = np.concatenate(([0], np.cumsum(pop)))  # ones before word j
        self.ones = int(cum[-1])

        sup = cum[0::8]                              # ones before superblock
        rel = cum - sup[np.arange(nwords + 1) // 8]  # ones before word j within its superblock
        self._words = words.tolist()
        self._super = sup.tolist()
        self._rel = rel.tolist()

        ones_pos = np.flatnonzero(arr)               # 0-based positions of 1s
        self._samples = ones_pos[0::select_sample].tolist()

    # -- queries ---------------------------------------------------------

    def access(self, i: int) -> int:
        if not 1 <= i <= self.n_bits:
            raise IndexError(f"position out of range: {i}")
        return (self._words[(i - 1) >> 6] >> ((i - 1) & 63)) & 1

    def rank1(self, i: int) -> int:
        """Number of 1s in positions 1..i (i may be 0..n_bits)."""
        if not 0 <= i <= self.n_bits:
            raise IndexError(f"rank position out of range: {i}")
        j = i >> 6
        rem = i & 63
        c = self._super[j >> 3] + self._rel[j]
        if rem:
            c += (self._words[j] & ((1 << rem) - 1)).bit_count()
        return c

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, r: int) -> int:
        """1-based position of the r-th 1-bit."""
        if not 1 <= r <= self.ones:
            raise ValueError(f"select1 rank out of range: {r}")
        samples = self._samples
        k = (r - 1) // self.select_sample
        lo = samples[k] >> 9
        hi = ((samples[k + 1] >> 9) + 1) if k + 1 < len(samples) else len(self._super)
        sb = bisect_left(self._super, r, lo, hi) - 1
        base = self._super[sb]
        j = sb << 3
        nwords = len(self._words)
        lim = min(j + 8, nwords)
        while j + 1 < lim and base + self._rel[j + 1] < r:
            j += 1
        need = r - base - self._rel[j]
        return (j << 6) + _select_in_word(self._words[j], need) + 1

    def select0(self, r: int) -> int:
        """1-based position of the r-th 0-bit."""
        zeros = self.n_bits - self.ones
        if not 1 <= r <= zeros:
            raise ValueError(f"select0 rank out of range: {r}")
        # binary search superblocks on zero counts (512*sb - super[sb])
        lo, hi = 0, len(self._super) - 1
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if (mid << 9) - self._super[mid] < r:
                lo = mid
            else:
                hi = mid - 1
        sb = lo
        base = (sb << 9) - self._super[sb]
        j = sb << 3
        nwords = len(self._words)
        lim = min(j + 8, nwords)
        while j + 1 < lim and base + (((j + 1 - (sb << 3)) << 6) - self._rel[j + 1]) < r:
            j += 1
        need = r - base - (((j - (sb << 3)) << 6) - self._rel[j])
        valid = min(64, self.n_bits - (j << 6))
        word = (~self._words[j]) & ((1 << valid) - 1)
        return (j << 6) + _select_in_word(word, need) + 1

    # -- accounting ------------------------------------------------------

    def directory_bits(self) -> int:
        """Accounted rank directory size: 64 bits per superblock, 16 per block."""
        nwords = len(self._words)
        return 64 * len(self._super) + 16 * nwords

    def select_sample_bits(self) -> int:
        return 64 * len(self._samples)

    def size_bits(self) -> int:
        return self.n_bits + self.directory_bits() + self.select_sample_bits()


def _select_in_word(word: int, k: int) -> int:
    """0-based position of the k-th (1-based) set bit of a 64-bit word."""
    pos = 0
    while True:
        b = word & 0xFF
        c = _POP8[b]
        if c >= k:
            return pos + _SEL8[b][k - 1]
        k -= c
        word >>= 8
        pos += 8


def _huffman_codes(counts: dict[int, int]) -> dict[int, tuple[int, int]]:
    """Canonical prefix codes shaped by symbol frequency: sym -> (value, length)."""
    if len(counts) == 1:
        return {next(iter(counts)): (0, 0)}
    heap = [(w, sym, sym) for sym, w in counts.items()]
    heapq.heapify(heap)
    lefts: dict[int, object] = {}
    rights: dict[int, object] = {}
    nid = -1
    while len(heap) > 1:
        wa, ta, a = heapq.heappop(heap)
        wb, tb, b = heapq.heappop(heap)
        lefts[nid], rights[nid] = a, b
        heapq.heappush(heap, (wa + wb, min(ta, tb), nid))
        nid -= 1
    root = heap[0][2]
    lengths: dict[int, int] = {}
    stack = [(root, 0)]
    while stack:
        node, d = stack.pop()
        if node >= 0:
            lengths[node] = d
        else:
            stack.append((lefts[node], d + 1))
            stack.append((rights[node], d + 1))
    # canonical value assignment over (length, symbol)
    codes: dict[int, tuple[int, int]] = {}
    value = 0
    prev = 0
    for sym in sorted(lengths, key=lambda s: (lengths[s], s)):
        ln = lengths[sym]
        value <<= ln - prev
        codes[sym] = (value, ln)
        value += 1
        prev = ln
    return codes


class WaveletTree:
    """access/rank/select over a sequence of integers in 1..alpha.

    One concatenated bitvector per level. shape="balanced" assigns every
    symbol the fixed-width bits of symbol-1 (ceil(lg alpha) levels);
    shape="huffman" gives frequent symbols shorter paths.
    """

    def __init__(self, seq, alpha: int, shape: str = "balanced",
                 select_sample: int = 64) -> None:
        if alpha < 1:
            raise ValueError(f"alpha must be >= 1: {alpha}")
        if shape not in ("balanced", "huffman"):
            raise ValueError(f"unknown shape: {shape}")
        arr = np.asarray(seq, dtype=np.int64)
        if arr.size and (arr.min() < 1 or arr.max() > alpha):
            raise ValueError("symbol out of range 1..alpha")
        self.sigma_seq = int(arr.size)
        self.alpha = alpha
        self.shape = shape

        if shape == "balanced":
            m = (alpha - 1).bit_length()
            self._codes = {sym: (sym - 1, m) for sym in range(1, alpha + 1)}
        else:
            counts = Counter(arr.tolist())
            self._codes = {int(s): vc for s, vc in _huffman_codes(counts).items()}

        self._leaf = {(ln, val): sym for sym, (val, ln) in self._codes.items()}
        self.height = max((ln for _, ln in self._codes.values()), default=0)

        vals = np.array([self._codes.get(int(s), (0, 0))[0] for s in arr], dtype=np.int64)
        lens = np.array([self._codes.get(int(s), (0, 0))[1] for s in arr], dtype=np.int64)

        self._levels: list[tuple[Bitvector, dict[int, int]]] = []
        for k in range(self.height):
            alive = lens > k
            if not alive.any():
                break
            av = vals[alive]
            al = lens[alive]
            prefix = av >> (al - k)
            order = np.argsort(prefix, kind="stable")
            bits = ((av[order] >> (al[order] - k - 1)) & 1).astype(np.uint8)
            bv = Bitvector(bits, select_sample)
            ps = prefix[order]
            uniq, first = np.unique(ps, return_index=True)
            starts = {int(u): int(f) for u, f in zip(uniq, first)}
            self._levels.append((bv, starts))

    def access(self, i: int) -> int:
        if not 1 <= i <= self.sigma_seq:
            raise IndexError(f"position out of range: {i}")
        k, p, pos = 0, 0, i - 1
        while (k, p) not in self._leaf:
            bv, starts = self._levels[k]
            start = starts[p]
            if bv.access(start + pos + 1):
                pos = bv.rank1(start + pos + 1) - bv.rank1(start) - 1
                p = (p << 1) | 1
            else:
                pos = bv.rank0(start + pos + 1) - bv.rank0(start) - 1
                p = p << 1
            k += 1
        return self._leaf[(k, p)]

    def rank(self, c: int, i: int) -> int:
        """Occurrences of symbol c among positions 1..i."""
        if not 1 <= c <= self.alpha:
            raise ValueError(f"symbol out of range: {c}")
        if not 0 <= i <= self.sigma_seq:
            raise IndexError(f"rank position out of range: {i}")
        code = self._codes.get(c)
        if code is None:
            return 0
        val, ln = code
        cnt = i
        for k in range(ln):
            if cnt == 0:
                return 0
            bv, starts = self._levels[k]
            start = starts.get(val >> (ln - k))
            if start is None:
                return 0
            if (val >> (ln - k - 1)) & 1:
                cnt = bv.rank1(start + cnt) - bv.rank1(start)
            else:
                cnt = bv.rank0(start + cnt) - bv.rank0(start)
        return cnt

    def select(self, c: int, r: int) -> int:
        """1-based position of the r-th occurrence of symbol c."""
        if not 1 <= c <= self.alpha:
            raise ValueError(f"symbol out of range: {c}")
        if r < 1:
            raise ValueError(f"select rank out of range: {r}")
        if r > self.rank(c, self.sigma_seq):
            raise NoSuchOccurrence(f"no occurrence {r} of symbol {c}")
        val, ln = self._codes[c]
        pos = r - 1
        for k in range(ln - 1, -1, -1):
            bv, starts = self._levels[k]
            start = starts[val >> (ln - k)]
            if (val >> (ln - k - 1)) & 1:
                pos = bv.select1(bv.rank1(start) + pos + 1) - start - 1
            else:
                pos = bv.select0(bv.rank0(start) + pos + 1) - start - 1
        return pos + 1

    def size_bits(self) -> int:
        return sum(bv.size_bits() for bv, _ in self._levels)
