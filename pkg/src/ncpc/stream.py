"""Bulk payload codec over a materialized codeword table.

This is throughput plumbing for whole-file encode/decode: the per-symbol
codecs define the codes; this packs or unpacks long symbol runs through
them efficiently (vectorized bit packing, table-driven decoding with a
16-bit primary table and a probe fallback for longer codewords).
"""

from __future__ import annotations

import numpy as np

from .errors import TruncatedStream

_NUMPY_MIN = 2048  # below this, plain Python packing is faster


class SequenceCodec:
    """Encode/decode whole symbol arrays for one prefix-free code."""

    def __init__(self, values: np.ndarray, lengths: np.ndarray) -> None:
        self._vals = np.asarray(values, dtype=np.uint64)
        self._lens = np.asarray(lengths, dtype=np.int64)
        self.sigma = int(self._vals.size)
        self.max_len = int(self._lens.max()) if self.sigma else 0
        self._vals_list = self._vals.tolist()
        self._lens_list = self._lens.tolist()

        t = min(16, self.max_len)
        self._t = t
        self._long: dict[int, dict[int, int]] = {}
        self._long_lengths: list[int] = []
        if t:
            tlen = np.zeros(1 << t, dtype=np.int64)
            tsym = np.zeros(1 << t, dtype=np.int64)
            for c in range(self.sigma):
                v = int(self._vals[c])
                l = int(self._lens[c])
                if l <= t:
                    lo = v << (t - l)
                    hi = (v + 1) << (t - l)
                    tlen[lo:hi] = l
                    tsym[lo:hi] = c + 1
                else:
                    self._long.setdefault(l, {})[v] = c + 1
            self._long_lengths = sorted(self._long)
            self._tlen = tlen.tolist()
            self._tsym = tsym.tolist()

    @classmethod
    def for_code(cls, code) -> "SequenceCodec":
        return cls(*code.codeword_arrays())

    # -- encode -----------------------------------------------------------

    def encode(self, symbols) -> tuple[bytes, int]:
        """Pack symbols (ids 1..sigma) into an MSB-first stream.

        Returns (payload bytes zero-padded to a byte boundary, exact bit count).
        """
        arr = np.asarray(symbols, dtype=np.int64)
        if arr.size and (arr.min() < 1 or arr.max() > self.sigma):
            raise ValueError("symbol id out of range")
        if self.max_len == 0:
            return (b"", 0)
        if arr.size < _NUMPY_MIN:
            return self._encode_py(arr.tolist())
        return self._encode_np(arr)

    def _encode_py(self, syms: list[int]) -> tuple[bytes, int]:
        vals = self._vals_list
        lens = self._lens_list
        out = bytearray()
        acc = 0
        nacc = 0
        nbits = 0
        for s in syms:
            l = lens[s - 1]
            acc = (acc << l) | vals[s - 1]
            nacc += l
            nbits += l
            while nacc >= 8:
                nacc -= 8
                out.append((acc >> nacc) & 0xFF)
                acc &= (1 << nacc) - 1
        if nacc:
            out.append((acc << (8 - nacc)) & 0xFF)
        return (bytes(out), nbits)

    def _encode_np(self, arr: np.ndarray) -> tuple[bytes, int]:
        lens = self._lens[arr - 1]
        vals = self._vals[arr - 1]
        offs = np.zeros(arr.size, dtype=np.int64)
        np.cumsum(lens[:-1], out=offs[1:])
        total = int(offs[-1] + lens[-1])
        maxlen = int(lens.max())
        narrow = total < 2**31 and maxlen <= 32
        if narrow:
            lens = lens.astype(np.int32)
            vals = vals.astype(np.uint32)
            offs = offs.astype(np.int32)
        bits = np.zeros(total, dtype=np.uint8)
        one = np.uint32(1) if narrow else np.uint64(1)
        for b in range(maxlen):
            act = lens > b
            shift = (lens[act] - 1 - b).astype(vals.dtype)
            bits[offs[act] + b] = ((vals[act] >> shift) & one).astype(np.uint8)
        return (np.packbits(bits).tobytes(), total)

    # -- decode -----------------------------------------------------------

    def decode(self, data: bytes, n: int, nbits: int | None = None) -> np.ndarray:
        """Unpack exactly n symbols; raises TruncatedStream if data runs out."""
        if n < 0:
            raise ValueError("n must be >= 0")
        if nbits is None:
            nbits = 8 * len(data)
        if self.max_len == 0:
            return np.ones(n, dtype=np.uint32)
        t = self._t
        tmask = (1 << t) - 1
        tlen = self._tlen
        tsym = self._tsym
        buf = bytes(data) + b"\x00" * 16
        out = [0] * n
        acc = 0
        have = 0
        pos = 0
        for k in range(n):
            if have < t:
                acc = (((acc & ((1 << have) - 1)) << 32)
                       | int.from_bytes(buf[pos:pos + 4], "big"))
                pos += 4
                have += 32
            w = (acc >> (have - t)) & tmask
            l = tlen[w]
            if l:
                have -= l
                out[k] = tsym[w]
            else:
                bitpos = (pos << 3) - have
                l, sym = self._decode_long(buf, bitpos)
                out[k] = sym
                bitpos += l
                pos = bitpos >> 3
                rem = bitpos & 7
                if rem:
                    acc = buf[pos] & ((1 << (8 - rem)) - 1)
                    have = 8 - rem
                    pos += 1
                else:
                    acc = 0
                    have = 0
        consumed = (pos << 3) - have
        if consumed > nbits:
            raise TruncatedStream("truncated stream")
        return np.asarray(out, dtype=np.uint32)

    def _decode_long(self, buf: bytes, bitpos: int) -> tuple[int, int]:
        start = bitpos >> 3
        off = bitpos & 7
        window = int.from_bytes(buf[start:start + 12], "big")
        for l in self._long_lengths:
            v = (window >> (96 - off - l)) & ((1 << l) - 1)
            sym = self._long[l].get(v)
            if sym is not None:
                return (l, sym)
        raise ValueError("invalid stream: no codeword matches")
