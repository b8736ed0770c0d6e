"""Near-optimal alphabetic prefix codes in compact form.

An alphabetic code keeps codewords in alphabet order, so the code is
fully described by its leaf-depth profile. The builder finds a
minimum-cost ordered tree (Garsia-Wachs, cross-checked by interval DP),
restricts its height when needed, then completely balances every subtree
rooted at a cutoff depth. The balanced shape admits an arithmetic
encoder/decoder over three small structures:

  B  marker bitvector over the alphabet (1 = shallow leaf or leftmost
     leaf of a subtree rooted at the cutoff depth),
  S  explicit codewords for the marked positions, indexed by rank1(B),
  A  dispatch table indexed by the first `cutoff` bits of the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import BitReader
from .errors import KraftViolation, TruncatedStream, Underflow
from .succinct import Bitvector


def canonical_codewords(depths) -> list[tuple[int, int]]:
    """Left-to-right codeword assignment (value, length) for a full ordered tree.

    Raises KraftViolation if no full ordered binary tree realizes the
    depths in this exact order.
    """
    depths = list(depths)
    if not depths:
        raise KraftViolation("empty profile")
    L = max(depths)
    total = 1 << L
    pos = 0
    out = []
    for d in depths:
        if d < 0 or d > L:
            raise KraftViolation(f"bad depth {d}")
        step = 1 << (L - d)
        if pos % step:
            raise KraftViolation("depths not realizable in alphabet order")
        if pos + step > total:
            raise KraftViolation("depth profile overfull")
        out.append((pos >> (L - d), d))
        pos += step
    if pos != total:
        raise KraftViolation("depth profile does not fill the tree")
    return out


@dataclass(frozen=True)
class DepthProfile:
    """Leaf depths of a full ordered binary tree, in alphabet order."""

    depths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "depths", tuple(int(d) for d in self.depths))
        canonical_codewords(self.depths)  # validates order-realizability + fullness

    @property
    def sigma(self) -> int:
        return len(self.depths)

    @property
    def height(self) -> int:
        return max(self.depths)

    def codewords(self) -> list[tuple[int, int]]:
        return canonical_codewords(self.depths)


def expected_length(profile: DepthProfile, freqs) -> Fraction:
    """Average codeword length under the given weights, as an exact rational."""
    freqs = [int(f) for f in freqs]
    if len(freqs) != profile.sigma:
        raise ValueError("frequency vector length mismatch")
    total = sum(freqs)
    if total <= 0:
        raise ValueError("frequencies must sum to a positive value")
    return Fraction(sum(f * d for f, d in zip(freqs, profile.depths)), total)


def cutoff_for(sigma: int) -> int:
    """Dispatch-prefix width: ceil(lg s - sqrt(lg s)), clamped to >= 1."""
    if sigma < 2:
        raise ValueError("cutoff undefined for sigma < 2")
    lg = math.log2(sigma)
    return max(1, math.ceil(lg - math.sqrt(lg)))


def height_cap_for(sigma: int) -> int:
    """Height budget: floor(lg s + sqrt(lg s) + 3)."""
    if sigma < 2:
        raise ValueError("height cap undefined for sigma < 2")
    lg = math.log2(sigma)
    return math.floor(lg + math.sqrt(lg) + 3)


# -- optimal ordered trees ------------------------------------------------

def garsia_wachs(freqs) -> list[int]:
    """Leaf depths of a minimum-cost ordered binary tree.

    Two-phase method: repeatedly combine the leftmost pair (x[j-1], x[j])
    with x[j-1] <= x[j+1] and reinsert the merged weight right after the
    nearest left element >= it; the leaf depths of the combination tree
    are realizable in the original order and optimal.
    """
    n = len(freqs)
    if n == 0:
        raise ValueError("empty alphabet")
    if n == 1:
        return [0]
    ws = [int(f) for f in freqs]
    if min(ws) <= 0:
        raise ValueError("weights must be positive")
    lch = [-1] * n
    rch = [-1] * n
    INF = float("inf")
    ids = [-1] + list(range(n)) + [-1]
    wts = [INF] + ws[:] + [INF]

    j = 2
    while len(ids) > 3:
        last = len(ids) - 2
        if j > last:
            j = last
        if j < 2:
            j = 2
        while wts[j - 1] > wts[j + 1]:
            j += 1
        a, b = ids[j - 1], ids[j]
        w = wts[j - 1] + wts[j]
        nid = len(ws)
        ws.append(w)
        lch.append(a)
        rch.append(b)
        del ids[j - 1:j + 1]
        del wts[j - 1:j + 1]
        q = j - 2
        while wts[q] < w:
            q -= 1
        ids.insert(q + 1, nid)
        wts.insert(q + 1, w)
        j = max(2, q)

    depths = [0] * n
    stack = [(ids[1], 0)]
    while stack:
        node, d = stack.pop()
        if node < n:
            depths[node] = d
        else:
            stack.append((lch[node], d + 1))
            stack.append((rch[node], d + 1))
    return depths


def optimal_depths_dp(freqs) -> list[int]:
    """Interval DP with the monotone split-point window; quadratic time.

    Reference implementation for moderate alphabets; used to cross-check
    the Garsia-Wachs builder.
    """
    n = len(freqs)
    if n == 0:
        raise ValueError("empty alphabet")
    if n == 1:
        return [0]
    w = [int(f) for f in freqs]
    pref = [0]
    for f in w:
        pref.append(pref[-1] + f)
    INF = float("inf")
    cost = [[0] * n for _ in range(n)]
    root = [[0] * n for _ in range(n)]
    for i in range(n):
        root[i][i] = i
    for ln in range(1, n):
        for i in range(n - ln):
            jj = i + ln
            lo = root[i][jj - 1]
            hi = min(root[i + 1][jj] if i + 1 <= jj else jj - 1, jj - 1)
            best = INF
            bk = lo
            for k in range(lo, hi + 1):
                c = cost[i][k] + cost[k + 1][jj]
                if c < best:
                    best = c
                    bk = k
            cost[i][jj] = best + pref[jj + 1] - pref[i]
            root[i][jj] = bk
    depths = [0] * n
    stack = [(0, n - 1, 0)]
    while stack:
        i, jj, d = stack.pop()
        if i == jj:
            depths[i] = d
        else:
            k = root[i][jj]
            stack.append((i, k, d + 1))
            stack.append((k + 1, jj, d + 1))
    return depths


def build_optimal_alphabetic(freqs) -> DepthProfile:
    """Minimum expected-length alphabetic code for positive weights."""
    return DepthProfile(tuple(garsia_wachs(freqs)))


def build_height_restricted(freqs, height_cap: int) -> DepthProfile:
    """Optimal alphabetic code among trees of height <= height_cap.

    Layered interval DP: cost[h][i][j] is the best cost of an ordered tree
    over characters i..j of height <= h. Inner minimization is vectorized
    per diagonal.
    """
    n = len(freqs)
    if n == 0:
        raise ValueError("empty alphabet")
    if n == 1:
        if height_cap < 0:
            raise ValueError("height cap must be >= 0")
        return DepthProfile((0,))
    w = [int(f) for f in freqs]
    if min(w) <= 0:
        raise ValueError("weights must be positive")
    need = (n - 1).bit_length()
    if height_cap < need:
        raise ValueError(f"height cap {height_cap} infeasible for sigma={n}")

    pref = np.concatenate(([0], np.cumsum(np.asarray(w, dtype=np.float64))))
    INF = np.inf
    # diag[m] = cost over intervals of width m (length m+1); layer h implicit
    diag = [np.zeros(n)] + [np.full(n - m, INF) for m in range(1, n)]
    splits: list[list[np.ndarray | None]] = []

    H = min(height_cap, n - 1)  # deeper than n-1 never helps
    for _ in range(H):
        new_diag = [np.zeros(n)]
        layer_splits: list[np.ndarray | None] = [None]
        for ln in range(1, n):
            s = n - ln
            stackrows = [diag[m][:s] + diag[ln - m - 1][m + 1:m + 1 + s]
                         for m in range(ln)]
            mat = np.stack(stackrows)
            bm = np.argmin(mat, axis=0)
            best = mat[bm, np.arange(s)]
            new_diag.append(best + pref[ln + 1:] - pref[:s])
            layer_splits.append(bm.astype(np.int16))
        diag = new_diag
        splits.append(layer_splits)

    if not np.isfinite(diag[n - 1][0]):
        raise ValueError("height-restricted DP found no tree")  # unreachable

    depths = [0] * n
    stack = [(0, n - 1, len(splits), 0)]
    while stack:
        i, jj, h, d = stack.pop()
        if i == jj:
            depths[i] = d
            continue
        m = int(splits[h - 1][jj - i][i])
        stack.append((i, i + m, h - 1, d + 1))
        stack.append((i + m + 1, jj, h - 1, d + 1))
    return DepthProfile(tuple(depths))


# -- cutoff balancing ------------------------------------------------------

def balanced_run_depths(r: int) -> list[int]:
    """Relative depths of a completely balanced subtree with r leaves.

    With h = ceil(lg r): the first 2r - 2^h leaves sit at depth h, the
    remaining 2^h - r at depth h - 1 (deeper leaves leftmost).
    """
    if r < 1:
        raise ValueError("run must contain at least one leaf")
    h = (r - 1).bit_length()
    deep = 2 * r - (1 << h)
    return [h] * deep + [h - 1] * ((1 << h) - r)


def balance_at_cutoff(profile: DepthProfile, cutoff: int) -> DepthProfile:
    """Completely balance every maximal subtree rooted at depth `cutoff`.

    Leaves of depth <= cutoff are untouched; each maximal run of deeper
    leaves sharing a cutoff-bit codeword prefix is replaced by the
    balanced run profile.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    depths = profile.depths
    cws = profile.codewords()
    out: list[int] = []
    i = 0
    sigma = len(depths)
    while i < sigma:
        d = depths[i]
        if d <= cutoff:
            out.append(d)
            i += 1
            continue
        prefix = cws[i][0] >> (d - cutoff)
        j = i + 1
        while j < sigma and depths[j] > cutoff and (cws[j][0] >> (depths[j] - cutoff)) == prefix:
            j += 1
        out.extend(cutoff + rd for rd in balanced_run_depths(j - i))
        i = j
    return DepthProfile(tuple(out))


# -- compiled representation ----------------------------------------------

class CompactAlphabeticCode:
    """Alphabetic code compiled to the B/S/A form.

    encode and decode perform a constant number of rank/select calls plus
    arithmetic on the completely balanced subtrees; no code table of size
    sigma is stored beyond the marker structures.
    """

    def __init__(self, profile: DepthProfile, sigma: int, cutoff: int,
                 height_cap: int, B: Bitvector, s_vals: list[int],
                 s_lens: list[int], a_char: list[int], a_len: list[int]):
        self.sigma = sigma
        self.cutoff = cutoff
        self.height_cap = height_cap
        self.depths = profile.depths
        self.B = B
        self._s_vals = s_vals
        self._s_lens = s_lens
        self._a_char = a_char
        self._a_len = a_len
        self._arrays = None

    # S and A exposed read-only for tests and size accounting
    @property
    def S(self) -> list[tuple[int, int]]:
        return list(zip(self._s_vals, self._s_lens))

    @property
    def A(self) -> list[tuple[str, int, int]]:
        return [("leaf", c, ln) if ln else ("subtree", c, 0)
                for c, ln in zip(self._a_char, self._a_len)]

    def encode(self, i: int) -> tuple[int, int]:
        if not 1 <= i <= self.sigma:
            raise IndexError(f"character out of range: {i}")
        if self.sigma == 1:
            return (0, 0)
        B = self.B
        j = B.rank1(i)
        if B.access(i):
            return (self._s_vals[j - 1], self._s_lens[j - 1])
        ip = B.select1(j)
        ipp = B.select1(j + 1) if j < B.ones else self.sigma + 1
        r = ipp - ip
        h = (r - 1).bit_length()
        off = i - ip
        deep = 2 * r - (1 << h)
        base = self._s_vals[j - 1]
        if off < deep:
            return (base + off, self.cutoff + h)
        return (base // 2 + off - (r - (1 << (h - 1))), self.cutoff + h - 1)

    def decode(self, reader: BitReader) -> tuple[int, int]:
        if self.sigma == 1:
            return (1, 0)
        if reader.remaining == 0:
            raise TruncatedStream("truncated stream")
        j = reader.peek(self.cutoff)
        ln = self._a_len[j]
        if ln:
            try:
                reader.skip(ln)
            except Underflow:
                raise TruncatedStream("truncated stream") from None
            return (self._a_char[j], ln)
        ip = self._a_char[j]
        B = self.B
        rk = B.rank1(ip)
        ipp = B.select1(rk + 1) if rk < B.ones else self.sigma + 1
        r = ipp - ip
        h = (r - 1).bit_length()
        jp = reader.peek(self.cutoff + h)
        d = jp - self._s_vals[rk - 1]
        deep = 2 * r - (1 << h)
        try:
            if d < deep:
                reader.skip(self.cutoff + h)
                return (ip + d, self.cutoff + h)
            reader.skip(self.cutoff + h - 1)
            return (ip + r - (1 << (h - 1)) + d // 2, self.cutoff + h - 1)
        except Underflow:
            raise TruncatedStream("truncated stream") from None

    def codeword_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, lengths) for all characters, cached."""
        if self._arrays is None:
            cws = canonical_codewords(self.depths)
            vals = np.array([v for v, _ in cws], dtype=np.uint64)
            lens = np.array([l for _, l in cws], dtype=np.int64)
            self._arrays = (vals, lens)
        return self._arrays

    def model_size_bits(self) -> int:
        """Accounted size: B with directories, S entries, A entries."""
        if self.sigma == 1:
            return 8
        hbits = max(1, self.height_cap.bit_length())
        s_bits = len(self._s_vals) * (self.height_cap + hbits)
        a_bits = len(self._a_char) * (self.sigma.bit_length() + hbits + 1)
        return self.B.size_bits() + s_bits + a_bits


def compile_code(profile: DepthProfile, sigma: int,
                 select_sample: int = 64) -> CompactAlphabeticCode:
    """Compile a cutoff-balanced profile into the B/S/A representation."""
    if sigma != profile.sigma:
        raise ValueError("sigma does not match the profile")
    if sigma == 1:
        return CompactAlphabeticCode(profile, 1, 0, 0, Bitvector("1", select_sample),
                                     [0], [0], [1], [0])
    cutoff = cutoff_for(sigma)
    cap = height_cap_for(sigma)
    if profile.height > cap:
        raise ValueError(f"profile height {profile.height} exceeds cap {cap}")
    cws = profile.codewords()
    depths = profile.depths

    bbits = np.zeros(sigma, dtype=np.uint8)
    s_vals: list[int] = []
    s_lens: list[int] = []
    a_char = [0] * (1 << cutoff)
    a_len = [0] * (1 << cutoff)
    covered = 0

    i = 0
    while i < sigma:
        v, d = cws[i]
        if d <= cutoff:
            bbits[i] = 1
            s_vals.append(v)
            s_lens.append(d)
            lo = v << (cutoff - d)
            hi = (v + 1) << (cutoff - d)
            for j in range(lo, hi):
                a_char[j] = i + 1
                a_len[j] = d
            covered += hi - lo
            i += 1
            continue
        prefix = v >> (d - cutoff)
        j = i + 1
        while j < sigma and depths[j] > cutoff and (cws[j][0] >> (depths[j] - cutoff)) == prefix:
            j += 1
        r = j - i
        rel = [depths[k] - cutoff for k in range(i, j)]
        if rel != balanced_run_depths(r):
            raise KraftViolation("subtree below the cutoff is not completely balanced")
        bbits[i] = 1
        s_vals.append(v)
        s_lens.append(d)
        a_char[prefix] = i + 1  # leftmost leaf position i' (1-based)
        a_len[prefix] = 0
        covered += 1
        i = j

    if covered != (1 << cutoff):
        raise KraftViolation("dispatch table not fully populated")
    B = Bitvector(bbits, select_sample)
    return CompactAlphabeticCode(profile, sigma, cutoff, cap, B,
                                 s_vals, s_lens, a_char, a_len)


DP_SIGMA_MAX = 320  # largest alphabet routed through the height-restricted DP


def build_alphabetic_code(freqs, select_sample: int = 64,
                          dp_sigma_max: int = DP_SIGMA_MAX) -> CompactAlphabeticCode:
    """Full pipeline: optimal tree, height restriction, cutoff balancing, compile.

    Zero weights are smoothed to 1 so the code covers the whole alphabet.
    When the optimal tree already fits under the height cap it is kept
    (it is then optimal among capped trees as well). Otherwise the DP
    computes the capped optimum up to dp_sigma_max characters; beyond
    that, subtrees rooted at depth ceil(sqrt(lg sigma)) are completely
    balanced, which caps the height at lg sigma + sqrt(lg sigma) + 2.
    """
    freqs = [max(1, int(f)) for f in freqs]
    sigma = len(freqs)
    if sigma == 0:
        raise ValueError("empty alphabet")
    if sigma == 1:
        return compile_code(DepthProfile((0,)), 1, select_sample)
    profile = build_optimal_alphabetic(freqs)
    cap = height_cap_for(sigma)
    if profile.height > cap:
        if sigma <= dp_sigma_max:
            profile = build_height_restricted(freqs, cap)
        else:
            shallow = math.ceil(math.sqrt(math.log2(sigma)))
            profile = balance_at_cutoff(profile, shallow)
        if profile.height > cap:
            raise AssertionError("height restriction failed")  # defensive
    profile = balance_at_cutoff(profile, cutoff_for(sigma))
    return compile_code(profile, sigma, select_sample)
