#!/usr/bin/env python3
"""Whole-file throughput check: encode + decode a large synthetic corpus
with every codec through the bulk sequence paths and report wall times.

    python scripts/throughput_smoke.py [--n 10000000] [--sigma 4096]
"""

import argparse
import sys
import time

import numpy as np

from ncpc.alphabetic import build_alphabetic_code
from ncpc.corpus import gen_zipf
from ncpc.revcanon import RevCanonCode, huffman_lengths
from ncpc.stream import SequenceCodec
from ncpc.table_codec import TableCode


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10_000_000)
    ap.add_argument("--sigma", type=int, default=4096)
    ap.add_argument("--skew", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    seq = gen_zipf(args.n, args.sigma, args.skew, args.seed)
    freqs = seq.smoothed_freqs()
    lengths = huffman_lengths(freqs)
    codes = {
        "wmm": RevCanonCode(lengths),
        "table": TableCode.from_code(RevCanonCode(lengths)),
        "alpha": build_alphabetic_code(freqs),
    }
    total = 0.0
    for name, code in codes.items():
        sc = SequenceCodec.for_code(code)
        t0 = time.monotonic()
        data, nbits = sc.encode(seq.symbols)
        t_enc = time.monotonic() - t0
        t0 = time.monotonic()
        back = sc.decode(data, seq.n, nbits)
        t_dec = time.monotonic() - t0
        assert np.array_equal(back, seq.symbols)
        total += t_enc + t_dec
        print(f"{name:6s} encode {t_enc:6.2f}s  decode {t_dec:6.2f}s  "
              f"payload {nbits / seq.n:.2f} bits/sym")
    print(f"total  {total:6.2f}s for {args.n} symbols x {len(codes)} codecs")
    return 0


if __name__ == "__main__":
    sys.exit(main())
