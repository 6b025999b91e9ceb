"""
How far is each compressor from the Shannon limit?
==================================================

Compressed size is our stand-in for complexity, so a codec that wastes bits
distorts every distance computed from it. The overhead Q = (C(x) - H(x)) / l(x)
measures that waste on sources whose entropy we know exactly.
"""

from ncdbell.pipeline import bench_correlation, bench_lengths

# balanced random strings: H(x) = l(x), so any excess is pure overhead
rows = bench_lengths([10**3, 10**4, 10**5, 10**6], repeats=1, seed=0)
print("length      lzma     bzip2    deflate  lzw")
for n in sorted({r.length for r in rows}):
    q = {r.backend: r.overhead for r in rows if r.length == n}
    print(f"{n:>8d}  {q['lzma']:8.4f} {q['bzip2']:8.4f} {q['deflate']:8.4f} {q['lzw']:8.4f}")

# lzw never gets close: it settles near 0.37 for long strings
# (try bench_lengths([10**7], ("lzw",)) -- it takes a few seconds)

# correlated pairs, interleaved bit by bit: H = n (1 + h(p))
print("\n p     lzma Q   bzip2 Q  deflate Q   lzma C/2n")
rows = bench_correlation([0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5], 10**6, seed=1)
for p in sorted({r.p for r in rows}):
    q = {r.backend: r for r in rows if r.p == p}
    print(f"{p:4.2f}  {q['lzma'].overhead:8.4f} {q['bzip2'].overhead:8.4f} {q['deflate'].overhead:8.4f}"
          f"   {q['lzma'].compressed_bits / q['lzma'].length:8.4f}")
