"""
How stable is S across data blocks?
===================================

A long recording at the optimal angle is cut into contiguous blocks of
10**5 events; S is computed per block and the spread gives an error bar.
Blocks shorter than 10**5 bits are refused because compressor overhead has
not settled there.
"""

from ncdbell.pipeline import InsufficientData, block_statistics, simulate_quadrangle

runs = simulate_quadrangle(8.6, 2 * 10**6, seed=42)
stats, values = block_statistics(runs, bits_per_file=10**5)
print(f"{stats.file_count} blocks of {stats.bits_per_file} events")
print(f"S = {stats.mean_S:.4f} +- {stats.std_S:.4f}")
print("per block:", " ".join(f"{v:.3f}" for v in values))

try:
    block_statistics(runs, bits_per_file=10**4)
except InsufficientData as exc:
    print("refused:", exc)
