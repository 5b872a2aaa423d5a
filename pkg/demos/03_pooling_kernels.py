"""Pooling and resampling kernels next to their loop oracles.

Each vectorised kernel has a plain-Python reference implementation; this
script runs both on the same grids and prints the worst disagreement.
"""

import numpy as np

from sftokens import (
    FrameGrid,
    avg_pool_adaptive,
    avg_pool_strided,
    bilinear_resample,
    naive_avg_pool_adaptive,
    naive_avg_pool_strided,
    naive_bilinear_resample,
)

rng = np.random.default_rng(0)

# Strided pooling halves each spatial dimension of the reference 30x30 grid.
grid = FrameGrid(rng.uniform(size=(30, 30, 4)))
pooled = avg_pool_strided(grid, 2, 2)
print(f"strided  : {grid.rows}x{grid.cols} -> {pooled.rows}x{pooled.cols} "
      f"({pooled.rows * pooled.cols} tokens/frame)")
print(f"  mean preserved: {abs(pooled.values.mean() - grid.values.mean()):.2e}")

# Adaptive pooling crushes the same grid to the 4x4 fast target; 30 does not
# divide by 4, so the bins alternate between 7 and 8 rows.
fast = avg_pool_adaptive(grid, 4, 4)
print(f"adaptive : {grid.rows}x{grid.cols} -> {fast.rows}x{fast.cols} "
      f"({fast.rows * fast.cols} tokens/frame)")

# Bilinear resampling rescales a small embedding table; align-corners keeps
# the four corners bit-exact.
emb = FrameGrid(rng.uniform(size=(24, 24, 8)))
resized = bilinear_resample(emb, 30, 30)
corners = [(0, 0), (0, -1), (-1, 0), (-1, -1)]
drift = max(abs(resized.values[r, c, 0] - emb.values[r, c, 0]) for r, c in corners)
print(f"bilinear : 24x24 -> 30x30, corner drift {drift:.2e}")

# Kernel vs oracle on a batch of random shapes.
worst = {"strided": 0.0, "adaptive": 0.0, "bilinear": 0.0}
for _ in range(50):
    g = FrameGrid(rng.uniform(-10, 10, size=(rng.integers(2, 33) * 2,
                                             rng.integers(2, 33) * 2,
                                             rng.integers(1, 5))))
    a = avg_pool_strided(g, 2, 2)
    b = naive_avg_pool_strided(g, 2, 2)
    worst["strided"] = max(worst["strided"], float(np.max(np.abs(a.values - b.values))))
    a = avg_pool_adaptive(g, 4, 4)
    b = naive_avg_pool_adaptive(g, 4, 4)
    worst["adaptive"] = max(worst["adaptive"], float(np.max(np.abs(a.values - b.values))))
    a = bilinear_resample(g, 17, 23)
    b = naive_bilinear_resample(g, 17, 23)
    worst["bilinear"] = max(worst["bilinear"], float(np.max(np.abs(a.values - b.values))))

print("\nworst kernel-vs-oracle disagreement over 50 random grids:")
for name, err in worst.items():
    print(f"  {name:<9} {err:.3e}")
