"""Native-resolution resize planning.

Walks a few input resolutions through scale computation and patch-aligned
resize planning, showing all three branches: shrink, identity, and grow.
"""

from sftokens import AreaThresholds, Resolution, compute_scale, patch_grid, plan_resize

VIDEO_BAND = AreaThresholds(288 * 288, 480 * 480)
PATCH = 16

inputs = [
    Resolution(720, 1280),   # HD frame, above the band: shrinks
    Resolution(400, 400),    # already in band: untouched (modulo patch snap)
    Resolution(200, 200),    # small clip frame: grows toward the band floor
    Resolution(1080, 1920),  # full HD: shrinks harder
    Resolution(150, 300),    # grows, then flooring lands just under the floor
]

print(f"video area band: [{VIDEO_BAND.min_area}, {VIDEO_BAND.max_area}] px^2, patch {PATCH}\n")
print(f"{'input':>12}  {'scale':>8}  {'target':>12}  {'grid':>8}  {'tokens':>6}  below_min")
for res in inputs:
    scale = compute_scale(res, VIDEO_BAND)
    plan = plan_resize(res, VIDEO_BAND, PATCH)
    grid = patch_grid(plan)
    print(
        f"{res.height:>5}x{res.width:<6} {scale:>8.4f}  "
        f"{plan.target.height:>5}x{plan.target.width:<6} "
        f"{grid.rows:>3}x{grid.cols:<4} {grid.tokens:>6}  {plan.below_min}"
    )

# The 480x480 square at the band's top produces the 30x30 grid every
# token-count table in this package is built on.
plan = plan_resize(Resolution(480, 480), VIDEO_BAND, PATCH)
print(f"\nreference frame 480x480 -> grid {patch_grid(plan)} ({patch_grid(plan).tokens} tokens)")
