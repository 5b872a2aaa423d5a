"""Frame sampling: fixed-rate mode and the uniform fallback.

Short clips sample at the target rate; once the rate-mode frame count
would exceed the cap, the planner switches to exactly max_frames evenly
spaced bin centers.
"""

from sftokens import sample_frames

print(f"{'duration':>10}  {'mode':>18}  {'frames':>6}  first / last timestamps")
for duration in (0.5, 30.0, 127.0, 128.0, 129.0, 600.0, 3600.0):
    plan = sample_frames(duration, target_fps=1.0, max_frames=128)
    ts = plan.timestamps
    print(
        f"{duration:>9.1f}s  {plan.mode:>18}  {len(ts):>6}  "
        f"{ts[0]:.3f}s / {ts[-1]:.3f}s"
    )

# A ten-minute and a one-hour video both hit the 128-frame cap; only the
# spacing between timestamps tells them apart.
ten_min = sample_frames(600.0)
one_hour = sample_frames(3600.0)
print(f"\n10 min spacing: {ten_min.timestamps[1] - ten_min.timestamps[0]:.3f}s")
print(f"60 min spacing: {one_hour.timestamps[1] - one_hour.timestamps[0]:.3f}s")
