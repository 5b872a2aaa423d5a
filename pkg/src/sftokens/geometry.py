"""Frame sampling and native-resolution resize planning.

Pure arithmetic only: nothing here touches pixels. Given an input
resolution and a pair of area thresholds, the planner picks a scale factor
that keeps the resized area inside the threshold band, then snaps both
target dimensions down to multiples of the encoder patch size. Frame
sampling emits fixed-rate timestamps and falls back to uniform spacing when
a clip is too long for the frame cap.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateResize, InvalidDuration

FPS_MODE = "fps"
UNIFORM_FALLBACK_MODE = "uniform-fallback"


@dataclass(frozen=True)
class Resolution:
    """A pixel resolution, height by width.

    Attributes:
        height: Pixel height, at least 1.
        width: Pixel width, at least 1.
    """

    height: int
    width: int

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise ValueError(f"resolution must be positive, got {self.height}x{self.width}")

    @property
    def area(self) -> int:
        return self.height * self.width


@dataclass(frozen=True)
class AreaThresholds:
    """Area band a resized input must land in.

    Attributes:
        min_area: Lower bound in pixels squared, non-negative.
        max_area: Upper bound in pixels squared, strictly greater than min_area.
    """

    min_area: int
    max_area: int

    def __post_init__(self) -> None:
        if self.min_area < 0:
            raise ValueError(f"min_area must be non-negative, got {self.min_area}")
        if self.min_area >= self.max_area:
            raise ValueError(
                f"min_area must be below max_area, got [{self.min_area}, {self.max_area}]"
            )


@dataclass(frozen=True)
class ResizePlan:
    """Planned resize for one input: scale factor and patch-aligned target.

    The stored scale is the real-valued factor; the target dimensions are
    derived in exact integer arithmetic, so they are immune to the float
    rounding that can push ``height * scale`` just below an integer.

    Attributes:
        scale: Positive resize factor applied to both dimensions.
        target: Target resolution; both dimensions are multiples of patch.
        patch: Patch size the target is aligned to.
        below_min: True when flooring left the target area under the lower
            area threshold (possible after the upscale branch); diagnostic only.
    """

    scale: float
    target: Resolution
    patch: int
    below_min: bool = False

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.patch < 1:
            raise ValueError(f"patch must be positive, got {self.patch}")
        if self.target.height % self.patch or self.target.width % self.patch:
            raise ValueError(
                f"target {self.target.height}x{self.target.width} is not a multiple of "
                f"patch {self.patch}"
            )


@dataclass(frozen=True)
class PatchGrid:
    """The rows-by-columns lattice of visual tokens one frame yields."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid must be positive, got {self.rows}x{self.cols}")

    @property
    def tokens(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class SamplingPlan:
    """Planned frame timestamps for one clip.

    Attributes:
        mode: ``"fps"`` for fixed-rate sampling, ``"uniform-fallback"`` when
            the fixed-rate count would exceed the frame cap.
        timestamps: Strictly increasing times in seconds, all inside
            ``[0, source_duration)``.
        source_duration: Clip duration in seconds.
        target_fps: Requested sampling rate.
        max_frames: Frame cap that triggers the fallback.
    """

    mode: str
    timestamps: tuple[float, ...]
    source_duration: float
    target_fps: float
    max_frames: int

    def __post_init__(self) -> None:
        if self.mode not in (FPS_MODE, UNIFORM_FALLBACK_MODE):
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if len(self.timestamps) > self.max_frames:
            raise ValueError("sampling plan exceeds max_frames")
        prev = -math.inf
        for t in self.timestamps:
            if not 0.0 <= t < self.source_duration:
                raise ValueError(f"timestamp {t} outside [0, {self.source_duration})")
            if t <= prev:
                raise ValueError("timestamps must be strictly increasing")
            prev = t
        fps_count = math.ceil(self.source_duration * self.target_fps)
        if (self.mode == UNIFORM_FALLBACK_MODE) != (fps_count > self.max_frames):
            raise ValueError("mode inconsistent with fps-mode frame count")


def compute_scale(res: Resolution, thresholds: AreaThresholds) -> float:
    """Return the resize factor that brings ``res`` into the area band.

    Shrinks when the area exceeds ``max_area``, grows when it is under
    ``min_area``, and returns 1.0 when the area is already in range. The
    factor equalises the area with the violated threshold, so it is
    ``sqrt(threshold / area)`` on both non-trivial branches.

    Args:
        res: Input resolution.
        thresholds: Area band to land in.

    Returns:
        The positive scale factor.
    """
    area = res.area
    if area > thresholds.max_area:
        return math.sqrt(thresholds.max_area / area)
    if area < thresholds.min_area:
        return math.sqrt(thresholds.min_area / area)
    return 1.0


def _scaled_floor_multiple(dim: int, numerator: int, area: int, patch: int) -> int:
    # floor(dim * sqrt(numerator / area) / patch) * patch without float error:
    # floor of a real square root equals isqrt of the floored radicand.
    return math.isqrt(dim * dim * numerator // area) // patch * patch


def plan_resize(res: Resolution, thresholds: AreaThresholds, patch: int) -> ResizePlan:
    """Plan the patch-aligned resize of ``res`` into the area band.

    Both target dimensions are ``floor(dim * scale / patch) * patch``,
    evaluated exactly. Flooring only shrinks, so a shrunk target never
    exceeds ``max_area``; after the upscale branch it may land slightly
    under ``min_area``, which is reported via ``below_min``.

    Args:
        res: Input resolution.
        thresholds: Area band to land in.
        patch: Encoder patch size, at least 1.

    Returns:
        The resize plan.

    Raises:
        DegenerateResize: If flooring yields zero rows or columns, i.e. the
            input is too small relative to the patch size.
    """
    if patch < 1:
        raise ValueError(f"patch must be positive, got {patch}")
    area = res.area
    if area > thresholds.max_area:
        numerator = thresholds.max_area
    elif area < thresholds.min_area:
        numerator = thresholds.min_area
    else:
        numerator = None

    if numerator is None:
        target_h = res.height // patch * patch
        target_w = res.width // patch * patch
    else:
        target_h = _scaled_floor_multiple(res.height, numerator, area, patch)
        target_w = _scaled_floor_multiple(res.width, numerator, area, patch)

    if target_h == 0 or target_w == 0:
        raise DegenerateResize(
            f"{res.height}x{res.width} with patch {patch} floors to "
            f"{target_h}x{target_w}; input too small"
        )
    below_min = target_h * target_w < thresholds.min_area
    return ResizePlan(
        scale=compute_scale(res, thresholds),
        target=Resolution(target_h, target_w),
        patch=patch,
        below_min=below_min,
    )


def patch_grid(plan: ResizePlan) -> PatchGrid:
    """Return the token grid a planned resize produces (exact division)."""
    return PatchGrid(plan.target.height // plan.patch, plan.target.width // plan.patch)


def sample_frames(duration: float, target_fps: float = 1.0, max_frames: int = 128) -> SamplingPlan:
    """Plan frame timestamps for a clip of ``duration`` seconds.

    Fixed-rate mode emits ``k / target_fps`` for ``k = 0 .. ceil(duration *
    target_fps) - 1``; a fractional tail still yields a frame, so even a
    very short clip produces one timestamp. When that count would exceed
    ``max_frames``, the plan falls back to exactly ``max_frames`` bin-center
    timestamps ``(i + 0.5) * duration / max_frames``.

    Args:
        duration: Clip length in seconds, strictly positive.
        target_fps: Sampling rate in frames per second, strictly positive.
        max_frames: Frame cap, at least 1.

    Returns:
        The sampling plan.

    Raises:
        InvalidDuration: If ``duration`` is not strictly positive.
    """
    if duration <= 0:
        raise InvalidDuration(f"duration must be positive, got {duration}")
    if target_fps <= 0:
        raise ValueError(f"target_fps must be positive, got {target_fps}")
    if max_frames < 1:
        raise ValueError(f"max_frames must be at least 1, got {max_frames}")

    fps_count = math.ceil(duration * target_fps)
    if fps_count > max_frames:
        step = duration / max_frames
        timestamps = tuple((i + 0.5) * step for i in range(max_frames))
        mode = UNIFORM_FALLBACK_MODE
    else:
        timestamps = tuple(
            t for t in (k / target_fps for k in range(fps_count)) if t < duration
        )
        mode = FPS_MODE
    return SamplingPlan(
        mode=mode,
        timestamps=timestamps,
        source_duration=float(duration),
        target_fps=float(target_fps),
        max_frames=max_frames,
    )
