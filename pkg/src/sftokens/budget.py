"""Token accounting and context-length validation.

Counts the visual tokens a pathway configuration produces on a given patch
grid, reports whether they fit the stage's context window next to a text
allowance, and validates whole stage configurations. Reported thousands
round down and exclude separator tokens.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import InvalidOutputShape, NonDivisibleStride
from .geometry import AreaThresholds, PatchGrid, Resolution, patch_grid, plan_resize
from .projector import DEFAULT_VIDEO_CONFIG, Arrangement, PathwayConfig

DEFAULT_TEXT_ALLOWANCE = 512

STAGE_ONE = "I"
STAGE_TWO = "II"

SWEEP_CSV_HEADER = (
    "n_slow,n_fast,n_total,arrangement,content_tokens,separators,rounded_k,fits_context"
)


@dataclass(frozen=True)
class StageConfig:
    """Training-stage limits: context window, image band, optional video band."""

    stage: str
    context_length: int
    min_image_area: int
    max_image_area: int
    base_image_side: int
    video_min_area: int | None = None
    video_max_area: int | None = None
    max_frames: int | None = None
    patch: int = 16

    def __post_init__(self) -> None:
        if self.stage not in (STAGE_ONE, STAGE_TWO):
            raise ValueError(f"stage must be {STAGE_ONE!r} or {STAGE_TWO!r}, got {self.stage!r}")
        if self.context_length < 1:
            raise ValueError("context_length must be positive")
        if self.patch < 1:
            raise ValueError("patch must be positive")
        if self.base_image_side < self.patch or self.base_image_side % self.patch:
            raise ValueError(
                f"base_image_side {self.base_image_side} must be a positive multiple of "
                f"patch {self.patch}"
            )

    @property
    def has_video(self) -> bool:
        return self.video_min_area is not None and self.video_max_area is not None

    def image_thresholds(self) -> AreaThresholds:
        return AreaThresholds(self.min_image_area, self.max_image_area)

    def video_thresholds(self) -> AreaThresholds:
        if not self.has_video:
            raise ValueError(f"stage {self.stage} has no video thresholds")
        return AreaThresholds(self.video_min_area, self.video_max_area)


def stage_one_defaults() -> StageConfig:
    """Image-only warmup stage: 8K context, 1280-squared image cap."""
    return StageConfig(
        stage=STAGE_ONE,
        context_length=8192,
        min_image_area=0,
        max_image_area=1280 * 1280,
        base_image_side=384,
        patch=16,
    )


def stage_two_defaults() -> StageConfig:
    """Joint image and video stage: 16K context, 480-squared video cap."""
    return StageConfig(
        stage=STAGE_TWO,
        context_length=16384,
        min_image_area=0,
        max_image_area=1536 * 1536,
        base_image_side=384,
        video_min_area=288 * 288,
        video_max_area=480 * 480,
        max_frames=128,
        patch=16,
    )


@dataclass(frozen=True)
class BudgetReport:
    """Token counts for one input plus the context-fit verdict.

    ``total_tokens`` includes separators; ``rounded_k`` floors the content
    count (separators excluded) to thousands.
    """

    slow_tokens: int
    fast_tokens: int
    separator_tokens: int
    total_tokens: int
    rounded_k: int
    fits_context: bool
    text_allowance: int

    @property
    def content_tokens(self) -> int:
        return self.slow_tokens + self.fast_tokens

    @property
    def rounded_label(self) -> str:
        return f"{self.rounded_k}K"

    def to_json_dict(self) -> dict:
        return {
            "slow_tokens": self.slow_tokens,
            "fast_tokens": self.fast_tokens,
            "separator_tokens": self.separator_tokens,
            "content_tokens": self.content_tokens,
            "total_tokens": self.total_tokens,
            "rounded_k": self.rounded_k,
            "fits_context": self.fits_context,
            "text_allowance": self.text_allowance,
        }


def _report(
    slow: int, fast: int, separators: int, context_length: int, text_allowance: int
) -> BudgetReport:
    total = slow + fast + separators
    return BudgetReport(
        slow_tokens=slow,
        fast_tokens=fast,
        separator_tokens=separators,
        total_tokens=total,
        rounded_k=(slow + fast) // 1000,
        fits_context=total + text_allowance <= context_length,
        text_allowance=text_allowance,
    )


def slow_tokens_per_frame(cfg: PathwayConfig, grid: PatchGrid) -> int:
    """Tokens one slow frame yields after strided pooling."""
    if grid.rows % cfg.stride_h or grid.cols % cfg.stride_w:
        raise NonDivisibleStride(
            f"strides {cfg.stride_h}x{cfg.stride_w} do not divide grid {grid.rows}x{grid.cols}"
        )
    return (grid.rows // cfg.stride_h) * (grid.cols // cfg.stride_w)


def video_budget(
    cfg: PathwayConfig,
    grid: PatchGrid,
    stage: StageConfig,
    text_allowance: int = DEFAULT_TEXT_ALLOWANCE,
) -> BudgetReport:
    """Count the tokens a video produces under ``cfg`` on per-frame ``grid``.

    Separator count follows the arrangement: one for the grouped layout,
    one per frame for the interleaved layout. A budget that does not fit
    the context window is reported, not raised.
    """
    if cfg.n_fast > 0 and (cfg.fast_rows > grid.rows or cfg.fast_cols > grid.cols):
        raise InvalidOutputShape(
            f"fast grid {cfg.fast_rows}x{cfg.fast_cols} exceeds frame grid "
            f"{grid.rows}x{grid.cols}"
        )
    slow = cfg.n_slow * slow_tokens_per_frame(cfg, grid) if cfg.n_slow else 0
    fast = cfg.n_fast * cfg.fast_tokens_per_frame
    separators = 1 if cfg.arrangement is Arrangement.GSF else cfg.n_total
    return _report(slow, fast, separators, stage.context_length, text_allowance)


def image_budget(
    res: Resolution, stage: StageConfig, text_allowance: int = DEFAULT_TEXT_ALLOWANCE
) -> BudgetReport:
    """Count the tokens one image produces: fixed low-res plus planned high-res.

    The low-res overview resized to the square base side is tallied as the
    fast side of the report, the high-res native-aspect pass as the slow
    side; images use no separators.
    """
    low = (stage.base_image_side // stage.patch) ** 2
    plan = plan_resize(res, stage.image_thresholds(), stage.patch)
    high = patch_grid(plan).tokens
    return _report(high, low, 0, stage.context_length, text_allowance)


def sweep(
    configs: Sequence[PathwayConfig],
    grid: PatchGrid,
    stage: StageConfig,
    text_allowance: int = DEFAULT_TEXT_ALLOWANCE,
) -> list[BudgetReport]:
    """One video budget per config, in input order."""
    if not configs:
        raise ValueError("sweep needs at least one config")
    return [video_budget(cfg, grid, stage, text_allowance) for cfg in configs]


def sweep_csv(configs: Sequence[PathwayConfig], reports: Sequence[BudgetReport]) -> str:
    """Render sweep results as CSV, one row per config."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER.split(","))
    for cfg, rep in zip(configs, reports):
        writer.writerow(
            [
                cfg.n_slow,
                cfg.n_fast,
                cfg.n_total,
                cfg.arrangement.value,
                rep.content_tokens,
                rep.separator_tokens,
                rep.rounded_label,
                "true" if rep.fits_context else "false",
            ]
        )
    return buf.getvalue()


def stage_video_grid(stage: StageConfig) -> PatchGrid:
    """Per-frame patch grid for a square frame at the stage's max video area."""
    side = math.isqrt(stage.video_max_area)
    plan = plan_resize(Resolution(side, side), stage.video_thresholds(), stage.patch)
    return patch_grid(plan)


def default_pathway_for_stage(stage: StageConfig) -> PathwayConfig:
    """Deployment-default pathway sized to the stage's frame cap."""
    n_total = stage.max_frames or DEFAULT_VIDEO_CONFIG.n_total
    return replace(DEFAULT_VIDEO_CONFIG, n_total=n_total, n_slow=min(32, n_total))


def validate_stage(
    stage: StageConfig,
    pathway: PathwayConfig | None = None,
    text_allowance: int = DEFAULT_TEXT_ALLOWANCE,
) -> list[str]:
    """Check a stage configuration for inconsistencies.

    Returns human-readable findings; an empty list means the configuration
    is coherent. Video findings are evaluated against ``pathway`` (the
    stage-sized default when omitted) at the stage's max-area frame grid.
    """
    findings: list[str] = []

    if stage.min_image_area >= stage.max_image_area:
        findings.append(
            f"image area thresholds inverted: [{stage.min_image_area}, {stage.max_image_area}]"
        )

    has_video_field = (
        stage.video_min_area is not None
        or stage.video_max_area is not None
        or stage.max_frames is not None
    )
    if stage.stage == STAGE_ONE and has_video_field:
        findings.append("stage I is image-only but has video fields set")
        return findings

    if stage.min_image_area < stage.max_image_area:
        side = math.isqrt(stage.max_image_area) // stage.patch * stage.patch
        if side >= stage.patch:
            image_rep = image_budget(Resolution(side, side), stage, text_allowance)
            if not image_rep.fits_context:
                findings.append(
                    f"worst-case image tokens {image_rep.total_tokens} + allowance "
                    f"{text_allowance} exceed context {stage.context_length}"
                )

    if has_video_field:
        if not stage.has_video:
            findings.append("video stage needs both video_min_area and video_max_area")
            return findings
        if stage.video_min_area >= stage.video_max_area:
            findings.append(
                f"video area thresholds inverted: [{stage.video_min_area}, {stage.video_max_area}]"
            )
            return findings
        if stage.max_frames is None:
            findings.append("video stage needs max_frames")
            return findings

        cfg = pathway or default_pathway_for_stage(stage)
        if cfg.n_total > stage.max_frames:
            findings.append(
                f"pathway wants {cfg.n_total} frames but the stage samples at most "
                f"{stage.max_frames}"
            )
        grid = stage_video_grid(stage)
        try:
            report = video_budget(cfg, grid, stage, text_allowance)
        except (NonDivisibleStride, InvalidOutputShape) as exc:
            findings.append(f"pathway does not fit the stage frame grid: {exc}")
            return findings
        if not report.fits_context:
            findings.append(
                f"video tokens {report.total_tokens} + allowance {text_allowance} "
                f"exceed context {stage.context_length}"
            )
        if cfg.n_slow and cfg.n_fast:
            slow_area = slow_tokens_per_frame(cfg, grid)
            if cfg.fast_tokens_per_frame >= slow_area:
                findings.append(
                    f"fast grid ({cfg.fast_tokens_per_frame} tokens/frame) is not coarser "
                    f"than the pooled slow grid ({slow_area} tokens/frame)"
                )
    return findings
