"""Two-rate video token planning.

Plans how a video or image becomes visual tokens: fixed-rate frame
sampling with a uniform fallback, patch-aligned native-resolution resizes,
slow/fast pooling of per-frame feature grids, token arrangement with
separators, and context-window budget reports.
"""

from .budget import (
    DEFAULT_TEXT_ALLOWANCE,
    BudgetReport,
    StageConfig,
    default_pathway_for_stage,
    image_budget,
    stage_one_defaults,
    stage_two_defaults,
    stage_video_grid,
    sweep,
    sweep_csv,
    validate_stage,
    video_budget,
)
from .errors import (
    ConfigError,
    DegenerateResize,
    InvalidCount,
    InvalidDuration,
    InvalidOutputShape,
    NonDivisibleStride,
    PartitionViolation,
)
from .geometry import (
    AreaThresholds,
    PatchGrid,
    Resolution,
    ResizePlan,
    SamplingPlan,
    compute_scale,
    patch_grid,
    plan_resize,
    sample_frames,
)
from .kernels import (
    FrameGrid,
    avg_pool_adaptive,
    avg_pool_strided,
    bilinear_resample,
    naive_avg_pool_adaptive,
    naive_avg_pool_strided,
    naive_bilinear_resample,
    synth_features,
)
from .projector import (
    DEFAULT_VIDEO_CONFIG,
    Arrangement,
    PathwayConfig,
    TokenRecord,
    TokenSequence,
    arrange_gsf,
    arrange_isf,
    fast_frame_indices,
    project_video,
    run_fast_pathway,
    run_slow_pathway,
    select_slow_frames,
    slow_frame_indices,
)

__version__ = "0.1.0"

__all__ = [
    "AreaThresholds",
    "Arrangement",
    "BudgetReport",
    "ConfigError",
    "DEFAULT_TEXT_ALLOWANCE",
    "DEFAULT_VIDEO_CONFIG",
    "DegenerateResize",
    "FrameGrid",
    "InvalidCount",
    "InvalidDuration",
    "InvalidOutputShape",
    "NonDivisibleStride",
    "PartitionViolation",
    "PatchGrid",
    "PathwayConfig",
    "Resolution",
    "ResizePlan",
    "SamplingPlan",
    "StageConfig",
    "TokenRecord",
    "TokenSequence",
    "arrange_gsf",
    "arrange_isf",
    "avg_pool_adaptive",
    "avg_pool_strided",
    "bilinear_resample",
    "compute_scale",
    "default_pathway_for_stage",
    "fast_frame_indices",
    "image_budget",
    "naive_avg_pool_adaptive",
    "naive_avg_pool_strided",
    "naive_bilinear_resample",
    "patch_grid",
    "plan_resize",
    "project_video",
    "run_fast_pathway",
    "run_slow_pathway",
    "sample_frames",
    "select_slow_frames",
    "slow_frame_indices",
    "stage_one_defaults",
    "stage_two_defaults",
    "stage_video_grid",
    "sweep",
    "sweep_csv",
    "synth_features",
    "validate_stage",
    "video_budget",
]
