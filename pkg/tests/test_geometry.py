"""Resize planning and frame sampling."""

import math

import numpy as np
import pytest

from sftokens import (
    AreaThresholds,
    DegenerateResize,
    InvalidDuration,
    PatchGrid,
    Resolution,
    ResizePlan,
    compute_scale,
    patch_grid,
    plan_resize,
    sample_frames,
)

VIDEO_BAND = AreaThresholds(288 * 288, 480 * 480)


class TestTypes:
    def test_resolution_rejects_non_positive(self):
        with pytest.raises(ValueError):
            Resolution(0, 10)
        with pytest.raises(ValueError):
            Resolution(10, -1)

    def test_thresholds_ordering(self):
        with pytest.raises(ValueError):
            AreaThresholds(100, 100)
        with pytest.raises(ValueError):
            AreaThresholds(-1, 100)
        assert AreaThresholds(0, 1).min_area == 0

    def test_resize_plan_requires_patch_multiples(self):
        with pytest.raises(ValueError):
            ResizePlan(scale=1.0, target=Resolution(30, 32), patch=16)

    def test_patch_grid_tokens(self):
        assert PatchGrid(30, 30).tokens == 900


class TestComputeScale:
    def test_shrink_branch(self):
        # 921600 > 230400, sqrt(230400 / 921600) = 0.5
        assert compute_scale(Resolution(720, 1280), VIDEO_BAND) == 0.5

    def test_in_range_is_identity(self):
        assert compute_scale(Resolution(400, 400), VIDEO_BAND) == 1.0

    def test_grow_branch(self):
        # 40000 < 82944, sqrt(82944 / 40000) = 1.44
        assert compute_scale(Resolution(200, 200), VIDEO_BAND) == pytest.approx(1.44, rel=1e-12)

    def test_boundary_areas_are_in_range(self):
        assert compute_scale(Resolution(480, 480), VIDEO_BAND) == 1.0
        assert compute_scale(Resolution(288, 288), VIDEO_BAND) == 1.0


class TestPlanResize:
    def test_shrink_example(self):
        plan = plan_resize(Resolution(720, 1280), VIDEO_BAND, 16)
        assert (plan.target.height, plan.target.width) == (352, 640)
        assert plan.scale == 0.5
        assert not plan.below_min

    def test_identity_example(self):
        plan = plan_resize(Resolution(400, 400), VIDEO_BAND, 16)
        assert (plan.target.height, plan.target.width) == (400, 400)

    def test_grow_example(self):
        plan = plan_resize(Resolution(200, 200), VIDEO_BAND, 16)
        assert (plan.target.height, plan.target.width) == (288, 288)
        assert not plan.below_min

    def test_grow_can_land_below_min(self):
        # 150x300 grows toward 82944 px^2 but floors to 192x400 = 76800.
        plan = plan_resize(Resolution(150, 300), VIDEO_BAND, 16)
        assert (plan.target.height, plan.target.width) == (192, 400)
        assert plan.below_min

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateResize):
            plan_resize(Resolution(8, 4096), VIDEO_BAND, 16)

    def test_exact_floor_at_integer_boundary(self):
        # Real-valued 2827 * sqrt(230400 / 2827^2) is exactly 480; a float
        # evaluation rounds just below and floors to 464.
        plan = plan_resize(Resolution(2827, 2827), VIDEO_BAND, 16)
        assert (plan.target.height, plan.target.width) == (480, 480)


class TestPatchGrid:
    def test_table_grid(self):
        plan = plan_resize(Resolution(480, 480), VIDEO_BAND, 16)
        assert patch_grid(plan) == PatchGrid(30, 30)

    def test_rectangular(self):
        plan = plan_resize(Resolution(720, 1280), VIDEO_BAND, 16)
        assert patch_grid(plan) == PatchGrid(22, 40)

    def test_single_patch(self):
        plan = plan_resize(Resolution(16, 16), AreaThresholds(0, 480 * 480), 16)
        assert patch_grid(plan) == PatchGrid(1, 1)


class TestSampleFrames:
    def test_fps_mode(self):
        plan = sample_frames(60.0, 1.0, 128)
        assert plan.mode == "fps"
        assert plan.timestamps == tuple(float(k) for k in range(60))

    def test_uniform_fallback(self):
        plan = sample_frames(600.0, 1.0, 128)
        assert plan.mode == "uniform-fallback"
        assert len(plan.timestamps) == 128
        spacing = np.diff(plan.timestamps)
        assert np.allclose(spacing, 600.0 / 128)
        assert plan.timestamps[0] == pytest.approx(0.5 * 600.0 / 128)

    def test_short_clip_yields_one_frame(self):
        plan = sample_frames(0.5, 1.0, 128)
        assert plan.mode == "fps"
        assert plan.timestamps == (0.0,)

    def test_exact_cap_stays_in_fps_mode(self):
        plan = sample_frames(128.0, 1.0, 128)
        assert plan.mode == "fps"
        assert len(plan.timestamps) == 128

    def test_invalid_duration(self):
        with pytest.raises(InvalidDuration):
            sample_frames(0.0)
        with pytest.raises(InvalidDuration):
            sample_frames(-3.0)

    def test_invalid_rate_and_cap(self):
        with pytest.raises(ValueError):
            sample_frames(10.0, target_fps=0.0)
        with pytest.raises(ValueError):
            sample_frames(10.0, max_frames=0)


class TestResizeProperties:
    """Randomized invariants; the acceptance suite runs the larger sweeps."""

    def test_invariants_hold_on_random_resolutions(self):
        rng = np.random.default_rng(20240601)
        for _ in range(2000):
            res = Resolution(int(rng.integers(1, 4097)), int(rng.integers(1, 4097)))
            patch = int(rng.choice([1, 2, 8, 14, 16, 32]))
            try:
                plan = plan_resize(res, VIDEO_BAND, patch)
            except DegenerateResize:
                continue
            th, tw = plan.target.height, plan.target.width
            assert th % patch == 0 and tw % patch == 0
            if res.area > VIDEO_BAND.max_area:
                assert th * tw <= VIDEO_BAND.max_area
            # Flooring only shrinks, so the band's top is never exceeded.
            assert th * tw <= VIDEO_BAND.max_area
            # Aspect drift, relative to the source ratio.
            drift = abs((th / tw) / (res.height / res.width) - 1.0)
            assert drift <= patch * (1.0 / tw + 1.0 / th)

    def test_scale_recomputation_idempotent_in_band(self):
        rng = np.random.default_rng(7)
        for _ in range(2000):
            res = Resolution(int(rng.integers(1, 4097)), int(rng.integers(1, 4097)))
            try:
                plan = plan_resize(res, VIDEO_BAND, 16)
            except DegenerateResize:
                continue
            if VIDEO_BAND.min_area <= plan.target.area <= VIDEO_BAND.max_area:
                assert compute_scale(plan.target, VIDEO_BAND) == 1.0


class TestSamplingProperties:
    def test_count_and_monotonicity(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            duration = float(rng.uniform(1e-3, 1e4))
            fps = float(rng.choice([0.5, 1.0, 2.0, 30.0]))
            cap = int(rng.integers(1, 257))
            plan = sample_frames(duration, fps, cap)
            fps_count = math.ceil(duration * fps)
            assert len(plan.timestamps) == min(fps_count, cap)
            assert (plan.mode == "uniform-fallback") == (fps_count > cap)
            ts = np.array(plan.timestamps)
            assert (ts >= 0).all() and (ts < duration).all()
            assert (np.diff(ts) > 0).all()
