"""Two-stream token projector: slow/fast pooling and token arrangement.

The slow stream keeps a uniform subset of frames at high spatial detail
(light strided pooling); the fast stream covers frames at full rate but
pooled down to a small fixed grid. The pooled grids are then flattened into
a single token sequence in one of two orders:

* grouped: every slow token, one separator, then every fast token;
* interleaved: frames in temporal order, each frame slow or fast, with one
  separator closing each frame. In this arrangement the fast stream covers
  exactly the frames the slow stream skipped.

Sequences are plain values; identical inputs always produce identical
sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import InvalidCount, PartitionViolation
from .kernels import FrameGrid, avg_pool_adaptive, avg_pool_strided

CONTENT = "content"
SEPARATOR = "separator"
SLOW = "slow"
FAST = "fast"


class Arrangement(str, Enum):
    """Token ordering of the combined sequence."""

    GSF = "GSF"
    ISF = "ISF"


@dataclass(frozen=True)
class PathwayConfig:
    """Shape of the two-stream projector.

    Attributes:
        n_total: Total sampled frames.
        n_slow: Frames kept by the slow stream (0 disables it).
        stride_h, stride_w: Slow-stream pooling strides.
        fast_rows, fast_cols: Fast-stream target grid.
        arrangement: Token ordering; also fixes the fast frame count:
            GSF runs the fast stream over all frames, ISF over the
            complement of the slow selection.
    """

    n_total: int
    n_slow: int
    stride_h: int = 2
    stride_w: int = 2
    fast_rows: int = 4
    fast_cols: int = 4
    arrangement: Arrangement = Arrangement.GSF

    def __post_init__(self) -> None:
        if self.n_total < 1:
            raise ValueError(f"n_total must be positive, got {self.n_total}")
        if not 0 <= self.n_slow <= self.n_total:
            raise ValueError(f"n_slow must be in [0, {self.n_total}], got {self.n_slow}")
        if self.stride_h < 1 or self.stride_w < 1:
            raise ValueError("strides must be positive")
        if self.fast_rows < 1 or self.fast_cols < 1:
            raise ValueError("fast grid must be positive")
        object.__setattr__(self, "arrangement", Arrangement(self.arrangement))

    @property
    def n_fast(self) -> int:
        if self.arrangement is Arrangement.GSF:
            return self.n_total
        return self.n_total - self.n_slow

    @property
    def fast_tokens_per_frame(self) -> int:
        return self.fast_rows * self.fast_cols


DEFAULT_VIDEO_CONFIG = PathwayConfig(n_total=128, n_slow=32)


@dataclass(frozen=True)
class TokenRecord:
    """One token: either frame content or a separator.

    Content tokens carry their pathway, source frame and grid position;
    separators carry none of these.
    """

    kind: str
    pathway: str | None = None
    frame_index: int | None = None
    grid_pos: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind == CONTENT:
            if self.pathway not in (SLOW, FAST) or self.frame_index is None or self.grid_pos is None:
                raise ValueError("content tokens need pathway, frame_index and grid_pos")
        elif self.kind == SEPARATOR:
            if not (self.pathway is None and self.frame_index is None and self.grid_pos is None):
                raise ValueError("separator tokens carry no metadata")
        else:
            raise ValueError(f"unknown token kind {self.kind!r}")

    @staticmethod
    def content(pathway: str, frame_index: int, row: int, col: int) -> "TokenRecord":
        return TokenRecord(CONTENT, pathway, frame_index, (row, col))

    @staticmethod
    def separator() -> "TokenRecord":
        return TokenRecord(SEPARATOR)


@dataclass(frozen=True)
class TokenSequence:
    """Ordered token records plus the config that produced them."""

    records: tuple[TokenRecord, ...]
    config: PathwayConfig

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TokenRecord]:
        return iter(self.records)

    @property
    def content_count(self) -> int:
        return sum(1 for r in self.records if r.kind == CONTENT)

    @property
    def separator_count(self) -> int:
        return sum(1 for r in self.records if r.kind == SEPARATOR)

    def layout_lines(self) -> list[str]:
        """Render one line per token: ``kind pathway frame row col``."""
        lines = []
        for rec in self.records:
            if rec.kind == SEPARATOR:
                lines.append("SEP - - - -")
            else:
                row, col = rec.grid_pos
                lines.append(f"TOK {rec.pathway} {rec.frame_index} {row} {col}")
        return lines


def select_slow_frames(n_total: int, n_slow: int) -> list[int]:
    """Uniformly select ``n_slow`` frame indices out of ``n_total``.

    Returns ``floor(i * n_total / n_slow)`` for each i, strictly increasing.
    ``n_slow = 0`` yields an empty selection.

    Raises:
        InvalidCount: If ``n_slow`` is negative or exceeds ``n_total``.
    """
    if n_slow < 0 or n_slow > n_total:
        raise InvalidCount(f"n_slow must be in [0, {n_total}], got {n_slow}")
    return [i * n_total // n_slow for i in range(n_slow)]


def slow_frame_indices(cfg: PathwayConfig) -> list[int]:
    return select_slow_frames(cfg.n_total, cfg.n_slow)


def fast_frame_indices(cfg: PathwayConfig) -> list[int]:
    """Frames the fast stream covers: all of them, or the slow complement."""
    if cfg.arrangement is Arrangement.GSF:
        return list(range(cfg.n_total))
    slow = set(slow_frame_indices(cfg))
    return [i for i in range(cfg.n_total) if i not in slow]


def _check_frames(frames: Sequence[FrameGrid], cfg: PathwayConfig) -> None:
    if len(frames) != cfg.n_total:
        raise ValueError(f"expected {cfg.n_total} frames, got {len(frames)}")
    shape = frames[0].shape
    for f in frames[1:]:
        if f.shape != shape:
            raise ValueError("all frames must share one shape")


def run_slow_pathway(frames: Sequence[FrameGrid], cfg: PathwayConfig) -> list[FrameGrid]:
    """Pool the selected slow frames with the configured strides."""
    _check_frames(frames, cfg)
    return [
        avg_pool_strided(frames[i], cfg.stride_h, cfg.stride_w) for i in slow_frame_indices(cfg)
    ]


def run_fast_pathway(frames: Sequence[FrameGrid], cfg: PathwayConfig) -> list[FrameGrid]:
    """Adaptively pool the fast frames down to the fast target grid."""
    _check_frames(frames, cfg)
    return [
        avg_pool_adaptive(frames[i], cfg.fast_rows, cfg.fast_cols)
        for i in fast_frame_indices(cfg)
    ]


def _frame_tokens(pathway: str, frame_index: int, grid: FrameGrid) -> Iterator[TokenRecord]:
    # Row-major flattening; one token per grid cell, channel count irrelevant.
    for row in range(grid.rows):
        for col in range(grid.cols):
            yield TokenRecord.content(pathway, frame_index, row, col)


def arrange_gsf(
    slow: Iterable[tuple[int, FrameGrid]],
    fast: Iterable[tuple[int, FrameGrid]],
    cfg: PathwayConfig,
) -> TokenSequence:
    """Arrange tokens grouped: slow block, one separator, fast block.

    Both blocks are emitted in ascending (frame, row, col) order. The
    separator is present even when the slow block is empty.
    """
    records: list[TokenRecord] = []
    for frame_index, grid in sorted(slow, key=lambda pair: pair[0]):
        records.extend(_frame_tokens(SLOW, frame_index, grid))
    records.append(TokenRecord.separator())
    for frame_index, grid in sorted(fast, key=lambda pair: pair[0]):
        records.extend(_frame_tokens(FAST, frame_index, grid))
    return TokenSequence(tuple(records), cfg)


def arrange_isf(
    slow: Iterable[tuple[int, FrameGrid]],
    fast: Iterable[tuple[int, FrameGrid]],
    cfg: PathwayConfig,
) -> TokenSequence:
    """Arrange tokens interleaved by frame, one separator after each frame.

    The slow and fast frame sets must partition ``[0, n_total)``: every
    frame appears in exactly one stream.

    Raises:
        PartitionViolation: If the sets overlap or miss a frame.
    """
    by_frame: dict[int, tuple[str, FrameGrid]] = {}
    for pathway, pairs in ((SLOW, slow), (FAST, fast)):
        for frame_index, grid in pairs:
            if frame_index in by_frame:
                raise PartitionViolation(f"frame {frame_index} assigned to both streams")
            by_frame[frame_index] = (pathway, grid)
    missing = [i for i in range(cfg.n_total) if i not in by_frame]
    if missing or len(by_frame) != cfg.n_total:
        extra = sorted(set(by_frame) - set(range(cfg.n_total)))
        raise PartitionViolation(f"frames missing {missing} or out of range {extra}")

    records: list[TokenRecord] = []
    for frame_index in range(cfg.n_total):
        pathway, grid = by_frame[frame_index]
        records.extend(_frame_tokens(pathway, frame_index, grid))
        records.append(TokenRecord.separator())
    return TokenSequence(tuple(records), cfg)


def project_video(frames: Sequence[FrameGrid], cfg: PathwayConfig) -> TokenSequence:
    """Run both streams over ``frames`` and arrange the combined sequence."""
    slow_pairs = list(zip(slow_frame_indices(cfg), run_slow_pathway(frames, cfg)))
    fast_pairs = list(zip(fast_frame_indices(cfg), run_fast_pathway(frames, cfg)))
    if cfg.arrangement is Arrangement.GSF:
        return arrange_gsf(slow_pairs, fast_pairs, cfg)
    return arrange_isf(slow_pairs, fast_pairs, cfg)
