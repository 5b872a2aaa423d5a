"""Dense-grid numeric kernels and their naive reference oracles.

Three kernels operate on per-frame feature grids: strided average pooling,
adaptive average pooling, and align-corners bilinear resampling. Each has a
plain-Python loop oracle (``naive_*``) that shares nothing with the
vectorised path, so the two can be checked against each other on random
inputs. ``synth_features`` produces deterministic stand-in features so the
pipeline can run without a vision encoder.

All arithmetic is float64. Grids are immutable value types.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidOutputShape, NonDivisibleStride
from .geometry import PatchGrid


@dataclass(frozen=True, eq=False)
class FrameGrid:
    """One frame's feature grid, shape (rows, cols, channels), float64.

    A 2D array is accepted and promoted to a single channel. Values must be
    finite; the backing array is copied and marked read-only.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3:
            raise ValueError(f"grid must be 2D or 3D, got {arr.ndim}D")
        if arr.size == 0:
            raise ValueError("grid dimensions must be positive")
        if not np.all(np.isfinite(arr)):
            raise ValueError("grid values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def channels(self) -> int:
        return self.values.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.values.shape


def _check_strides(grid: FrameGrid, stride_h: int, stride_w: int) -> None:
    if stride_h < 1 or stride_w < 1:
        raise NonDivisibleStride(f"strides must be positive, got {stride_h}x{stride_w}")
    if grid.rows % stride_h or grid.cols % stride_w:
        raise NonDivisibleStride(
            f"strides {stride_h}x{stride_w} do not divide grid {grid.rows}x{grid.cols}"
        )


def _check_adaptive(grid: FrameGrid, out_rows: int, out_cols: int) -> None:
    if out_rows < 1 or out_cols < 1:
        raise InvalidOutputShape(f"output must be positive, got {out_rows}x{out_cols}")
    if out_rows > grid.rows or out_cols > grid.cols:
        raise InvalidOutputShape(
            f"output {out_rows}x{out_cols} exceeds input {grid.rows}x{grid.cols}"
        )


def avg_pool_strided(grid: FrameGrid, stride_h: int, stride_w: int) -> FrameGrid:
    """Average non-overlapping stride_h x stride_w blocks, per channel.

    Strides must divide the grid dimensions exactly; the output is
    (rows/stride_h) x (cols/stride_w) and preserves the per-channel mean.

    Raises:
        NonDivisibleStride: If a stride does not divide its dimension.
    """
    _check_strides(grid, stride_h, stride_w)
    v = grid.values
    blocks = v.reshape(
        grid.rows // stride_h, stride_h, grid.cols // stride_w, stride_w, grid.channels
    )
    return FrameGrid(blocks.mean(axis=(1, 3)))


def _bin_starts(n_in: int, n_out: int) -> np.ndarray:
    return np.array([i * n_in // n_out for i in range(n_out)], dtype=np.intp)


def avg_pool_adaptive(grid: FrameGrid, out_rows: int, out_cols: int) -> FrameGrid:
    """Average over a floor-boundary partition down to out_rows x out_cols.

    Bin i along an axis of length n spans input indices
    [floor(i*n/out), floor((i+1)*n/out)); the bins tile the axis exactly,
    so pooling to the input's own shape is the identity.

    Raises:
        InvalidOutputShape: If the target exceeds the input dimensions.
    """
    _check_adaptive(grid, out_rows, out_cols)
    row_starts = _bin_starts(grid.rows, out_rows)
    col_starts = _bin_starts(grid.cols, out_cols)
    sums = np.add.reduceat(grid.values, row_starts, axis=0)
    sums = np.add.reduceat(sums, col_starts, axis=1)
    row_sizes = np.diff(np.append(row_starts, grid.rows))
    col_sizes = np.diff(np.append(col_starts, grid.cols))
    counts = row_sizes[:, np.newaxis] * col_sizes[np.newaxis, :]
    return FrameGrid(sums / counts[:, :, np.newaxis])


def _axis_positions(n_in: int, n_out: int) -> np.ndarray:
    # Align-corners sampling; a single output sample takes the axis midpoint.
    if n_out == 1:
        return np.array([(n_in - 1) / 2.0])
    return np.arange(n_out, dtype=np.float64) * ((n_in - 1) / (n_out - 1))


def _axis_taps(n_in: int, n_out: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pos = _axis_positions(n_in, n_out)
    lo = np.clip(np.floor(pos).astype(np.intp), 0, max(n_in - 2, 0))
    frac = pos - lo
    hi = np.minimum(lo + 1, n_in - 1)
    return lo, hi, frac


def bilinear_resample(grid: FrameGrid, out_rows: int, out_cols: int) -> FrameGrid:
    """Resample to out_rows x out_cols with align-corners bilinear weights.

    Output (i, j) samples the input at
    (i*(rows-1)/(out_rows-1), j*(cols-1)/(out_cols-1)); corner samples land
    exactly on corner cells, and a size-1 output axis samples the midpoint.
    Resampling to the input's own shape reproduces it exactly.
    """
    if out_rows < 1 or out_cols < 1:
        raise ValueError(f"output must be positive, got {out_rows}x{out_cols}")
    v = grid.values
    r_lo, r_hi, r_frac = _axis_taps(grid.rows, out_rows)
    c_lo, c_hi, c_frac = _axis_taps(grid.cols, out_cols)

    top = v[r_lo][:, c_lo] * (1.0 - c_frac)[np.newaxis, :, np.newaxis]
    top += v[r_lo][:, c_hi] * c_frac[np.newaxis, :, np.newaxis]
    bottom = v[r_hi][:, c_lo] * (1.0 - c_frac)[np.newaxis, :, np.newaxis]
    bottom += v[r_hi][:, c_hi] * c_frac[np.newaxis, :, np.newaxis]
    out = top * (1.0 - r_frac)[:, np.newaxis, np.newaxis]
    out += bottom * r_frac[:, np.newaxis, np.newaxis]
    return FrameGrid(out)


_MIX_A = np.uint64(0x9E3779B97F4A7C15)
_MIX_B = np.uint64(0xBF58476D1CE4E5B9)
_MIX_C = np.uint64(0x94D049BB133111EB)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    # Integer-only mix; identical on every platform.
    z = x + _MIX_A
    z = (z ^ (z >> np.uint64(30))) * _MIX_B
    z = (z ^ (z >> np.uint64(27))) * _MIX_C
    return z ^ (z >> np.uint64(31))


def synth_features(frame_index: int, grid: PatchGrid, channels: int) -> FrameGrid:
    """Deterministic pseudo-random features for one frame.

    Every value is a pure function of (frame_index, row, col, channel), so
    repeated calls are bit-identical across runs and platforms. Values lie
    in [0, 1).
    """
    if frame_index < 0:
        raise ValueError(f"frame_index must be non-negative, got {frame_index}")
    if channels < 1:
        raise ValueError(f"channels must be positive, got {channels}")
    r = np.arange(grid.rows, dtype=np.uint64)[:, np.newaxis, np.newaxis]
    c = np.arange(grid.cols, dtype=np.uint64)[np.newaxis, :, np.newaxis]
    k = np.arange(channels, dtype=np.uint64)[np.newaxis, np.newaxis, :]
    base = np.uint64(frame_index)
    step = np.uint64(0x100000001B3)
    key = ((base * step + r) * step + c) * step + k
    bits = _splitmix64(key)
    return FrameGrid((bits >> np.uint64(11)).astype(np.float64) * 2.0**-53)


def naive_avg_pool_strided(grid: FrameGrid, stride_h: int, stride_w: int) -> FrameGrid:
    """Loop-oracle counterpart of ``avg_pool_strided``."""
    _check_strides(grid, stride_h, stride_w)
    vals = grid.values.tolist()
    ch = grid.channels
    inv = 1.0 / (stride_h * stride_w)
    out = []
    for i in range(grid.rows // stride_h):
        out_row = []
        for j in range(grid.cols // stride_w):
            acc = [0.0] * ch
            for r in range(i * stride_h, (i + 1) * stride_h):
                row = vals[r]
                for c in range(j * stride_w, (j + 1) * stride_w):
                    cell = row[c]
                    for k in range(ch):
                        acc[k] += cell[k]
            out_row.append([a * inv for a in acc])
        out.append(out_row)
    return FrameGrid(np.array(out, dtype=np.float64))


def naive_avg_pool_adaptive(grid: FrameGrid, out_rows: int, out_cols: int) -> FrameGrid:
    """Loop-oracle counterpart of ``avg_pool_adaptive``."""
    _check_adaptive(grid, out_rows, out_cols)
    vals = grid.values.tolist()
    ch = grid.channels
    row_edges = [i * grid.rows // out_rows for i in range(out_rows + 1)]
    col_edges = [j * grid.cols // out_cols for j in range(out_cols + 1)]
    out = []
    for i in range(out_rows):
        out_row = []
        for j in range(out_cols):
            acc = [0.0] * ch
            count = 0
            for r in range(row_edges[i], row_edges[i + 1]):
                row = vals[r]
                for c in range(col_edges[j], col_edges[j + 1]):
                    cell = row[c]
                    for k in range(ch):
                        acc[k] += cell[k]
                    count += 1
            out_row.append([a / count for a in acc])
        out.append(out_row)
    return FrameGrid(np.array(out, dtype=np.float64))


def _naive_axis_taps(n_in: int, n_out: int) -> list[tuple[int, int, float]]:
    taps = []
    for i in range(n_out):
        pos = (n_in - 1) / 2.0 if n_out == 1 else i * (n_in - 1) / (n_out - 1)
        lo = min(int(pos), max(n_in - 2, 0))
        hi = min(lo + 1, n_in - 1)
        taps.append((lo, hi, pos - lo))
    return taps


def naive_bilinear_resample(grid: FrameGrid, out_rows: int, out_cols: int) -> FrameGrid:
    """Loop-oracle counterpart of ``bilinear_resample``."""
    if out_rows < 1 or out_cols < 1:
        raise ValueError(f"output must be positive, got {out_rows}x{out_cols}")
    vals = grid.values.tolist()
    ch = grid.channels
    row_taps = _naive_axis_taps(grid.rows, out_rows)
    col_taps = _naive_axis_taps(grid.cols, out_cols)
    out = []
    for r_lo, r_hi, ty in row_taps:
        top_row = vals[r_lo]
        bot_row = vals[r_hi]
        out_row = []
        for c_lo, c_hi, tx in col_taps:
            v00 = top_row[c_lo]
            v01 = top_row[c_hi]
            v10 = bot_row[c_lo]
            v11 = bot_row[c_hi]
            cell = []
            for k in range(ch):
                top = v00[k] * (1.0 - tx) + v01[k] * tx
                bottom = v10[k] * (1.0 - tx) + v11[k] * tx
                cell.append(top * (1.0 - ty) + bottom * ty)
            out_row.append(cell)
        out.append(out_row)
    return FrameGrid(np.array(out, dtype=np.float64))
