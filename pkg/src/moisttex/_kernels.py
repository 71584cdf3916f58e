"""Hot counting kernels behind the texture extractors.

Each kernel exists twice: a numba ``@njit`` loop and a vectorized
pure-numpy fallback. The active path is chosen at import time: numba is
used when importable unless the environment variable
``MOISTTEX_NO_NUMBA`` is set to a non-empty value.

All kernels return integer count arrays; every floating-point
normalization happens in the callers, so both paths produce bit-identical
features. The LBP kernel thresholds the *interpolated difference* to the
center pixel, which keeps the bit pattern exactly invariant under global
brightness shifts.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not os.environ.get("MOISTTEX_NO_NUMBA")


# ---------------------------------------------------------------------------
# GLCM pair counting


def glcm_counts_numpy(values: np.ndarray, levels: int, dx: int, dy: int) -> np.ndarray:
    """Symmetric co-occurrence counts for offset (dx, dy), dx along columns."""
    h, w = values.shape
    r0, r1 = max(0, -dy), min(h, h - dy)
    c0, c1 = max(0, -dx), min(w, w - dx)
    a = values[r0:r1, c0:c1].ravel().astype(np.int64)
    b = values[r0 + dy:r1 + dy, c0 + dx:c1 + dx].ravel().astype(np.int64)
    counts = np.bincount(a * levels + b, minlength=levels * levels)
    counts = counts.reshape(levels, levels)
    return (counts + counts.T).astype(np.int64)


def _glcm_counts_loop(values, levels, dx, dy):
    h, w = values.shape
    counts = np.zeros((levels, levels), dtype=np.int64)
    for r in range(h):
        rr = r + dy
        if rr < 0 or rr >= h:
            continue
        for c in range(w):
            cc = c + dx
            if cc < 0 or cc >= w:
                continue
            a = values[r, c]
            b = values[rr, cc]
            counts[a, b] += 1
            counts[b, a] += 1
    return counts


# ---------------------------------------------------------------------------
# GLRLM run counting
#
# Directions are encoded 0: ->, 1: up-right diagonal, 2: down, 3: down-right
# diagonal (0, 45, 90, 135 degrees). Every pixel belongs to exactly one
# maximal run per direction.


def _runs_of_line(line: np.ndarray, counts: np.ndarray) -> None:
    n = line.shape[0]
    if n == 0:
        return
    breaks = np.flatnonzero(line[1:] != line[:-1])
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks + 1, [n]))
    np.add.at(counts, (line[starts], ends - starts - 1), 1)


def glrlm_counts_numpy(values: np.ndarray, levels: int, direction: int) -> np.ndarray:
    h, w = values.shape
    counts = np.zeros((levels, max(h, w)), dtype=np.int64)
    if direction == 0:
        for r in range(h):
            _runs_of_line(values[r, :], counts)
    elif direction == 2:
        for c in range(w):
            _runs_of_line(values[:, c], counts)
    else:
        # numpy diagonals run down-right; flip columns to get up-right lines
        src = values[:, ::-1] if direction == 1 else values
        for off in range(-(h - 1), w):
            _runs_of_line(np.diagonal(src, offset=off), counts)
    return counts


def _glrlm_counts_loop(values, levels, direction):
    h, w = values.shape
    counts = np.zeros((levels, max(h, w)), dtype=np.int64)
    if direction == 0:
        sy, sx = 0, 1
    elif direction == 1:
        sy, sx = -1, 1
    elif direction == 2:
        sy, sx = 1, 0
    else:
        sy, sx = 1, 1
    for r in range(h):
        for c in range(w):
            # start of a maximal run: the previous pixel along the
            # direction is out of bounds or holds a different level
            pr, pc = r - sy, c - sx
            v = values[r, c]
            if 0 <= pr < h and 0 <= pc < w and values[pr, pc] == v:
                continue
            length = 1
            nr, nc = r + sy, c + sx
            while 0 <= nr < h and 0 <= nc < w and values[nr, nc] == v:
                length += 1
                nr += sy
                nc += sx
            counts[v, length - 1] += 1
    return counts


# ---------------------------------------------------------------------------
# LBP uniform rotation-invariant bin counting


def _lbp_grid(radius: float, points: int):
    """Integer corner offsets and fractional weights per sample point.

    Splitting floor/fraction once per point (not per pixel) keeps both
    backends on the exact same interpolation weights.
    """
    oy = np.array([radius * math.sin(2.0 * math.pi * k / points) for k in range(points)])
    ox = np.array([radius * math.cos(2.0 * math.pi * k / points) for k in range(points)])
    iy = np.floor(oy).astype(np.int64)
    ix = np.floor(ox).astype(np.int64)
    return iy, ix, oy - iy, ox - ix


def lbp_bin_counts_numpy(img: np.ndarray, radius: float, points: int) -> np.ndarray:
    h, w = img.shape
    m = int(math.ceil(radius))
    if h - 1 - m < m or w - 1 - m < m:
        raise ValueError(f"image too small for LBP radius {radius}")
    iy, ix, ty, tx = _lbp_grid(radius, points)
    pix = img.astype(np.float64)
    center = pix[m:h - m, m:w - m]
    bits = np.empty((points,) + center.shape, dtype=np.bool_)
    rows = np.arange(m, h - m)
    cols = np.arange(m, w - m)
    for k in range(points):
        ya = rows + iy[k]
        yb = np.minimum(ya + 1, h - 1)
        xa = cols + ix[k]
        xb = np.minimum(xa + 1, w - 1)
        d00 = pix[np.ix_(ya, xa)] - center
        d01 = pix[np.ix_(ya, xb)] - center
        d10 = pix[np.ix_(yb, xa)] - center
        d11 = pix[np.ix_(yb, xb)] - center
        v = (d00 * (1.0 - ty[k]) * (1.0 - tx[k]) + d01 * (1.0 - ty[k]) * tx[k]
             + d10 * ty[k] * (1.0 - tx[k]) + d11 * ty[k] * tx[k])
        bits[k] = v >= 0.0
    pops = bits.sum(axis=0, dtype=np.int64)
    trans = (bits != np.roll(bits, 1, axis=0)).sum(axis=0, dtype=np.int64)
    binned = np.where(trans <= 2, pops, points + 1)
    return np.bincount(binned.ravel(), minlength=points + 2).astype(np.int64)


def _lbp_bin_counts_loop(img, m, points, iy, ix, ty, tx):
    h, w = img.shape
    counts = np.zeros(points + 2, dtype=np.int64)
    bits = np.empty(points, dtype=np.bool_)
    for r in range(m, h - m):
        for c in range(m, w - m):
            center = np.float64(img[r, c])
            for k in range(points):
                y0 = r + iy[k]
                x0 = c + ix[k]
                y1 = min(y0 + 1, h - 1)
                x1 = min(x0 + 1, w - 1)
                d00 = np.float64(img[y0, x0]) - center
                d01 = np.float64(img[y0, x1]) - center
                d10 = np.float64(img[y1, x0]) - center
                d11 = np.float64(img[y1, x1]) - center
                v = (d00 * (1.0 - ty[k]) * (1.0 - tx[k]) + d01 * (1.0 - ty[k]) * tx[k]
                     + d10 * ty[k] * (1.0 - tx[k]) + d11 * ty[k] * tx[k])
                bits[k] = v >= 0.0
            pop = 0
            trans = 0
            for k in range(points):
                if bits[k]:
                    pop += 1
                if bits[k] != bits[k - 1]:
                    trans += 1
            if trans <= 2:
                counts[pop] += 1
            else:
                counts[points + 1] += 1
    return counts


if HAS_NUMBA:
    _glcm_counts_jit = numba.njit(cache=True)(_glcm_counts_loop)
    _glrlm_counts_jit = numba.njit(cache=True)(_glrlm_counts_loop)
    _lbp_bin_counts_jit = numba.njit(cache=True)(_lbp_bin_counts_loop)

    def glcm_counts_numba(values, levels, dx, dy):
        return _glcm_counts_jit(values, levels, dx, dy)

    def glrlm_counts_numba(values, levels, direction):
        return _glrlm_counts_jit(values, levels, direction)

    def lbp_bin_counts_numba(img, radius, points):
        h, w = img.shape
        m = int(math.ceil(radius))
        if h - 1 - m < m or w - 1 - m < m:
            raise ValueError(f"image too small for LBP radius {radius}")
        iy, ix, ty, tx = _lbp_grid(radius, points)
        return _lbp_bin_counts_jit(img, m, points, iy, ix, ty, tx)


if USE_NUMBA:
    glcm_counts = glcm_counts_numba
    glrlm_counts = glrlm_counts_numba
    lbp_bin_counts = lbp_bin_counts_numba
else:
    glcm_counts = glcm_counts_numpy
    glrlm_counts = glrlm_counts_numpy
    lbp_bin_counts = lbp_bin_counts_numpy
