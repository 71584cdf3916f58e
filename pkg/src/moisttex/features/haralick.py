"""Co-occurrence matrix construction and the 13 classical Haralick statistics.

The feature set is computed on a 32-level quantized image from symmetric,
normalized co-occurrence matrices at distance 1 in four directions, then
averaged per feature across directions. Natural logarithms throughout,
with 0 * log 0 = 0; degenerate denominators (constant images) yield 0.
"""

from __future__ import annotations

import numpy as np

from .._kernels import glcm_counts
from ..image_io import QuantizedImage, quantize, validate_gray_image

GLCM_LEVELS = 32

# (dx, dy) pixel offsets at distance 1: 0, 45, 90, 135 degrees
OFFSETS = ((1, 0), (1, 1), (0, 1), (-1, 1))

HARALICK_NAMES = [
    "haralick_asm",
    "haralick_contrast",
    "haralick_correlation",
    "haralick_sum_of_squares_variance",
    "haralick_inverse_difference_moment",
    "haralick_sum_average",
    "haralick_sum_variance",
    "haralick_sum_entropy",
    "haralick_entropy",
    "haralick_difference_variance",
    "haralick_difference_entropy",
    "haralick_imc1",
    "haralick_imc2",
]


def glcm(q: QuantizedImage, dx: int, dy: int) -> np.ndarray:
    """Symmetric normalized co-occurrence matrix for offset (dx, dy).

    Every in-bounds pixel pair is counted in both orders; entries sum to 1.
    """
    if dx == 0 and dy == 0:
        raise ValueError("offset must be non-zero")
    if abs(dx) >= q.width or abs(dy) >= q.height:
        raise ValueError("offset exceeds image extent")
    counts = glcm_counts(q.values, q.levels, int(dx), int(dy))
    total = counts.sum()
    if total == 0:
        raise ValueError("offset produces no pixel pairs")
    return counts.astype(np.float64) / float(total)


def _xlogx(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = p[nz] * np.log(p[nz])
    return out


def haralick_from_glcm(p: np.ndarray) -> np.ndarray:
    """The 13 statistics of one normalized co-occurrence matrix.

    Gray-level indices are the quantized values themselves (0-based).
    """
    n = p.shape[0]
    idx = np.arange(n, dtype=np.float64)
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    mu_x = float(idx @ px)
    mu_y = float(idx @ py)
    var_x = float(((idx - mu_x) ** 2) @ px)
    var_y = float(((idx - mu_y) ** 2) @ py)

    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    # p_{x+y}(k), k = 0..2n-2 and p_{x-y}(k), k = 0..n-1
    p_sum = np.bincount((ii + jj).astype(np.int64).ravel(), weights=p.ravel(),
                        minlength=2 * n - 1)
    p_diff = np.bincount(np.abs(ii - jj).astype(np.int64).ravel(), weights=p.ravel(),
                         minlength=n)
    k_sum = np.arange(2 * n - 1, dtype=np.float64)
    k_diff = idx

    asm = float(np.sum(p * p))
    contrast = float((k_diff ** 2) @ p_diff)
    denom = np.sqrt(var_x * var_y)
    if denom > 0:
        correlation = (float(np.sum(ii * jj * p)) - mu_x * mu_y) / denom
    else:
        correlation = 0.0
    sum_of_squares = float(((ii - mu_x) ** 2 * p).sum())
    idm = float(np.sum(p / (1.0 + (ii - jj) ** 2)))
    sum_average = float(k_sum @ p_sum)
    sum_variance = float(((k_sum - sum_average) ** 2) @ p_sum)
    sum_entropy = -float(np.sum(_xlogx(p_sum))) + 0.0
    entropy = -float(np.sum(_xlogx(p))) + 0.0
    mu_diff = float(k_diff @ p_diff)
    difference_variance = float(((k_diff - mu_diff) ** 2) @ p_diff)
    difference_entropy = -float(np.sum(_xlogx(p_diff))) + 0.0

    hx = -float(np.sum(_xlogx(px))) + 0.0
    hy = -float(np.sum(_xlogx(py))) + 0.0
    pxpy = np.outer(px, py)
    log_pxpy = np.zeros_like(pxpy)
    nz = pxpy > 0
    log_pxpy[nz] = np.log(pxpy[nz])
    hxy1 = -float(np.sum(p * log_pxpy))
    hxy2 = -float(np.sum(pxpy[nz] * log_pxpy[nz]))
    max_h = max(hx, hy)
    imc1 = (entropy - hxy1) / max_h if max_h > 0 else 0.0
    imc2 = float(np.sqrt(max(0.0, 1.0 - np.exp(-2.0 * (hxy2 - entropy)))))

    return np.array([
        asm, contrast, correlation, sum_of_squares, idm, sum_average,
        sum_variance, sum_entropy, entropy, difference_variance,
        difference_entropy, imc1, imc2,
    ])


def haralick_features(img: np.ndarray) -> np.ndarray:
    """13 direction-averaged Haralick features of a grayscale image."""
    img = validate_gray_image(img)
    q = quantize(img, GLCM_LEVELS)
    per_dir = [haralick_from_glcm(glcm(q, dx, dy)) for dx, dy in OFFSETS]
    return np.mean(per_dir, axis=0)
