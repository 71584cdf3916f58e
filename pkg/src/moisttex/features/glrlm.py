"""Gray-level run-length matrices and their 11 statistics.

A run is a maximal streak of equal gray levels along one of the four scan
directions. In the feature formulas the gray-level index i and the run
length j are 1-based, and the normalizer is the total number of runs R, so
e.g. ShortRunEmphasis = (1/R) sum P(i,j)/j^2 and RunPercentage = R / N_p.
Features are averaged over the four directions on a 32-level quantization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._kernels import glrlm_counts
from ..image_io import QuantizedImage, quantize, validate_gray_image

GLRLM_LEVELS = 32

DIRECTIONS = {0: 0, 45: 1, 90: 2, 135: 3}

GLRLM_NAMES = [
    "glrlm_short_run_emphasis",
    "glrlm_long_run_emphasis",
    "glrlm_gray_level_nonuniformity",
    "glrlm_run_length_nonuniformity",
    "glrlm_run_percentage",
    "glrlm_low_gray_level_run_emphasis",
    "glrlm_high_gray_level_run_emphasis",
    "glrlm_short_run_low_gray_level_emphasis",
    "glrlm_short_run_high_gray_level_emphasis",
    "glrlm_long_run_low_gray_level_emphasis",
    "glrlm_long_run_high_gray_level_emphasis",
]


@dataclass(frozen=True)
class RunLengthMatrix:
    """Run counts P[level, length-1] for one direction."""

    counts: np.ndarray
    levels: int
    total_pixels: int

    @property
    def total_runs(self) -> int:
        return int(self.counts.sum())

    @property
    def max_run(self) -> int:
        return self.counts.shape[1]


def glrlm(q: QuantizedImage, direction: int) -> RunLengthMatrix:
    """Run-length matrix along ``direction`` (one of 0, 45, 90, 135 degrees)."""
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {sorted(DIRECTIONS)}, got {direction}")
    counts = glrlm_counts(q.values, q.levels, DIRECTIONS[direction])
    return RunLengthMatrix(counts=counts, levels=q.levels,
                           total_pixels=q.values.size)


def glrlm_stats(m: RunLengthMatrix) -> np.ndarray:
    """The 11 run-length statistics of one matrix."""
    p = m.counts.astype(np.float64)
    r = float(m.total_runs)
    i = np.arange(1, m.levels + 1, dtype=np.float64)[:, None]
    j = np.arange(1, m.max_run + 1, dtype=np.float64)[None, :]

    sre = np.sum(p / j ** 2) / r
    lre = np.sum(p * j ** 2) / r
    gln = np.sum(p.sum(axis=1) ** 2) / r
    rln = np.sum(p.sum(axis=0) ** 2) / r
    rp = r / m.total_pixels
    lglre = np.sum(p / i ** 2) / r
    hglre = np.sum(p * i ** 2) / r
    srlgle = np.sum(p / (i ** 2 * j ** 2)) / r
    srhgle = np.sum(p * i ** 2 / j ** 2) / r
    lrlgle = np.sum(p * j ** 2 / i ** 2) / r
    lrhgle = np.sum(p * i ** 2 * j ** 2) / r

    return np.array([sre, lre, gln, rln, rp, lglre, hglre,
                     srlgle, srhgle, lrlgle, lrhgle])


def glrlm_features(img: np.ndarray) -> np.ndarray:
    """11 direction-averaged run-length features of a grayscale image."""
    img = validate_gray_image(img)
    q = quantize(img, GLRLM_LEVELS)
    per_dir = [glrlm_stats(glrlm(q, d)) for d in sorted(DIRECTIONS)]
    return np.mean(per_dir, axis=0)
