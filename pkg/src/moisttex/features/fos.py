"""First-order statistics of the raw intensity distribution.

All 16 features are computed on the 0..255 intensities directly: population
variance, non-excess kurtosis, entropy over the 256-bin histogram (natural
log), percentiles by linear interpolation. Degenerate cases: skewness and
kurtosis are 0 when the standard deviation is 0, and the coefficient of
variation is 0 when the mean is 0.
"""

from __future__ import annotations

import numpy as np

from ..image_io import validate_gray_image

FOS_NAMES = [
    "fos_mean",
    "fos_variance",
    "fos_median",
    "fos_mode",
    "fos_skewness",
    "fos_kurtosis",
    "fos_energy",
    "fos_entropy",
    "fos_min_gray_level",
    "fos_max_gray_level",
    "fos_coefficient_of_variation",
    "fos_percentile_10",
    "fos_percentile_25",
    "fos_percentile_75",
    "fos_percentile_90",
    "fos_histogram_width",
]


def fos_features(img: np.ndarray) -> np.ndarray:
    img = validate_gray_image(img)
    x = img.astype(np.float64).ravel()
    n = x.size

    mean = float(np.mean(x))
    variance = float(np.var(x))
    sigma = float(np.sqrt(variance))
    median = float(np.median(x))
    mode = float(np.argmax(np.bincount(img.ravel(), minlength=256)))
    if sigma > 0:
        z = (x - mean) / sigma
        skewness = float(np.mean(z ** 3))
        kurtosis = float(np.mean(z ** 4))
    else:
        skewness = 0.0
        kurtosis = 0.0
    energy = float(np.sum(x * x))

    counts = np.bincount(img.ravel(), minlength=256)
    p = counts[counts > 0] / n
    entropy = -float(np.sum(p * np.log(p))) + 0.0

    lo = float(x.min())
    hi = float(x.max())
    cov = sigma / mean if mean != 0 else 0.0
    p10, p25, p75, p90 = (float(v) for v in np.percentile(x, [10, 25, 75, 90]))

    return np.array([
        mean, variance, median, mode, skewness, kurtosis, energy, entropy,
        lo, hi, cov, p10, p25, p75, p90, hi - lo,
    ])
