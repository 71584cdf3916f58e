"""Local binary pattern histograms (uniform rotation-invariant variant).

Each interior pixel samples ``points`` neighbors on a circle of ``radius``
(bilinear interpolation for fractional coordinates); bit k is set when the
neighbor value is >= the center. Patterns with at most two circular 0/1
transitions map to their popcount bin 0..points, all others to bin
points+1, giving points+2 bins. The histogram is normalized to sum 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._kernels import lbp_bin_counts
from ..image_io import validate_gray_image

# (radius, points) pairs of the multi-resolution feature set
LBP_CONFIGS = ((1, 8), (2, 16), (3, 24))

LBP_NAMES = [
    name
    for r, p in LBP_CONFIGS
    for name in (f"lbp_r{r}_p{p}_energy", f"lbp_r{r}_p{p}_entropy")
]


@dataclass(frozen=True)
class LbpHistogram:
    radius: float
    points: int
    bins: np.ndarray

    def energy(self) -> float:
        return float(np.sum(self.bins ** 2))

    def entropy(self) -> float:
        nz = self.bins[self.bins > 0]
        return -float(np.sum(nz * np.log(nz))) + 0.0


def lbp_histogram(img: np.ndarray, radius: float, points: int) -> LbpHistogram:
    img = validate_gray_image(img)
    if radius <= 0 or points < 1:
        raise ValueError("radius and points must be positive")
    counts = lbp_bin_counts(img, float(radius), int(points))
    total = counts.sum()
    if total == 0:
        raise ValueError(f"image too small for LBP radius {radius}")
    return LbpHistogram(radius=radius, points=points,
                        bins=counts.astype(np.float64) / float(total))


def lbp_features(img: np.ndarray) -> np.ndarray:
    """Energy and entropy of the LBP histogram at radii 1, 2, 3."""
    out = []
    for radius, points in LBP_CONFIGS:
        hist = lbp_histogram(img, radius, points)
        out.append(hist.energy())
        out.append(hist.entropy())
    return np.array(out)
