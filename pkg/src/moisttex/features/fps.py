"""Fourier power spectrum features: radial ring and angular sector sums.

The power spectrum |F(u,v)|^2 of the unnormalized 2-D DFT is shifted so the
DC term sits at the center cell, and the DC power is then zeroed, making
every feature invariant to global brightness. The remaining cells are
aggregated into 9 equal-width rings in normalized radius (0, 1] (radius 1 =
distance from the center to the farthest corner cell) and 8 sectors of
pi/8 over [0, pi) (real input makes the spectrum point-symmetric, so angles
are folded into the upper half).
"""

from __future__ import annotations

import numpy as np

from ..image_io import validate_gray_image

N_RADIAL = 9
N_ANGULAR = 8

FPS_NAMES = [f"fps_radial_sum_{i}" for i in range(1, N_RADIAL + 1)] + [
    f"fps_angular_sum_{i}" for i in range(1, N_ANGULAR + 1)
]


def power_spectrum(img: np.ndarray) -> np.ndarray:
    """DC-centered power spectrum with the DC cell set to 0."""
    img = validate_gray_image(img)
    f = np.fft.fftshift(np.fft.fft2(img.astype(np.float64)))
    power = (f.real ** 2 + f.imag ** 2)
    h, w = power.shape
    power[h // 2, w // 2] = 0.0
    return power


def _bin_indices(h: int, w: int) -> tuple[np.ndarray, np.ndarray]:
    """Radial and angular bin index per cell; the DC cell maps to the trash bin."""
    cy, cx = h // 2, w // 2
    dy = np.arange(h)[:, None] - cy
    dx = np.arange(w)[None, :] - cx
    dist = np.sqrt(dy * dy + dx * dx, dtype=np.float64)
    dmax = float(dist.max())
    radial = np.ceil(dist / dmax * N_RADIAL).astype(np.int64) - 1
    radial = np.minimum(radial, N_RADIAL - 1)
    radial[cy, cx] = N_RADIAL  # trash bin for DC

    theta = np.arctan2(dy.astype(np.float64), dx.astype(np.float64))
    theta = np.where(theta < 0, theta + np.pi, theta)
    theta = np.where(theta >= np.pi, theta - np.pi, theta)
    angular = np.floor(theta / (np.pi / N_ANGULAR)).astype(np.int64)
    angular = np.minimum(angular, N_ANGULAR - 1)
    angular[cy, cx] = N_ANGULAR
    return radial, angular


def fps_features(img: np.ndarray) -> np.ndarray:
    """9 radial sums followed by 8 angular sums of the DC-removed spectrum."""
    power = power_spectrum(img)
    h, w = power.shape
    radial_idx, angular_idx = _bin_indices(h, w)
    # bincount accumulates sequentially in row-major cell order
    radial = np.bincount(radial_idx.ravel(), weights=power.ravel(),
                         minlength=N_RADIAL + 1)[:N_RADIAL]
    angular = np.bincount(angular_idx.ravel(), weights=power.ravel(),
                          minlength=N_ANGULAR + 1)[:N_ANGULAR]
    return np.concatenate([radial, angular])
