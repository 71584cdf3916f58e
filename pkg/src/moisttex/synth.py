"""Deterministic synthetic texture scenarios with controllable domain shift.

Each image is a band-pass filtered Gaussian random field whose dominant
spatial frequency and broadband roughness depend on the moisture class,
followed by a photometric domain transform (gamma, contrast, brightness,
blur, noise). Class-conditional structure is untouched by the transform, so
a scenario shifts p(x) while keeping p(y|texture) fixed.

Scenario layout on disk:
    out_dir/source/img_<class>_<index>.png + labels.csv
    out_dir/target/img_<class>_<index>.png + labels.csv
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image
from scipy.ndimage import gaussian_filter

from .data import CLASS_NAMES, write_labels_csv

DEFAULT_SIZE = 64


@dataclass(frozen=True)
class DomainSpec:
    name: str
    brightness_offset: int = 0
    contrast_gain: float = 1.0
    gamma: float = 1.0
    blur_radius: float = 0.0
    noise_sigma: float = 0.0

    def __post_init__(self):
        if self.contrast_gain <= 0:
            raise ValueError("contrast_gain must be positive")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class ClassSpec:
    label: str
    dominant_frequency: float  # cycles per image width
    roughness: float


IDENTITY_DOMAIN = DomainSpec(name="identity")

CLASS_SPECS = {
    "dry": ClassSpec(label="dry", dominant_frequency=3.0, roughness=0.2),
    "medium": ClassSpec(label="medium", dominant_frequency=7.0, roughness=0.55),
    "wet": ClassSpec(label="wet", dominant_frequency=14.0, roughness=1.0),
}

SHIFT_LEVELS = {
    "none": IDENTITY_DOMAIN,
    "mild": DomainSpec(name="mild", brightness_offset=12, contrast_gain=1.15,
                       noise_sigma=3.0),
    "strong": DomainSpec(name="strong", brightness_offset=-30, contrast_gain=0.75,
                         gamma=1.4, blur_radius=0.4, noise_sigma=4.0),
}


def _band_pass_field(rng: np.random.Generator, size: int, freq: float) -> np.ndarray:
    white = rng.normal(0.0, 1.0, (size, size))
    spectrum = np.fft.fft2(white)
    fy = np.fft.fftfreq(size)[:, None] * size
    fx = np.fft.fftfreq(size)[None, :] * size
    radius = np.sqrt(fy * fy + fx * fx)
    bandwidth = max(1.2, 0.3 * freq)
    mask = np.exp(-((radius - freq) ** 2) / (2.0 * bandwidth ** 2))
    field = np.fft.ifft2(spectrum * mask).real
    sd = field.std()
    if sd > 0:
        field = field / sd
    return field


def generate_image(domain: DomainSpec, cls: ClassSpec, size: int = DEFAULT_SIZE,
                   seed: int = 0) -> np.ndarray:
    """One synthetic grayscale texture; a pure function of its arguments."""
    if size < 32:
        raise ValueError("size must be at least 32")
    rng = np.random.default_rng(seed)
    base = _band_pass_field(rng, size, cls.dominant_frequency)
    grain = rng.normal(0.0, 1.0, (size, size))
    pattern = (base + cls.roughness * grain) / np.sqrt(1.0 + cls.roughness ** 2)
    v = 128.0 + 42.0 * pattern

    v = 255.0 * np.power(np.clip(v / 255.0, 0.0, 1.0), domain.gamma)
    v = 128.0 + domain.contrast_gain * (v - 128.0)
    v = v + domain.brightness_offset
    if domain.blur_radius > 0:
        v = gaussian_filter(v, sigma=domain.blur_radius, mode="reflect")
    if domain.noise_sigma > 0:
        v = v + rng.normal(0.0, domain.noise_sigma, v.shape)
    return np.floor(np.clip(v, 0.0, 255.0) + 0.5).astype(np.uint8)


def _image_seed(seed: int, domain_idx: int, class_idx: int, index: int) -> int:
    return ((seed * 4 + domain_idx) * 8 + class_idx) * 1_000_000 + index


def generate_scenario(shift: str, per_class: int, seed: int, out_dir,
                      size: int = DEFAULT_SIZE) -> dict:
    """Write a two-domain dataset; the target domain carries the shift."""
    if shift not in SHIFT_LEVELS:
        raise ValueError(f"shift must be one of {sorted(SHIFT_LEVELS)}")
    if per_class < 10:
        raise ValueError("per_class must be at least 10")
    out_dir = Path(out_dir)
    domains = (("source", IDENTITY_DOMAIN), ("target", SHIFT_LEVELS[shift]))
    written = {}
    for domain_idx, (domain_name, domain_spec) in enumerate(domains):
        ddir = out_dir / domain_name
        ddir.mkdir(parents=True, exist_ok=True)
        rows = []
        for class_idx, cls_name in enumerate(CLASS_NAMES):
            cls = CLASS_SPECS[cls_name]
            for i in range(per_class):
                img = generate_image(
                    domain_spec, cls, size,
                    seed=_image_seed(seed, domain_idx, class_idx, i))
                stem = f"img_{cls_name}_{i:04d}"
                Image.fromarray(img).save(ddir / f"{stem}.png", format="PNG")
                rows.append((stem, domain_name, cls_name))
        write_labels_csv(ddir / "labels.csv", rows)
        written[domain_name] = {"dir": str(ddir), "images": len(rows)}
    return {"shift": shift, "perClass": per_class, "seed": seed, "size": size,
            "domains": written}
