"""The five texture-feature families and their 63-feature combination.

Feature order is fixed and published in ``feature_manifest.json`` shipped
with the package: haralick (13), fos (16), fps (17), glrlm (11), lbp (6),
concatenated in that order for the combined vector.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from ..image_io import validate_gray_image
from .fos import FOS_NAMES, fos_features
from .fps import FPS_NAMES, fps_features, power_spectrum
from .glrlm import GLRLM_NAMES, glrlm, glrlm_features, glrlm_stats, RunLengthMatrix
from .haralick import HARALICK_NAMES, glcm, haralick_features, haralick_from_glcm
from .lbp import LBP_NAMES, LbpHistogram, lbp_features, lbp_histogram

__all__ = [
    "FAMILIES",
    "combined_features",
    "extract_family",
    "feature_names",
    "fos_features",
    "fps_features",
    "glcm",
    "glrlm",
    "glrlm_features",
    "glrlm_stats",
    "haralick_features",
    "haralick_from_glcm",
    "lbp_features",
    "lbp_histogram",
    "power_spectrum",
    "LbpHistogram",
    "RunLengthMatrix",
]

FAMILIES = {
    "haralick": (HARALICK_NAMES, haralick_features),
    "fos": (FOS_NAMES, fos_features),
    "fps": (FPS_NAMES, fps_features),
    "glrlm": (GLRLM_NAMES, glrlm_features),
    "lbp": (LBP_NAMES, lbp_features),
}

COMBINED_NAMES = [n for names, _ in FAMILIES.values() for n in names]


def feature_names(family: str) -> list[str]:
    """Canonical ordered feature names for a family (or ``combined``)."""
    if family == "combined":
        return list(COMBINED_NAMES)
    if family not in FAMILIES:
        raise ValueError(f"unknown feature family {family!r}")
    return list(FAMILIES[family][0])


def manifest() -> dict[str, list[str]]:
    """The machine-readable name manifest shipped with the package."""
    text = resources.files("moisttex").joinpath("feature_manifest.json").read_text()
    return json.loads(text)


def combined_features(img: np.ndarray) -> np.ndarray:
    """All 63 features: haralick | fos | fps | glrlm | lbp."""
    img = validate_gray_image(img)
    if img.shape[0] < 8 or img.shape[1] < 8:
        raise ValueError("combined features need an image of at least 8x8")
    parts = [extractor(img) for _, extractor in FAMILIES.values()]
    return np.concatenate(parts)


def extract_family(img: np.ndarray, family: str) -> np.ndarray:
    """Feature vector of one family (or the 63-feature ``combined`` set)."""
    if family == "combined":
        return combined_features(img)
    if family not in FAMILIES:
        raise ValueError(f"unknown feature family {family!r}")
    return FAMILIES[family][1](img)
