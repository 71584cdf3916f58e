"""moisttex: texture-feature moisture classification with cross-domain adaptation.

Pipeline pieces: grayscale image IO, five texture-feature families,
classical baseline classifiers with stratified cross-validation, a
dense-network engine with gradient reversal, KMeans + adjusted mutual
information model selection, an adversarial domain-adaptation trainer, and
a deterministic synthetic texture generator for desk-scale experiments.
"""

from .image_io import ImageFormatError, QuantizedImage, load_image, quantize

__version__ = "0.1.0"

__all__ = [
    "ImageFormatError",
    "QuantizedImage",
    "load_image",
    "quantize",
    "__version__",
]
