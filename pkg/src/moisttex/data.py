"""Sample / dataset containers and the CSV wire formats.

Feature CSV: header ``id,domain,label,<feature names in canonical order>``;
the label cell is empty for unlabeled (target-domain) rows; feature cells
use full round-trip decimal precision. Labels CSV (written next to
generated images): header ``id,domain,label``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

CLASS_NAMES = ("dry", "medium", "wet")

_CLASS_INDEX = {name: i for i, name in enumerate(CLASS_NAMES)}


class NonFiniteFeatureError(ValueError):
    """A feature value failed the finiteness contract (CLI exit code 4)."""


def label_index(label: str) -> int:
    try:
        return _CLASS_INDEX[label.lower()]
    except KeyError:
        raise ValueError(f"unknown class label {label!r}") from None


@dataclass
class Sample:
    id: str
    features: np.ndarray
    label: str | None
    domain: str


@dataclass
class Dataset:
    schema: list[str]
    samples: list[Sample] = field(default_factory=list)

    def __post_init__(self):
        ids = set()
        for s in self.samples:
            if s.id in ids:
                raise ValueError(f"duplicate sample id {s.id!r}")
            ids.add(s.id)
            if len(s.features) != len(self.schema):
                raise ValueError(f"sample {s.id!r} does not match the feature schema")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def X(self) -> np.ndarray:
        return np.array([s.features for s in self.samples], dtype=np.float64)

    @property
    def labeled(self) -> bool:
        return all(s.label is not None for s in self.samples)

    @property
    def y(self) -> np.ndarray:
        if not self.labeled:
            raise ValueError("dataset contains unlabeled samples")
        return np.array([label_index(s.label) for s in self.samples], dtype=np.int64)

    def subset(self, indices) -> "Dataset":
        return Dataset(schema=list(self.schema),
                       samples=[self.samples[i] for i in indices])

    def class_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(CLASS_NAMES, 0)
        for s in self.samples:
            if s.label is not None:
                counts[s.label.lower()] += 1
        return counts


def write_feature_csv(path, ds: Dataset) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "domain", "label", *ds.schema])
        for s in ds.samples:
            row = [s.id, s.domain, s.label if s.label is not None else ""]
            row.extend(repr(float(v)) for v in s.features)
            writer.writerow(row)


def read_feature_csv(path) -> Dataset:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:3] != ["id", "domain", "label"]:
            raise ValueError(f"{path}: expected header id,domain,label,<features>")
        schema = header[3:]
        samples = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: wrong cell count")
            values = np.array([float(v) for v in row[3:]], dtype=np.float64)
            if not np.all(np.isfinite(values)):
                raise NonFiniteFeatureError(f"{path}:{lineno}: non-finite feature value")
            label = row[2] or None
            if label is not None:
                label_index(label)  # validate
            samples.append(Sample(id=row[0], features=values, label=label,
                                  domain=row[1]))
    return Dataset(schema=schema, samples=samples)


def write_labels_csv(path, rows: list[tuple[str, str, str]]) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "domain", "label"])
        writer.writerows(rows)


def read_labels_csv(path) -> list[tuple[str, str, str]]:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["id", "domain", "label"]:
            raise ValueError(f"{path}: expected header id,domain,label")
        return [(row[0], row[1], row[2]) for row in reader if row]
