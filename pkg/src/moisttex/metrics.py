"""Confusion matrices and multiclass classification metrics.

Per-class precision, recall and F1 use one-vs-rest counts with the 0/0 -> 0
convention; headline numbers are support-weighted averages. Weighted recall
is computed from raw counts (sum TP / N), the identical arithmetic to
accuracy, so the weighted-recall == accuracy identity holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def confusion(y_true, y_pred, n_classes: int) -> np.ndarray:
    """Count matrix with rows = true class, columns = predicted class."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ValueError("label sequences must be 1-D and equal length")
    if y_true.size:
        for name, arr in (("true", y_true), ("predicted", y_pred)):
            if arr.min() < 0 or arr.max() >= n_classes:
                raise ValueError(f"{name} label out of range [0, {n_classes})")
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


@dataclass
class MetricsReport:
    accuracy: float
    precision: list[float]
    recall: list[float]
    f1: list[float]
    support: list[int]
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    confusion: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "perClass": {
                "precision": self.precision,
                "recall": self.recall,
                "f1": self.f1,
                "support": self.support,
            },
            "weighted": {
                "precision": self.weighted_precision,
                "recall": self.weighted_recall,
                "f1": self.weighted_f1,
            },
            "confusion": self.confusion.tolist() if self.confusion is not None else None,
        }


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def metrics(cm: np.ndarray) -> MetricsReport:
    cm = np.asarray(cm, dtype=np.int64)
    total = int(cm.sum())
    if total < 1:
        raise ValueError("empty confusion matrix")
    c = cm.shape[0]
    tp = np.diag(cm).astype(np.float64)
    support = cm.sum(axis=1)
    predicted = cm.sum(axis=0)

    precision = [_safe_div(tp[k], float(predicted[k])) for k in range(c)]
    recall = [_safe_div(tp[k], float(support[k])) for k in range(c)]
    f1 = [_safe_div(2.0 * precision[k] * recall[k], precision[k] + recall[k])
          for k in range(c)]

    accuracy = float(tp.sum()) / total
    weighted_precision = float(sum(int(support[k]) * precision[k] for k in range(c))) / total
    # identical count arithmetic to accuracy: sum_k s_k * (TP_k / s_k) = sum TP
    weighted_recall = float(tp.sum()) / total
    weighted_f1 = float(sum(int(support[k]) * f1[k] for k in range(c))) / total

    return MetricsReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        support=[int(s) for s in support],
        weighted_precision=weighted_precision,
        weighted_recall=weighted_recall,
        weighted_f1=weighted_f1,
        confusion=cm,
    )


def render_confusion(cm: np.ndarray, class_names: list[str]) -> str:
    """Plain-text confusion matrix (rows true, columns predicted)."""
    cm = np.asarray(cm)
    width = max(max(len(n) for n in class_names), len(str(int(cm.max()))) if cm.size else 1, 4)
    header = " " * (width + 7) + " ".join(f"{n:>{width}}" for n in class_names)
    lines = [header]
    for name, row in zip(class_names, cm):
        cells = " ".join(f"{int(v):>{width}}" for v in row)
        lines.append(f"true {name:>{width}}  {cells}")
    return "\n".join(lines)
