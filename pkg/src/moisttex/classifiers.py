"""Baseline classifiers and the stratified cross-validation harness.

Models share a tiny protocol: ``fit(X, y)`` then ``predict_proba(X)``
returning one simplex row per sample. Ties everywhere break toward the
lowest index so runs are reproducible. The cross-validation harness refits
the feature standardizer on each training fold (validation folds never see
training statistics).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .metrics import confusion, metrics
from .nn import (
    adam_step,
    backward,
    forward,
    init_adam,
    init_network,
)


# ---------------------------------------------------------------------------
# standardization


@dataclass
class Standardizer:
    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValueError("need a non-empty 2-D feature matrix")
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        std = np.where(std == 0, 1.0, std)  # constant columns map to zero
        return cls(mean=mean, std=std)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": [float(v) for v in self.mean],
                "std": [float(v) for v in self.std]}

    @classmethod
    def from_dict(cls, d: dict) -> "Standardizer":
        return cls(mean=np.array(d["mean"], dtype=np.float64),
                   std=np.array(d["std"], dtype=np.float64))


def fit_standardizer(train: Dataset) -> Standardizer:
    return Standardizer.fit(train.X)


def apply_standardizer(std: Standardizer, ds: Dataset) -> Dataset:
    X = std.transform(ds.X)
    samples = [
        type(s)(id=s.id, features=X[i], label=s.label, domain=s.domain)
        for i, s in enumerate(ds.samples)
    ]
    return Dataset(schema=list(ds.schema), samples=samples)


# ---------------------------------------------------------------------------
# stratified K-fold


def stratified_kfold(y: np.ndarray, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Index splits with per-class fold counts differing by at most one."""
    y = np.asarray(y)
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = np.random.default_rng(seed)
    fold_of = np.empty(len(y), dtype=np.int64)
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        if len(idx) < k:
            raise ValueError(f"class {cls} has {len(idx)} samples, fewer than k={k}")
        rng.shuffle(idx)
        fold_of[idx] = np.arange(len(idx)) % k
    splits = []
    for f in range(k):
        val = np.flatnonzero(fold_of == f)
        train = np.flatnonzero(fold_of != f)
        splits.append((train, val))
    return splits


# ---------------------------------------------------------------------------
# models


class KnnModel:
    def __init__(self, k: int = 5):
        self.k = k

    def fit(self, X, y):
        self.X = np.asarray(X, dtype=np.float64)
        self.y = np.asarray(y, dtype=np.int64)
        if len(self.X) == 0:
            raise ValueError("empty training set")
        if self.k > len(self.X):
            raise ValueError("k exceeds training size")
        self.n_classes = int(self.y.max()) + 1
        return self

    def predict_proba(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        out = np.empty((len(X), self.n_classes))
        for i, x in enumerate(X):
            d = np.sum((self.X - x) ** 2, axis=1)
            nearest = np.argsort(d, kind="stable")[:self.k]  # ties -> lower index
            counts = np.bincount(self.y[nearest], minlength=self.n_classes)
            out[i] = counts / self.k
        return out


class LogisticRegressionModel:
    """Multinomial softmax regression with L2 penalty, full-batch descent."""

    def __init__(self, reg_lambda: float = 1.0, max_iter: int = 5000, tol: float = 1e-6):
        self.reg_lambda = reg_lambda
        self.max_iter = max_iter
        self.tol = tol

    def _objective(self, X, Y):
        logits = X @ self.W.T + self.b
        logits -= logits.max(axis=1, keepdims=True)
        log_probs = logits - np.log(np.exp(logits).sum(axis=1, keepdims=True))
        ce = -np.mean(np.sum(Y * log_probs, axis=1))
        return ce + self.reg_lambda * np.sum(self.W ** 2) / (2 * len(X))

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        n, d = X.shape
        c = int(y.max()) + 1
        self.W = np.zeros((c, d))
        self.b = np.zeros(c)
        Y = np.zeros((n, c))
        Y[np.arange(n), y] = 1.0

        lr = 1.0
        current = self._objective(X, Y)
        for _ in range(self.max_iter):
            p = self.predict_proba(X)
            gw = (p - Y).T @ X / n + self.reg_lambda * self.W / n
            gb = (p - Y).mean(axis=0)
            gnorm = np.sqrt(np.sum(gw ** 2) + np.sum(gb ** 2))
            if gnorm < self.tol:
                break
            # monotone step: halve the rate until the objective decreases
            for _ in range(60):
                w_old, b_old = self.W.copy(), self.b.copy()
                self.W -= lr * gw
                self.b -= lr * gb
                trial = self._objective(X, Y)
                if trial <= current:
                    current = trial
                    lr = min(lr * 1.2, 64.0)
                    break
                self.W, self.b = w_old, b_old
                lr *= 0.5
            else:
                break
        return self

    def predict_proba(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        logits = X @ self.W.T + self.b
        logits -= logits.max(axis=1, keepdims=True)
        e = np.exp(logits)
        return e / e.sum(axis=1, keepdims=True)


class GaussianNbModel:
    """Per-class diagonal Gaussians with a pooled-variance floor."""

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.n_classes = int(y.max()) + 1
        pooled = X.var(axis=0)
        floor = 1e-9 * float(pooled.max()) if pooled.max() > 0 else 1e-9
        self.means = np.empty((self.n_classes, X.shape[1]))
        self.vars = np.empty((self.n_classes, X.shape[1]))
        self.log_priors = np.empty(self.n_classes)
        for k in range(self.n_classes):
            members = X[y == k]
            if len(members) == 0:
                raise ValueError(f"class {k} absent from training data")
            self.means[k] = members.mean(axis=0)
            self.vars[k] = np.maximum(members.var(axis=0), floor)
            self.log_priors[k] = np.log(len(members) / len(X))
        return self

    def predict_proba(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        log_post = np.empty((len(X), self.n_classes))
        for k in range(self.n_classes):
            ll = -0.5 * (np.log(2 * np.pi * self.vars[k])
                         + (X - self.means[k]) ** 2 / self.vars[k]).sum(axis=1)
            log_post[:, k] = self.log_priors[k] + ll
        log_post -= log_post.max(axis=1, keepdims=True)
        p = np.exp(log_post)
        return p / p.sum(axis=1, keepdims=True)


class MlpModel:
    """Single hidden layer (ReLU) + softmax, trained with Adam."""

    def __init__(self, hidden: int = 100, epochs: int = 200, batch_size: int = 32,
                 lr: float = 1e-3, seed: int = 0):
        self.hidden = hidden
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.seed = seed

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        n, d = X.shape
        c = int(y.max()) + 1
        self.net = init_network([d, self.hidden, c], ["relu", "softmax"], self.seed)
        state = init_adam(self.net, lr=self.lr)
        rng = np.random.default_rng(self.seed)
        Y = np.zeros((n, c))
        Y[np.arange(n), y] = 1.0
        for _ in range(self.epochs):
            order = rng.permutation(n)
            for start in range(0, n, self.batch_size):
                idx = order[start:start + self.batch_size]
                acts = forward(self.net, X[idx])
                grad_logits = (acts[-1] - Y[idx]) / len(idx)
                grads, _ = backward(self.net, acts, grad_logits)
                adam_step(state, self.net, grads)
        return self

    def predict_proba(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return forward(self.net, X)[-1]


def soft_vote(probas) -> tuple[int, np.ndarray]:
    """Average member distributions; argmax with lowest-index tie-break."""
    if len(probas) == 0:
        raise ValueError("no member distributions to vote on")
    stacked = np.asarray(probas, dtype=np.float64)
    if stacked.ndim != 2:
        raise ValueError("member distributions must share one length")
    avg = stacked.mean(axis=0)
    return int(np.argmax(avg)), avg


class VotingModel:
    """Soft-voting ensemble over member models."""

    def __init__(self, members=("logreg", "gnb", "mlp"), seed: int = 0):
        self.member_names = list(members)
        self.seed = seed

    def fit(self, X, y):
        self.members = [make_model(name, seed=self.seed + i)
                        for i, name in enumerate(self.member_names)]
        for m in self.members:
            m.fit(X, y)
        return self

    def predict_proba(self, X):
        stacked = np.array([m.predict_proba(X) for m in self.members])
        return stacked.mean(axis=0)


MODEL_NAMES = ("knn", "logreg", "gnb", "mlp", "voting")


def make_model(name: str, seed: int = 0, **params):
    if name == "knn":
        return KnnModel(**params)
    if name == "logreg":
        return LogisticRegressionModel(**params)
    if name == "gnb":
        return GaussianNbModel(**params)
    if name == "mlp":
        return MlpModel(seed=seed, **params)
    if name == "voting":
        return VotingModel(seed=seed, **params)
    raise ValueError(f"unknown model {name!r}")


def model_hyperparameters(name: str) -> dict:
    """Defaults recorded in cross-validation reports for transparency."""
    defaults = {
        "knn": {"k": 5},
        "logreg": {"reg_lambda": 1.0, "max_iter": 5000, "tol": 1e-6},
        "gnb": {},
        "mlp": {"hidden": 100, "epochs": 200, "batch_size": 32, "lr": 1e-3},
        "voting": {"members": ["logreg", "gnb", "mlp"]},
    }
    return defaults[name]


# ---------------------------------------------------------------------------
# cross-validation


AGGREGATED_METRICS = ("accuracy", "precision", "recall", "f1")


def cross_validate(ds: Dataset, model_name: str, k: int = 4, seed: int = 42,
                   **params) -> dict:
    """Per-fold fit/evaluate with a refit standardizer; mean and stdev report."""
    y = ds.y
    X = ds.X
    splits = stratified_kfold(y, k, seed)
    per_fold = []
    folds_meta = []
    for f, (train_idx, val_idx) in enumerate(splits):
        std = Standardizer.fit(X[train_idx])
        model = make_model(model_name, seed=seed + f, **params)
        model.fit(std.transform(X[train_idx]), y[train_idx])
        probs = model.predict_proba(std.transform(X[val_idx]))
        preds = np.argmax(probs, axis=1)
        rep = metrics(confusion(y[val_idx], preds, int(y.max()) + 1))
        per_fold.append({
            "accuracy": rep.accuracy,
            "precision": rep.weighted_precision,
            "recall": rep.weighted_recall,
            "f1": rep.weighted_f1,
        })
        folds_meta.append({"fold": f, "trainSize": len(train_idx),
                           "valSize": len(val_idx)})
    mean = {m: float(np.mean([p[m] for p in per_fold])) for m in AGGREGATED_METRICS}
    stdev = {m: float(np.std([p[m] for p in per_fold])) for m in AGGREGATED_METRICS}
    return {
        "model": model_name,
        "folds": k,
        "seed": seed,
        "hyperparameters": {**model_hyperparameters(model_name), **params},
        "perFold": per_fold,
        "foldSizes": folds_meta,
        "mean": mean,
        "stdev": stdev,
    }
