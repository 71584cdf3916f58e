"""Adversarial domain-adaptation trainer with an AMI checkpoint callback.

Three dense networks share a feature encoder: F maps input features to a
32-dim representation, G classifies moisture from it, D discriminates
source (domain label 0) from target (1). Each step backpropagates
L_total = L_label + lambda * L_domain; the domain-branch gradient entering
F passes through the gradient reversal, so F is pushed to confuse D while
G and D descend their own losses.

After the warm-up epochs, every epoch is scored by clustering the encoded
target features with KMeans and comparing the cluster assignment to the
classifier's predictions via adjusted mutual information; the model with
the best score is checkpointed and returned.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .classifiers import Standardizer
from .cluster import ami, kmeans
from .data import CLASS_NAMES, Dataset
from .nn import (
    Network,
    adam_step,
    backward,
    forward,
    grl_backward,
    init_adam,
    init_network,
    mean_binary_cross_entropy,
    mean_cross_entropy,
    net_from_dict,
    net_to_dict,
)

ENCODING_DIM = 32
HIDDEN_DIM = 16


@dataclass
class AdaptConfig:
    epochs: int = 30
    batch_size: int = 2
    lam: float = 0.5
    warmup_epochs: int = 15
    clusters: int = 3
    seed: int = 42
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    kmeans_restarts: int = 10

    def __post_init__(self):
        if self.warmup_epochs >= self.epochs:
            raise ValueError("warmup_epochs must be smaller than epochs")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        if self.clusters < 2:
            raise ValueError("clusters must be at least 2")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")


@dataclass
class AdaptModel:
    feature_net: Network  # F: features -> 32, ReLU
    label_net: Network  # G: 32 -> 16 ReLU -> 3 softmax
    domain_net: Network  # D: 32 -> 16 ReLU -> 1 sigmoid
    lam: float
    schema: list[str]
    standardizer: Standardizer


@dataclass
class EpochRecord:
    epoch: int
    label_loss: float
    domain_loss: float
    total_loss: float
    ami: float | None
    checkpointed: bool

    def to_dict(self) -> dict:
        return {
            "epoch": self.epoch,
            "labelLoss": self.label_loss,
            "domainLoss": self.domain_loss,
            "totalLoss": self.total_loss,
            "ami": self.ami,
            "checkpointed": self.checkpointed,
        }


@dataclass
class TrainReport:
    config: AdaptConfig
    records: list[EpochRecord] = field(default_factory=list)
    best_epoch: int = -1
    best_ami: float = -math.inf

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "records": [r.to_dict() for r in self.records],
            "bestEpoch": self.best_epoch,
            "bestAmi": self.best_ami,
        }


def init_adapt_nets(feature_dim: int, n_classes: int, seed: int):
    f_net = init_network([feature_dim, ENCODING_DIM], ["relu"], seed)
    g_net = init_network([ENCODING_DIM, HIDDEN_DIM, n_classes],
                         ["relu", "softmax"], seed + 1)
    d_net = init_network([ENCODING_DIM, HIDDEN_DIM, 1], ["relu", "sigmoid"], seed + 2)
    return f_net, g_net, d_net


def step_gradients(f_net: Network, g_net: Network, d_net: Network,
                   xs: np.ndarray, ys: np.ndarray, xt: np.ndarray,
                   lam: float, use_grl: bool = True) -> dict:
    """Losses and per-network gradients of one paired mini-batch.

    The label and domain contributions into F are returned separately so
    the reversal behaviour is directly observable; ``use_grl=False``
    replaces the reversal with identity (diagnostics only).
    """
    n_s, n_t = len(xs), len(xt)
    acts_f_s = forward(f_net, xs)
    acts_f_t = forward(f_net, xt)
    fs, ft = acts_f_s[-1], acts_f_t[-1]

    acts_g = forward(g_net, fs)
    probs = acts_g[-1]
    label_loss = mean_cross_entropy(probs, ys)
    grad_logits_g = probs.copy()
    grad_logits_g[np.arange(n_s), ys] -= 1.0
    grads_g, grad_fs_label = backward(g_net, acts_g, grad_logits_g / n_s)

    f_all = np.vstack([fs, ft])
    acts_d = forward(d_net, f_all)
    p_dom = acts_d[-1][:, 0]
    d_true = np.concatenate([np.zeros(n_s), np.ones(n_t)])
    domain_loss = mean_binary_cross_entropy(p_dom, d_true)
    # lambda enters here: all parameters see d(L_label + lam * L_domain)
    grad_logit_d = (lam * (p_dom - d_true) / (n_s + n_t))[:, None]
    grads_d, grad_f_dom = backward(d_net, acts_d, grad_logit_d)

    reversed_grad = grl_backward(grad_f_dom, lam) if use_grl else grad_f_dom
    grads_f_label, _ = backward(f_net, acts_f_s, grad_fs_label)
    grads_f_dom_s, _ = backward(f_net, acts_f_s, reversed_grad[:n_s])
    grads_f_dom_t, _ = backward(f_net, acts_f_t, reversed_grad[n_s:])
    grads_f_domain = [(a[0] + b[0], a[1] + b[1])
                      for a, b in zip(grads_f_dom_s, grads_f_dom_t)]
    grads_f = [(a[0] + b[0], a[1] + b[1])
               for a, b in zip(grads_f_label, grads_f_domain)]

    total_loss = label_loss + lam * domain_loss
    return {
        "grads_f": grads_f,
        "grads_g": grads_g,
        "grads_d": grads_d,
        "grads_f_label": grads_f_label,
        "grads_f_domain": grads_f_domain,
        "label_loss": label_loss,
        "domain_loss": domain_loss,
        "total_loss": total_loss,
    }


def encode_standardized(model: AdaptModel, x_std: np.ndarray) -> np.ndarray:
    return forward(model.feature_net, np.atleast_2d(x_std))[-1]


def encode(model: AdaptModel, features: np.ndarray) -> np.ndarray:
    """32-dim representation of raw (unstandardized) feature rows."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if features.shape[1] != len(model.schema):
        raise ValueError("feature width does not match the model schema")
    return encode_standardized(model, model.standardizer.transform(features))


def predict(model: AdaptModel, features: np.ndarray):
    """Class probabilities and argmax class per raw feature row."""
    enc = encode(model, features)
    probs = forward(model.label_net, enc)[-1]
    return probs, np.argmax(probs, axis=1)


def ami_callback(model: AdaptModel, target_std: np.ndarray, cfg: AdaptConfig,
                 epoch: int = 0) -> float:
    """AMI between classifier predictions and KMeans pseudo-labels."""
    if len(target_std) == 0:
        raise ValueError("empty target set")
    enc = encode_standardized(model, target_std)
    pseudo = kmeans(enc, cfg.clusters, seed=cfg.seed + epoch,
                    restarts=cfg.kmeans_restarts).assignments
    preds = np.argmax(forward(model.label_net, enc)[-1], axis=1)
    return ami(preds, pseudo)


def _cycled_batch(perm: np.ndarray, step: int, batch: int) -> np.ndarray:
    pos = np.arange(step * batch, (step + 1) * batch)
    return perm[pos % len(perm)]


def train_adapt(source: Dataset, target: Dataset, cfg: AdaptConfig | None = None):
    """Adversarial training of F/G/D; returns the AMI-checkpointed model."""
    cfg = cfg or AdaptConfig()
    if list(source.schema) != list(target.schema):
        raise ValueError("source and target feature schemas differ")
    if len(source) == 0 or len(target) == 0:
        raise ValueError("source and target must be non-empty")
    ys = source.y
    if set(ys.tolist()) != set(range(len(CLASS_NAMES))):
        raise ValueError("source must contain all three classes")

    xs_raw, xt_raw = source.X, target.X
    standardizer = Standardizer.fit(np.vstack([xs_raw, xt_raw]))
    xs = standardizer.transform(xs_raw)
    xt = standardizer.transform(xt_raw)

    f_net, g_net, d_net = init_adapt_nets(xs.shape[1], len(CLASS_NAMES), cfg.seed)
    model = AdaptModel(feature_net=f_net, label_net=g_net, domain_net=d_net,
                       lam=cfg.lam, schema=list(source.schema),
                       standardizer=standardizer)
    opts = [init_adam(net, lr=cfg.lr, beta1=cfg.beta1, beta2=cfg.beta2, eps=cfg.eps)
            for net in (f_net, g_net, d_net)]

    report = TrainReport(config=cfg)
    best_snapshot = None
    steps = math.ceil(max(len(xs), len(xt)) / cfg.batch_size)

    for epoch in range(1, cfg.epochs + 1):
        rng = np.random.default_rng([cfg.seed, epoch])
        perm_s = rng.permutation(len(xs))
        perm_t = rng.permutation(len(xt))
        label_losses = np.empty(steps)
        domain_losses = np.empty(steps)
        total_losses = np.empty(steps)
        for step in range(steps):
            bs = _cycled_batch(perm_s, step, cfg.batch_size)
            bt = _cycled_batch(perm_t, step, cfg.batch_size)
            out = step_gradients(f_net, g_net, d_net, xs[bs], ys[bs], xt[bt], cfg.lam)
            for net, opt, grads in zip((f_net, g_net, d_net), opts,
                                       (out["grads_f"], out["grads_g"], out["grads_d"])):
                adam_step(opt, net, grads)
            label_losses[step] = out["label_loss"]
            domain_losses[step] = out["domain_loss"]
            total_losses[step] = out["total_loss"]

        record = EpochRecord(
            epoch=epoch,
            label_loss=float(label_losses.mean()),
            domain_loss=float(domain_losses.mean()),
            total_loss=float(total_losses.mean()),
            ami=None,
            checkpointed=False,
        )
        if epoch > cfg.warmup_epochs:
            score = ami_callback(model, xt, cfg, epoch=epoch)
            record.ami = float(score)
            if score > report.best_ami:
                report.best_ami = float(score)
                report.best_epoch = epoch
                best_snapshot = (f_net.copy(), g_net.copy(), d_net.copy())
                record.checkpointed = True
        report.records.append(record)

    if best_snapshot is not None:
        model.feature_net, model.label_net, model.domain_net = best_snapshot
    return model, report


# ---------------------------------------------------------------------------
# serialization


def model_to_dict(model: AdaptModel) -> dict:
    return {
        "schema": list(model.schema),
        "lambda": model.lam,
        "F": net_to_dict(model.feature_net),
        "G": net_to_dict(model.label_net),
        "D": net_to_dict(model.domain_net),
        "standardizer": model.standardizer.to_dict(),
    }


def model_from_dict(d: dict) -> AdaptModel:
    return AdaptModel(
        feature_net=net_from_dict(d["F"]),
        label_net=net_from_dict(d["G"]),
        domain_net=net_from_dict(d["D"]),
        lam=float(d["lambda"]),
        schema=list(d["schema"]),
        standardizer=Standardizer.from_dict(d["standardizer"]),
    )


def save_model(path, model: AdaptModel) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model)) + "\n")


def load_model(path) -> AdaptModel:
    return model_from_dict(json.loads(Path(path).read_text()))
