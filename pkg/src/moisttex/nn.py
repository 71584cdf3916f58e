"""Minimal dense-network engine with manual backpropagation.

Networks are plain values: a list of dense layers (weights, biases, one of
relu / softmax / sigmoid / identity). Backward passes use the fused
convention for the terminal layer: when the last activation is softmax or
sigmoid, the supplied output gradient is interpreted as the gradient with
respect to the pre-activation logits (for softmax + cross-entropy and
sigmoid + binary cross-entropy this is (prediction - target) / batch).
All math runs in double precision; training is deterministic given a seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

ACTIVATIONS = ("relu", "softmax", "sigmoid", "identity")

PROB_EPS = 1e-12


@dataclass
class DenseLayer:
    weights: np.ndarray  # (out_dim, in_dim)
    biases: np.ndarray  # (out_dim,)
    activation: str

    def __post_init__(self):
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.biases = np.asarray(self.biases, dtype=np.float64)
        if self.weights.ndim != 2 or self.biases.shape != (self.weights.shape[0],):
            raise ValueError("layer shapes inconsistent")

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


@dataclass
class Network:
    layers: list[DenseLayer]

    def __post_init__(self):
        for a, b in zip(self.layers, self.layers[1:]):
            if a.out_dim != b.in_dim:
                raise ValueError("layer dimensions do not chain")
        for layer in self.layers[:-1]:
            if layer.activation in ("softmax", "sigmoid"):
                raise ValueError("softmax/sigmoid allowed only on the final layer")

    @property
    def in_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.layers[-1].out_dim

    def copy(self) -> "Network":
        return Network([DenseLayer(l.weights.copy(), l.biases.copy(), l.activation)
                        for l in self.layers])


def _apply_activation(z: np.ndarray, kind: str) -> np.ndarray:
    if kind == "relu":
        return np.maximum(z, 0.0)
    if kind == "softmax":
        shifted = z - z.max(axis=1, keepdims=True)
        e = np.exp(shifted)
        return e / e.sum(axis=1, keepdims=True)
    if kind == "sigmoid":
        return 1.0 / (1.0 + np.exp(-z))
    return z


def forward(net: Network, x: np.ndarray) -> list[np.ndarray]:
    """Per-layer activations; the first entry is the input, the last the output."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != net.in_dim:
        raise ValueError(f"input width {x.shape} does not match net input {net.in_dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite network input")
    acts = [x]
    for layer in net.layers:
        z = acts[-1] @ layer.weights.T + layer.biases
        acts.append(_apply_activation(z, layer.activation))
    if single:
        acts = [a[0] for a in acts]
    return acts


def backward(net: Network, acts: list[np.ndarray], out_grad: np.ndarray):
    """Parameter gradients and input gradient for a batch forward pass.

    ``out_grad`` is d(loss)/d(output), except when the final activation is
    softmax or sigmoid: then it is d(loss)/d(logits) (fused convention).
    """
    single = acts[0].ndim == 1
    if single:
        acts = [a[None, :] for a in acts]
        out_grad = np.asarray(out_grad, dtype=np.float64)[None, :]
    else:
        out_grad = np.asarray(out_grad, dtype=np.float64)
    if len(acts) != len(net.layers) + 1:
        raise ValueError("activations do not match network depth")
    if out_grad.shape != acts[-1].shape:
        raise ValueError("output gradient shape mismatch")

    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(net.layers)
    delta = out_grad
    for i in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[i]
        out_act = acts[i + 1]
        if i == len(net.layers) - 1 and layer.activation in ("softmax", "sigmoid"):
            pass  # fused: delta already holds the logit gradient
        elif layer.activation == "relu":
            delta = delta * (out_act > 0)
        # identity: delta unchanged
        gw = delta.T @ acts[i]
        gb = delta.sum(axis=0)
        grads[i] = (gw, gb)
        delta = delta @ layer.weights
    if single:
        delta = delta[0]
    return grads, delta


def grl_backward(grad: np.ndarray, lam: float) -> np.ndarray:
    """Gradient reversal: identity forward, -lam * grad backward."""
    return -lam * np.asarray(grad, dtype=np.float64)


def cross_entropy(probs: np.ndarray, label: int) -> float:
    """-ln(p[label]) with probabilities clamped to [1e-12, 1]."""
    p = np.clip(np.asarray(probs, dtype=np.float64), PROB_EPS, 1.0)
    return float(-np.log(p[label]))


def mean_cross_entropy(probs: np.ndarray, labels: np.ndarray) -> float:
    p = np.clip(probs[np.arange(len(labels)), labels], PROB_EPS, 1.0)
    return float(np.mean(-np.log(p)))


def binary_cross_entropy(p: float, d: int) -> float:
    p = min(max(float(p), PROB_EPS), 1.0 - PROB_EPS)
    return float(-(d * np.log(p) + (1 - d) * np.log(1.0 - p)))


def mean_binary_cross_entropy(p: np.ndarray, d: np.ndarray) -> float:
    p = np.clip(np.asarray(p, dtype=np.float64), PROB_EPS, 1.0 - PROB_EPS)
    d = np.asarray(d, dtype=np.float64)
    return float(np.mean(-(d * np.log(p) + (1.0 - d) * np.log(1.0 - p))))


def init_network(sizes: list[int], activations: list[str], seed: int) -> Network:
    """Glorot-uniform weights, zero biases, from a seeded generator."""
    if len(sizes) < 2 or len(activations) != len(sizes) - 1:
        raise ValueError("need n sizes and n-1 activations")
    rng = np.random.default_rng(seed)
    layers = []
    for fan_in, fan_out, act in zip(sizes, sizes[1:], activations):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        w = rng.uniform(-limit, limit, size=(fan_out, fan_in))
        layers.append(DenseLayer(weights=w, biases=np.zeros(fan_out), activation=act))
    return Network(layers)


@dataclass
class AdamState:
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: list = field(default_factory=list)
    v: list = field(default_factory=list)


def init_adam(net: Network, lr: float = 1e-3, beta1: float = 0.9,
              beta2: float = 0.999, eps: float = 1e-8) -> AdamState:
    state = AdamState(lr=lr, beta1=beta1, beta2=beta2, eps=eps)
    for layer in net.layers:
        state.m.append((np.zeros_like(layer.weights), np.zeros_like(layer.biases)))
        state.v.append((np.zeros_like(layer.weights), np.zeros_like(layer.biases)))
    return state


def adam_step(state: AdamState, net: Network, grads) -> None:
    """One bias-corrected Adam update, in place."""
    if len(grads) != len(net.layers):
        raise ValueError("gradient list does not match network depth")
    state.step += 1
    t = state.step
    b1, b2 = state.beta1, state.beta2
    scale = state.lr * np.sqrt(1.0 - b2 ** t) / (1.0 - b1 ** t)
    for i, layer in enumerate(net.layers):
        gw, gb = grads[i]
        if gw.shape != layer.weights.shape or gb.shape != layer.biases.shape:
            raise ValueError("gradient shape mismatch")
        mw, mb = state.m[i]
        vw, vb = state.v[i]
        mw[...] = b1 * mw + (1 - b1) * gw
        mb[...] = b1 * mb + (1 - b1) * gb
        vw[...] = b2 * vw + (1 - b2) * gw * gw
        vb[...] = b2 * vb + (1 - b2) * gb * gb
        layer.weights -= scale * mw / (np.sqrt(vw) + state.eps)
        layer.biases -= scale * mb / (np.sqrt(vb) + state.eps)


def net_to_dict(net: Network) -> list[dict]:
    return [
        {
            "inDim": layer.in_dim,
            "outDim": layer.out_dim,
            "activation": layer.activation,
            "weights": [float(v) for v in layer.weights.ravel()],
            "biases": [float(v) for v in layer.biases],
        }
        for layer in net.layers
    ]


def net_from_dict(records: list[dict]) -> Network:
    layers = []
    for rec in records:
        w = np.array(rec["weights"], dtype=np.float64).reshape(rec["outDim"], rec["inDim"])
        b = np.array(rec["biases"], dtype=np.float64)
        layers.append(DenseLayer(weights=w, biases=b, activation=rec["activation"]))
    return Network(layers)


def net_to_json(net: Network) -> str:
    return json.dumps(net_to_dict(net))


def net_from_json(text: str) -> Network:
    return net_from_dict(json.loads(text))
