import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(a), np.abs(b))
    diff = np.abs(a - b)
    return np.where(scale > 0, diff / np.maximum(scale, 1e-300), diff)


def assert_rel_close(actual, expected, tol, label=""):
    err = rel_err(actual, expected)
    worst = float(np.max(err)) if err.size else 0.0
    assert worst <= tol, f"{label} relative error {worst:.3e} > {tol:.1e}"
