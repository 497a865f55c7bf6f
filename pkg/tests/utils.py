"""Random test data."""

import numpy as np

from rgflow.tensor3 import SymBilinear3


def random_sym(rng, shape=()):
    """Random symmetric forms with entries in [-1, 1]."""
    return SymBilinear3(rng.uniform(-1.0, 1.0, size=tuple(shape) + (6,)))


def random_metric(rng, shape=()):
    """Random positive definite metrics close to the identity."""
    return SymBilinear3.identity(shape) + 0.3 * random_sym(rng, shape)


def random_rotated_ricci(rng):
    """Random Ricci tensor with R23 = 0."""
    c = rng.uniform(-1.0, 1.0, size=6)
    c[4] = 0.0
    return SymBilinear3(c)


def rotation(rng):
    """Random rotation matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
