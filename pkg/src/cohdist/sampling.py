"""Seeded random-state generators used by the property tests."""

import numpy as np


def random_pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-like pure state: normalized vector of complex normal amplitudes."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Full-rank random density matrix G G^dag / tr(G G^dag)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / m.trace().real


def random_bloch(rng: np.random.Generator) -> tuple[float, float, float]:
    """Uniform direction on the Bloch sphere."""
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return tuple(v / norm)
