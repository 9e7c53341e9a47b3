"""Exact factories for the state families used in the experiments."""

import math

import numpy as np

from . import qcore


def _check_theta(theta_deg: float) -> float:
    if not 0.0 <= theta_deg <= 45.0:
        raise ValueError(f"theta must be in [0, 45] degrees, got {theta_deg}")
    return math.radians(2.0 * theta_deg)


def family1(theta_deg: float) -> np.ndarray:
    """cos(2t)|HH> + sin(2t)|VV>, with t the preparation angle in degrees."""
    t2 = _check_theta(theta_deg)
    psi = np.zeros(4, dtype=complex)
    psi[0] = math.cos(t2)
    psi[3] = math.sin(t2)
    return psi


def family2(theta_deg: float) -> np.ndarray:
    """(cos(2t)|HH> + cos(2t)|HV> + sin(2t)|VH> - sin(2t)|VV>) / sqrt(2)."""
    t2 = _check_theta(theta_deg)
    c, s = math.cos(t2), math.sin(t2)
    return np.array([c, c, s, -s], dtype=complex) / math.sqrt(2.0)


def make_pure(family: int, theta_deg: float) -> np.ndarray:
    if family == 1:
        return family1(theta_deg)
    if family == 2:
        return family2(theta_deg)
    raise ValueError(f"family must be 1 or 2, got {family}")


def singlet() -> np.ndarray:
    """(|HV> - |VH>) / sqrt(2)."""
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)


def make_werner(p: float) -> np.ndarray:
    """p |S><S| + (1-p) I/4 with S the singlet; entangled iff p > 1/3."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    return p * qcore.projector(singlet()) + (1.0 - p) * np.eye(4, dtype=complex) / 4.0


def maximally_coherent(d: int) -> np.ndarray:
    """Uniform-amplitude state sqrt(1/d) sum_i |i>, d in {2, 4}."""
    if d not in (2, 4):
        raise ValueError(f"d must be 2 or 4, got {d}")
    return np.full(d, 1.0 / math.sqrt(d), dtype=complex)


def depolarize(rho, epsilon: float) -> np.ndarray:
    """Mix a state with the maximally mixed one: (1-eps) rho + eps I/d.

    Preparation-imperfection knob; epsilon=0 is the ideal factory output.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    rho = qcore.ensure_density(rho)
    d = rho.shape[0]
    return (1.0 - epsilon) * rho + epsilon * np.eye(d, dtype=complex) / d
