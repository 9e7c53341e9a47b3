"""Independent closed-form oracles shared by the tests.

Everything here is computed directly from elementary formulas (binary
entropy, explicit eigenvalues, index arithmetic) so it stays independent of
the library code paths it is used to check.
"""

import math

import numpy as np


def shannon(probs) -> float:
    return float(sum(-p * math.log2(p) for p in probs if p > 0.0))


def h2(x: float) -> float:
    """Binary entropy in bits."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * math.log2(x) + (1.0 - x) * math.log2(1.0 - x))


def family1_after(theta_deg: float) -> float:
    """Post-assistance coherence for the first pure family: H2(cos^2 2t)."""
    return h2(math.cos(math.radians(2.0 * theta_deg)) ** 2)


def family2_before(theta_deg: float) -> float:
    """Bob-marginal coherence for the second pure family."""
    c = math.cos(math.radians(4.0 * theta_deg))
    total = 0.0
    for s in (1.0 + c, 1.0 - c):
        if s > 0.0:
            total += s * math.log2(s)
    return 0.5 * total


def werner_after(p: float) -> float:
    """Post-assistance coherence of the Werner family."""
    total = (1.0 + p) * math.log2(1.0 + p)
    if p < 1.0:
        total += (1.0 - p) * math.log2(1.0 - p)
    return 0.5 * total


def werner_qi_bound(p: float) -> float:
    """Quantum-incoherent relative entropy of the Werner family."""
    total = (1.0 + 3.0 * p) * math.log2(1.0 + 3.0 * p) - 2.0 * (1.0 + p) * math.log2(1.0 + p)
    if p < 1.0:
        total += (1.0 - p) * math.log2(1.0 - p)
    return 0.25 * total


def werner_negativity(p: float) -> float:
    return max(0.0, (3.0 * p - 1.0) / 4.0)


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Brute-force index formula: out[(i,k),(j,l)] = a[i,j] * b[k,l]."""
    out = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k, 2 * j + l] = a[i, j] * b[k, l]
    return out


def bloch_rho(nx: float, ny: float, nz: float) -> np.ndarray:
    """Qubit state (I + n . sigma) / 2 written out entrywise."""
    return 0.5 * np.array(
        [[1.0 + nz, nx - 1j * ny], [nx + 1j * ny, 1.0 - nz]], dtype=complex
    )


def binomial_cdf_exact(n: int, p: float, k: int) -> float:
    """Exact-arithmetic-ish binomial CDF via math.comb."""
    return float(sum(math.comb(n, j) * p**j * (1.0 - p) ** (n - j) for j in range(k + 1)))
