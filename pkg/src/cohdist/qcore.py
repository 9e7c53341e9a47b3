"""Dense complex-matrix algebra for one- and two-qubit density operators.

Conventions used throughout the package:

* two-qubit indices are ordered (Alice, Bob), i.e. bit 0 (most significant)
  is Alice, so the basis ordering is |HH>, |HV>, |VH>, |VV>;
* the incoherent reference basis is the computational {|H>, |V>} basis;
* entropies are in bits (log base 2) and 0*log(0) = 0.
"""

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10

KET_H = np.array([1.0, 0.0], dtype=complex)
KET_V = np.array([0.0, 1.0], dtype=complex)
KET_X_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_X_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
KET_Y_PLUS = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
KET_Y_MINUS = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class InvalidStateError(ValueError):
    """A matrix or vector violates a quantum-state invariant."""


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    ok: bool


def projector(psi) -> np.ndarray:
    """|psi><psi| for a state vector."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def ensure_state_vector(psi, dim: int | None = None) -> np.ndarray:
    """Return psi as a complex array, or raise if it is not a unit vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.shape[0] not in (2, 4):
        raise InvalidStateError(f"expected a state vector of dim 2 or 4, got shape {psi.shape}")
    if dim is not None and psi.shape[0] != dim:
        raise InvalidStateError(f"expected a state vector of dim {dim}, got {psi.shape[0]}")
    norm_sq = float(np.vdot(psi, psi).real)
    if abs(norm_sq - 1.0) > 1e-10:
        raise InvalidStateError(f"state vector is not normalized: |psi|^2 = {norm_sq!r}")
    return psi


def validate_density(rho, tol: float = 1e-10) -> ValidationReport:
    """Measure hermiticity/trace/positivity defects of a candidate density matrix.

    Reporting only: never raises, even on malformed input.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        return ValidationReport(np.inf, np.inf, -np.inf, False)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    trace = float(abs(rho.trace() - 1.0))
    # eigenvalues of the Hermitian part, so the check is defined for any input
    eigs = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    min_eig = float(eigs[0])
    ok = herm <= tol and trace <= tol and min_eig >= -tol
    return ValidationReport(herm, trace, min_eig, ok)


def ensure_density(rho, dim: int | None = None, tol: float = 1e-10) -> np.ndarray:
    """Return rho as a complex array, or raise InvalidStateError."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise InvalidStateError(f"expected a 2x2 or 4x4 density matrix, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise InvalidStateError(f"expected a {dim}x{dim} density matrix, got {rho.shape[0]}x{rho.shape[0]}")
    report = validate_density(rho, tol=tol)
    if not report.ok:
        raise InvalidStateError(f"invalid density matrix: {report}")
    return rho


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two qubit density matrices, Alice as the slow index."""
    a = ensure_density(a, dim=2)
    b = ensure_density(b, dim=2)
    return np.kron(a, b)


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduced density matrix of subsystem `keep` ("A" or "B") of a two-qubit state."""
    rho = ensure_density(rho, dim=4)
    r = rho.reshape(2, 2, 2, 2)  # indices (a, b, a', b')
    if keep == "B":
        return np.trace(r, axis1=0, axis2=2)
    if keep == "A":
        return np.trace(r, axis1=1, axis2=3)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def dephase(rho, scope: str = "full") -> np.ndarray:
    """Remove coherences in the reference basis.

    scope="full" zeroes every off-diagonal entry; scope="B" (two-qubit states
    only) zeroes entries whose Bob index differs while keeping Alice
    coherences.  Both maps are trace preserving and idempotent.
    """
    rho = ensure_density(rho)
    if scope == "full":
        return np.diag(np.diag(rho)).astype(complex)
    if scope == "B":
        if rho.shape[0] != 4:
            raise ValueError("scope='B' requires a two-qubit (4x4) state")
        r = rho.reshape(2, 2, 2, 2)
        out = np.zeros_like(r)
        for b in (0, 1):
            out[:, b, :, b] = r[:, b, :, b]
        return out.reshape(4, 4)
    raise ValueError(f"scope must be 'full' or 'B', got {scope!r}")


def shannon_entropy(probs) -> float:
    """Entropy in bits of a probability vector; entries in [-1e-10, 0) are clipped."""
    p = np.asarray(probs, dtype=float)
    if p.min() < -EIGENVALUE_TOL:
        raise InvalidStateError(f"negative probability {p.min()} below tolerance")
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def von_neumann_entropy(rho) -> float:
    """S(rho) = -sum_i lam_i log2(lam_i) in bits.

    Eigenvalues in [-1e-10, 0) are clipped to 0; anything below -1e-10 is an
    invalid state and raises.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > 1e-8:
        raise InvalidStateError(f"matrix is not Hermitian (defect {herm})")
    eigs = np.linalg.eigvalsh(rho)
    if eigs[0] < -EIGENVALUE_TOL:
        raise InvalidStateError(f"negative eigenvalue {eigs[0]} below tolerance")
    if abs(eigs.sum() - 1.0) > 1e-8:
        raise InvalidStateError(f"trace is {eigs.sum()}, expected 1")
    return shannon_entropy(eigs)


def negativity(rho) -> float:
    """Entanglement negativity of a two-qubit state.

    Sum of |negative eigenvalues| of the partial transpose over Bob; zero
    exactly for separable (PPT) states.
    """
    rho = ensure_density(rho, dim=4)
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    eigs = np.linalg.eigvalsh(pt)
    return float(-eigs[eigs < 0.0].sum()) + 0.0


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    rho = ensure_density(rho)
    sigma = ensure_density(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    m = sqrt_rho @ sigma @ sqrt_rho
    eigs = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    eigs[eigs < 1e-15] = 0.0  # sqrt amplifies round-off in vanishing eigenvalues
    f = float(np.sqrt(eigs).sum() ** 2)
    return min(max(f, 0.0), 1.0)
