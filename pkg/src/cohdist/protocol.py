"""Single-copy assisted-distillation protocol.

Alice performs a projective measurement on her qubit and broadcasts the
outcome; Bob only relabels his photons into per-outcome ensembles, which is a
free (incoherent) operation.  The module provides the measurement map, the
ensemble-averaged distillable coherence it induces on Bob, the analytic
optimal basis for pure parents, and a numerical basis optimizer for anything
else.  Only rank-1 projective measurements are considered.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qcore
from .coherence import rel_entropy_coherence

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
ZERO_PROB_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal single-qubit basis parametrized by a Bloch unit vector.

    The "+" ket has Bloch vector +n and phase convention
    cos(t/2)|H> + e^{i phi} sin(t/2)|V>; the "-" ket sits at -n.
    """

    bloch: tuple[float, float, float]

    def __post_init__(self):
        n = np.asarray(self.bloch, dtype=float)
        if n.shape != (3,):
            raise ValueError(f"bloch vector must have 3 components, got {n.shape}")
        norm = float(np.linalg.norm(n))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"bloch vector must be unit length, got |n| = {norm}")
        object.__setattr__(self, "bloch", tuple(float(x / norm) + 0.0 for x in n))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "MeasurementBasis":
        """Basis with Bloch vector (sin t cos phi, sin t sin phi, cos t)."""
        st = math.sin(theta)
        return cls((st * math.cos(phi), st * math.sin(phi), math.cos(theta)))

    @property
    def angles(self) -> tuple[float, float]:
        nx, ny, nz = self.bloch
        return math.acos(min(max(nz, -1.0), 1.0)), math.atan2(ny, nx)

    @property
    def ket_plus(self) -> np.ndarray:
        theta, phi = self.angles
        return np.array([math.cos(theta / 2.0), math.sin(theta / 2.0) * np.exp(1j * phi)], dtype=complex)

    @property
    def ket_minus(self) -> np.ndarray:
        theta, phi = self.angles
        return np.array([math.sin(theta / 2.0), -math.cos(theta / 2.0) * np.exp(1j * phi)], dtype=complex)


def y_basis() -> MeasurementBasis:
    """The |y+->, |y-> basis, Bloch vector (0, 1, 0)."""
    return MeasurementBasis((0.0, 1.0, 0.0))


def bloch_vector(ket) -> np.ndarray:
    """Bloch vector of a single-qubit pure state."""
    a, b = np.asarray(ket, dtype=complex)
    cross = np.conj(a) * b
    return np.array([2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2])


@dataclass(frozen=True)
class Outcome:
    label: str
    prob: float
    bob_state: np.ndarray
    zero_prob: bool = False


@dataclass(frozen=True)
class OutcomeSet:
    outcomes: tuple[Outcome, ...]

    def __iter__(self):
        return iter(self.outcomes)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(o.prob for o in self.outcomes)


def alice_measure(rho_ab, basis: MeasurementBasis) -> OutcomeSet:
    """Measure Alice's qubit projectively and collapse Bob accordingly.

    Outcome probabilities are tr[(P_i x I) rho]; Bob's conditional states are
    Tr_A[(P_i x I) rho (P_i x I)] / p_i.  A zero-probability outcome is kept
    with prob 0, Bob state I/2 and the zero_prob flag set, so the outcome set
    shape is stable.
    """
    rho = qcore.ensure_density(rho_ab, dim=4)
    return _measure(rho, basis)


def _measure(rho: np.ndarray, basis: MeasurementBasis) -> OutcomeSet:
    outcomes = []
    for label, ket in (("+", basis.ket_plus), ("-", basis.ket_minus)):
        proj = np.kron(qcore.projector(ket), qcore.IDENTITY_2)
        m = proj @ rho @ proj
        p = float(m.trace().real)
        if p < ZERO_PROB_TOL:
            outcomes.append(Outcome(label, 0.0, np.eye(2, dtype=complex) / 2.0, zero_prob=True))
            continue
        bob = np.trace(m.reshape(2, 2, 2, 2), axis1=0, axis2=2) / p
        bob = (bob + bob.conj().T) / 2.0
        bob /= bob.trace().real
        outcomes.append(Outcome(label, p, bob))
    return OutcomeSet(tuple(outcomes))


def average_assisted_coherence(outcomes: OutcomeSet) -> float:
    """Ensemble average sum_i p_i C_r(bob_state_i) in bits."""
    probs = sum(o.prob for o in outcomes)
    if abs(probs - 1.0) > 1e-9:
        raise ValueError(f"outcome probabilities sum to {probs}, expected 1")
    total = 0.0
    for o in outcomes:
        if o.prob > 0.0:
            total += o.prob * rel_entropy_coherence(o.bob_state).c_r
    return total


def _canonical_direction(n: np.ndarray) -> np.ndarray:
    # antipodal Bloch vectors describe the same basis; pick the representative
    # with positive y, then positive x, then positive z
    tol = 1e-12
    if n[1] < -tol or (abs(n[1]) <= tol and (n[0] < -tol or (abs(n[0]) <= tol and n[2] < 0.0))):
        return -n
    return n


def optimal_basis_pure(psi_ab) -> MeasurementBasis:
    """Analytic optimal Alice basis for a pure two-qubit parent state.

    Expanding |psi> = sum_k a_k |Psi_k>_A |k>_B over Bob's reference basis,
    the best von Neumann measurement is one that is unbiased against every
    (normalized, nonzero) Alice vector |Psi_k>, i.e. whose Bloch vector is
    orthogonal to theirs.  Both outcomes then leave Bob with coherence equal
    to the entropy of his dephased marginal.

    When the Alice Bloch vectors are parallel or antiparallel the orthogonality
    constraint is a circle; the tie-break picks the unit vector orthogonal to
    the first Alice vector with maximal y component, preferring +x when the
    Alice vector is +-y itself.
    """
    psi = qcore.ensure_state_vector(psi_ab, dim=4)
    amps = psi.reshape(2, 2)  # (alice, bob)
    blochs = []
    for k in (0, 1):
        a_k = amps[:, k]
        norm = float(np.linalg.norm(a_k))
        if norm > 1e-9:
            blochs.append(bloch_vector(a_k / norm))
    if not blochs:
        raise qcore.InvalidStateError("state has no support on Bob's reference basis")
    if len(blochs) == 2:
        cross = np.cross(blochs[0], blochs[1])
        norm = float(np.linalg.norm(cross))
        if norm >= 1e-9:
            n = _canonical_direction(cross / norm)
            return MeasurementBasis(tuple(n))
    # degenerate: only one independent direction to be orthogonal to
    n0 = blochs[0]
    y_perp = np.array([0.0, 1.0, 0.0]) - n0[1] * n0
    norm = float(np.linalg.norm(y_perp))
    if norm < 1e-9:  # n0 is +-y, prefer +x
        return MeasurementBasis((1.0, 0.0, 0.0))
    return MeasurementBasis(tuple(y_perp / norm))


def _golden_max(f, lo: float, hi: float, steps: int = 16) -> float:
    """Argmax of f on [lo, hi] by golden-section shrink (f assumed unimodal)."""
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def _basis_search(objective, grid_res: int, refine_iters: int):
    """Maximize objective(theta, phi) over the hemisphere of projective bases.

    Scans a grid_res x grid_res grid (theta in [0, pi/2] inclusive, phi in
    [0, 2pi) -- antipodal bases are identical), then refines by per-coordinate
    golden-section shrink around the running best.  The grid argmax is
    deterministic with ties broken toward the lexicographically smallest
    (theta, phi).  Returns (theta, phi, value, trace) where value is the best
    objective seen anywhere and trace records the search path.
    """
    if grid_res < 8:
        raise ValueError(f"grid_res must be >= 8, got {grid_res}")
    best = {"theta": 0.0, "phi": 0.0, "value": -np.inf}

    def f(theta, phi):
        v = objective(theta, phi)
        if v > best["value"]:
            best.update(theta=theta, phi=phi, value=v)
        return v

    for theta in np.linspace(0.0, math.pi / 2.0, grid_res):
        for phi in (2.0 * math.pi / grid_res) * np.arange(grid_res):
            f(float(theta), float(phi))
    trace = [((best["theta"], best["phi"]), best["value"])]
    cur_t, cur_p = best["theta"], best["phi"]
    h_t = (math.pi / 2.0) / (grid_res - 1)
    h_p = 2.0 * math.pi / grid_res
    for _ in range(refine_iters):
        cur_t = _golden_max(lambda t: f(t, cur_p), cur_t - h_t, cur_t + h_t)
        cur_p = _golden_max(lambda p: f(cur_t, p), cur_p - h_p, cur_p + h_p)
        trace.append(((cur_t, cur_p), f(cur_t, cur_p)))
        h_t *= 0.7
        h_p *= 0.7
    return best["theta"], best["phi"], best["value"], trace


def optimize_basis(rho_ab, grid_res: int = 64, refine_iters: int = 30) -> tuple[MeasurementBasis, float]:
    """Numerically maximize the average assisted coherence over Alice bases."""
    rho = qcore.ensure_density(rho_ab, dim=4)

    def objective(theta, phi):
        return average_assisted_coherence(_measure(rho, MeasurementBasis.from_angles(theta, phi)))

    theta, phi, value, _ = _basis_search(objective, grid_res, refine_iters)
    return MeasurementBasis.from_angles(theta, phi), value
