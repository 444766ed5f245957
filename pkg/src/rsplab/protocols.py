"""Remote state preparation: the real-coefficient and equal-magnitude schemes.

Both schemes start from the shared state ``(1/sqrt n) sum_i |i>|i>``. Alice
measures her half in a target-dependent basis, sends one n-valued message,
and Bob applies a correction that depends on the message alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Literal, Sequence

import numpy as np

from .errors import (
    ComplexTargetError,
    DimensionMismatchError,
    InvalidFamilyError,
    NotOrthonormalError,
    PhaseConventionError,
    UnrealizableDimensionError,
)
from .frames import FrameFamily, realizability_verdict, verify_frame_family
from .linalg import (
    CHECK_TOL,
    EXACT_TOL,
    BipartiteState,
    RandomSource,
    StateVector,
    apply_unitary,
    check_basis,
    inner_product,
    is_unitary,
    measurement_branches,
    orthonormality_residual,
)

Scheme = Literal["minimum", "equatorial"]
TRANSCRIPT_VERSION = 1


def epr_state(n: int) -> BipartiteState:
    if n < 1:
        raise ValueError("n must be positive")
    amps = np.zeros(n * n, dtype=complex)
    amps[np.arange(n) * (n + 1)] = 1 / math.sqrt(n)
    return BipartiteState(n, amps)


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(inner_product(a, b)) ** 2


def omega_states(basis: Sequence[StateVector], conjugate_scalars: bool = False) -> list[StateVector]:
    """B-side partners of an A-side basis in the shared state.

    Evaluates ``Omega_i = sum_{j,k} |Psi_j> <Psi_j|k> <Psi_i|k>`` directly.
    With ``conjugate_scalars`` the bracketed scalar is conjugated instead;
    that reading breaks the Schmidt identity for complex bases and is kept
    only so the two can be compared.
    """
    n = len(basis)
    if n == 0:
        return []
    check_basis(basis, n)
    P = np.array([b.amps for b in basis])  # P[j, k] = <k|Psi_j>
    overlaps = P.conj()  # <Psi_j|k>
    out = []
    for i in range(n):
        coeff = overlaps @ overlaps[i]  # sum_k <Psi_j|k><Psi_i|k>
        if conjugate_scalars:
            coeff = coeff.conj()
        out.append(StateVector.from_raw(coeff @ P))
    return out


def schmidt_residual(basis_a: Sequence[StateVector], basis_b: Sequence[StateVector]) -> float:
    """``|| epr - (1/sqrt n) sum_i a_i (x) b_i ||``."""
    n = len(basis_a)
    total = sum(np.kron(a.amps, b.amps) for a, b in zip(basis_a, basis_b)) / math.sqrt(n)
    return float(np.linalg.norm(epr_state(n).amps - total))


@dataclass(frozen=True)
class EqualMagnitudeTarget:
    thetas: tuple[float, ...]

    def __post_init__(self):
        th = tuple(float(x) for x in self.thetas)
        if not th:
            raise DimensionMismatchError("need at least one phase")
        if th[0] != 0.0:
            raise PhaseConventionError(f"theta_0 must be exactly 0, got {th[0]!r}")
        if not all(math.isfinite(x) for x in th):
            raise ValueError("phases must be finite")
        object.__setattr__(self, "thetas", th)

    @classmethod
    def from_relative_phases(cls, rest: Sequence[float]) -> EqualMagnitudeTarget:
        """Build from ``theta_1 .. theta_{n-1}``; ``theta_0`` is fixed at 0."""
        return cls((0.0, *rest))

    @property
    def dim(self) -> int:
        return len(self.thetas)

    def state(self) -> StateVector:
        return StateVector(np.exp(1j * np.array(self.thetas)) / math.sqrt(self.dim))


@dataclass(frozen=True, eq=False)
class ProtocolTranscript:
    scheme: Scheme
    dim: int
    target: StateVector
    alice_pre_rotation: np.ndarray | None
    measurement_basis: tuple[StateVector, ...]
    probabilities: tuple[float, ...]
    outcome: int
    correction: np.ndarray
    bob_state: StateVector
    fidelity: float

    def __post_init__(self):
        if not 0 <= self.outcome < self.dim:
            raise ValueError(f"outcome {self.outcome} outside [0, {self.dim})")
        if abs(sum(self.probabilities) - 1) > EXACT_TOL:
            raise ValueError("branch probabilities do not sum to 1")
        if not -EXACT_TOL <= self.fidelity <= 1 + EXACT_TOL:
            raise ValueError(f"fidelity {self.fidelity} outside [0, 1]")
        if not is_unitary(self.correction):
            raise ValueError("correction is not unitary")

    @property
    def message_bits(self) -> float:
        """Classical cost of the single Alice-to-Bob message."""
        return math.log2(self.dim)

    def to_dict(self) -> dict:
        def mat(M):
            return None if M is None else [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, complex)]

        def vec(s):
            return [[float(z.real), float(z.imag)] for z in s.amps]

        return {
            "transcript_version": TRANSCRIPT_VERSION,
            "scheme": self.scheme,
            "dim": self.dim,
            "target": vec(self.target),
            "alice_pre_rotation": mat(self.alice_pre_rotation),
            "measurement_basis": [vec(b) for b in self.measurement_basis],
            "probabilities": [float(p) for p in self.probabilities],
            "outcome": self.outcome,
            "correction": mat(self.correction),
            "bob_state": vec(self.bob_state),
            "fidelity": float(self.fidelity),
        }


# Who holds each transcript field. "message" is the Alice-to-Bob channel and
# must stay the single field with that role.
FIELD_ROLES = {
    "scheme": "agreement",
    "dim": "agreement",
    "target": "alice",
    "alice_pre_rotation": "alice",
    "measurement_basis": "alice",
    "probabilities": "audit",
    "outcome": "message",
    "correction": "bob",
    "bob_state": "bob",
    "fidelity": "audit",
}
CLASSICAL_CHANNEL = "outcome"
TRANSCRIPT_FIELDS = tuple(f.name for f in fields(ProtocolTranscript))


@dataclass(frozen=True, eq=False)
class Branch:
    outcome: int
    probability: float
    bob_received: StateVector
    correction: np.ndarray
    bob_state: StateVector
    fidelity: float


def _real_target(target: StateVector) -> None:
    if not target.is_real():
        raise ComplexTargetError("the minimum scheme needs real amplitudes")


def _check_family(f: FrameFamily, n: int) -> None:
    if f.dim != n:
        raise DimensionMismatchError(f"family has dimension {f.dim}, target {n}")
    if not verify_frame_family(f, CHECK_TOL).passed:
        raise InvalidFamilyError(f"{f.label or 'family'} fails the frame conditions")


def minimum_measurement_basis(target: StateVector, f: FrameFamily) -> list[StateVector]:
    _real_target(target)
    _check_family(f, target.dim)
    y = target.amps.real
    return [StateVector(np.asarray(V, dtype=float) @ y) for V in f.mats]


def minimum_correction(f: FrameFamily, outcome: int) -> np.ndarray:
    """Bob's ``U_i = V_i^T``; no dependence on the target."""
    return np.asarray(f.mats[outcome], dtype=float).T.astype(complex)


def _minimum_setup(target: StateVector, f: FrameFamily):
    n = target.dim
    if not realizability_verdict(n).realizable:
        raise UnrealizableDimensionError(
            f"dimension {n} admits no constant frame; the minimum scheme needs n in {{1, 2, 4, 8}}"
        )
    basis = minimum_measurement_basis(target, f)
    return basis, measurement_branches(epr_state(n), basis)


def _branches(target, probs, received, correct) -> list[Branch]:
    out = []
    for i, (p, s) in enumerate(zip(probs, received)):
        if s is None:
            continue
        U = correct(i)
        bob = apply_unitary(U, s)
        out.append(Branch(i, float(p), s, U, bob, fidelity(target, bob)))
    return out


def minimum_rsp_branches(target: StateVector, f: FrameFamily) -> list[Branch]:
    """Every measurement outcome of the minimum scheme with its corrected state."""
    basis, (probs, received) = _minimum_setup(target, f)
    return _branches(target, probs, received, lambda i: minimum_correction(f, i))


def run_minimum_rsp(target: StateVector, f: FrameFamily, rng: RandomSource) -> ProtocolTranscript:
    basis, (probs, received) = _minimum_setup(target, f)
    outcome = rng.sample_index(probs)
    U = minimum_correction(f, outcome)
    bob = apply_unitary(U, received[outcome])
    return ProtocolTranscript(
        scheme="minimum",
        dim=target.dim,
        target=target,
        alice_pre_rotation=None,
        measurement_basis=tuple(basis),
        probabilities=tuple(float(p) for p in probs),
        outcome=outcome,
        correction=U,
        bob_state=bob,
        fidelity=fidelity(target, bob),
    )


def equatorial_basis(t: EqualMagnitudeTarget) -> list[StateVector]:
    """``Psi_a = (1/sqrt n) sum_b exp(2 pi i a b / n) exp(i theta_b) |b>``; ``Psi_0`` is the target."""
    n = t.dim
    beta = np.arange(n)
    phases = np.exp(1j * np.array(t.thetas))
    return [StateVector(np.exp(2j * np.pi * a * beta / n) * phases / math.sqrt(n)) for a in range(n)]


def alice_rotation(t: EqualMagnitudeTarget) -> np.ndarray:
    """``U_A = |0><0| + sum_{a>=1} exp(i(theta_a + theta_{n-a})) |a><n-a|``."""
    n = t.dim
    th = t.thetas
    U = np.zeros((n, n), dtype=complex)
    U[0, 0] = 1.0
    for a in range(1, n):
        U[a, n - a] = np.exp(1j * (th[a] + th[n - a]))
    return U


def fourier_shift(n: int, alpha: int) -> np.ndarray:
    """``U_alpha = diag(exp(2 pi i alpha b / n))``, mapping the target to ``Psi_alpha``."""
    return np.diag(np.exp(2j * np.pi * alpha * np.arange(n) / n))


def equatorial_correction(n: int, alpha: int) -> np.ndarray:
    return fourier_shift(n, alpha).conj().T


def shared_after_rotation(t: EqualMagnitudeTarget) -> BipartiteState:
    return apply_unitary(alice_rotation(t), epr_state(t.dim), side="A")


def rotation_identity_residual(t: EqualMagnitudeTarget) -> float:
    """Distance between ``(U_A (x) I)|epr>`` and ``(1/sqrt n) sum_a Psi_a (x) Psi_a``."""
    basis = equatorial_basis(t)
    expected = sum(np.kron(b.amps, b.amps) for b in basis) / math.sqrt(t.dim)
    return float(np.linalg.norm(shared_after_rotation(t).amps - expected))


def _equatorial_setup(t: EqualMagnitudeTarget):
    basis = equatorial_basis(t)
    if orthonormality_residual(basis) > CHECK_TOL:
        raise NotOrthonormalError("equatorial basis lost orthonormality")
    return basis, measurement_branches(shared_after_rotation(t), basis)


def equatorial_rsp_branches(t: EqualMagnitudeTarget) -> list[Branch]:
    basis, (probs, received) = _equatorial_setup(t)
    return _branches(t.state(), probs, received, lambda a: equatorial_correction(t.dim, a))


def run_equatorial_rsp(t: EqualMagnitudeTarget, rng: RandomSource) -> ProtocolTranscript:
    basis, (probs, received) = _equatorial_setup(t)
    outcome = rng.sample_index(probs)
    U = equatorial_correction(t.dim, outcome)
    bob = apply_unitary(U, received[outcome])
    target = t.state()
    return ProtocolTranscript(
        scheme="equatorial",
        dim=t.dim,
        target=target,
        alice_pre_rotation=alice_rotation(t),
        measurement_basis=tuple(basis),
        probabilities=tuple(float(p) for p in probs),
        outcome=outcome,
        correction=U,
        bob_state=bob,
        fidelity=fidelity(target, bob),
    )
