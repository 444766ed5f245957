"""Dense complex linear algebra for small state spaces.

States are immutable wrappers around read-only numpy arrays. Matrices are plain
``numpy.ndarray`` objects of shape ``(n, n)``; unitarity is a predicate checked
where it matters, never a property of the array type.
"""

from __future__ import annotations

from typing import Literal, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    LinearDependenceError,
    NotNormalizedError,
    NotOrthonormalError,
    NotUnitaryError,
    ZeroProbabilityError,
)

CHECK_TOL = 1e-10
EXACT_TOL = 1e-12

Side = Literal["whole", "A", "B"]


def _frozen(values, length: int | None = None) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    if length is not None and arr.size != length:
        raise DimensionMismatchError(f"expected {length} amplitudes, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


class StateVector:
    """Unit-norm amplitude vector in the computational basis."""

    __slots__ = ("amps",)

    def __init__(self, amps: Sequence[complex] | np.ndarray):
        arr = _frozen(amps)
        if arr.size == 0:
            raise DimensionMismatchError("a state needs at least one amplitude")
        norm2 = float(np.vdot(arr, arr).real)
        if abs(norm2 - 1.0) > EXACT_TOL:
            raise NotNormalizedError(f"squared norm is {norm2!r}, not 1")
        object.__setattr__(self, "amps", arr)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @classmethod
    def from_raw(cls, amps: Sequence[complex] | np.ndarray) -> StateVector:
        """Normalize an arbitrary nonzero vector."""
        arr = np.array(amps, dtype=complex).reshape(-1)
        norm = np.linalg.norm(arr)
        if norm == 0.0 or not np.isfinite(norm):
            raise NotNormalizedError("cannot normalize a zero or non-finite vector")
        return cls(arr / norm)

    @property
    def dim(self) -> int:
        return self.amps.size

    def is_real(self, tol: float = EXACT_TOL) -> bool:
        return bool(np.max(np.abs(self.amps.imag)) <= tol)

    def allclose(self, other: StateVector, tol: float = EXACT_TOL) -> bool:
        return self.dim == other.dim and bool(np.max(np.abs(self.amps - other.amps)) <= tol)

    def __repr__(self) -> str:
        return f"StateVector({np.array2string(self.amps, precision=6)})"


class BipartiteState:
    """Unit-norm state on A (x) B, flat index ``a * n + b``."""

    __slots__ = ("dim", "amps")

    def __init__(self, dim: int, amps: Sequence[complex] | np.ndarray):
        if dim < 1:
            raise DimensionMismatchError("subsystem dimension must be positive")
        arr = _frozen(amps, dim * dim)
        norm2 = float(np.vdot(arr, arr).real)
        if abs(norm2 - 1.0) > EXACT_TOL:
            raise NotNormalizedError(f"squared norm is {norm2!r}, not 1")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "amps", arr)

    def __setattr__(self, name, value):
        raise AttributeError("BipartiteState is immutable")

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as an ``(n, n)`` array indexed ``[a, b]``."""
        return self.amps.reshape(self.dim, self.dim)

    def distance(self, other: BipartiteState) -> float:
        if self.dim != other.dim:
            raise DimensionMismatchError("subsystem dimensions differ")
        return float(np.linalg.norm(self.amps - other.amps))

    def __repr__(self) -> str:
        return f"BipartiteState(dim={self.dim})"


def basis_state(n: int, k: int) -> StateVector:
    if not 0 <= k < n:
        raise IndexError(f"basis index {k} out of range for dimension {n}")
    amps = np.zeros(n, dtype=complex)
    amps[k] = 1.0
    return StateVector(amps)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, antilinear in ``a``."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions {a.dim} and {b.dim} differ")
    return complex(np.vdot(a.amps, b.amps))


def tensor_product(a: StateVector, b: StateVector) -> BipartiteState:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions {a.dim} and {b.dim} differ")
    return BipartiteState(a.dim, np.kron(a.amps, b.amps))


def conjugate_state(s: StateVector) -> StateVector:
    return StateVector(np.conj(s.amps))


def unitarity_residual(U: np.ndarray) -> float:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {U.shape}")
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def is_unitary(U: np.ndarray, tol: float = CHECK_TOL) -> bool:
    return unitarity_residual(U) <= tol


def apply_unitary(U: np.ndarray, s, side: Side = "whole"):
    """Apply ``U`` to a state; ``side`` selects U(x)I or I(x)U on bipartite input."""
    U = np.asarray(U, dtype=complex)
    residual = unitarity_residual(U)
    if residual > CHECK_TOL:
        raise NotUnitaryError(f"max |U^dag U - I| = {residual:.3e}")
    if isinstance(s, StateVector):
        if side != "whole":
            raise DimensionMismatchError("side A/B needs a bipartite state")
        if U.shape[0] != s.dim:
            raise DimensionMismatchError(f"{U.shape[0]}x{U.shape[0]} matrix on dim {s.dim} state")
        return StateVector(U @ s.amps)
    if isinstance(s, BipartiteState):
        n = s.dim
        if side == "whole":
            if U.shape[0] != n * n:
                raise DimensionMismatchError("whole-space operator must be n^2 x n^2")
            return BipartiteState(n, U @ s.amps)
        if U.shape[0] != n:
            raise DimensionMismatchError("local operator must be n x n")
        M = s.matrix
        out = U @ M if side == "A" else M @ U.T
        return BipartiteState(n, out)
    raise TypeError(f"cannot apply a unitary to {type(s).__name__}")


def gram_schmidt(vs: Sequence[StateVector], tol: float = CHECK_TOL) -> list[StateVector]:
    """Orthonormalize in input order.

    Each output ``u_k`` has a positive real overlap with input ``v_k``, which
    fixes the otherwise free phase. Projections are applied twice so the
    result is orthonormal to working precision.
    """
    if not vs:
        return []
    n = vs[0].dim
    out: list[np.ndarray] = []
    for idx, v in enumerate(vs):
        if v.dim != n:
            raise DimensionMismatchError("all vectors must share a dimension")
        r = v.amps.copy()
        for _ in range(2):
            for u in out:
                r = r - np.vdot(u, r) * u
        norm = np.linalg.norm(r)
        if norm <= tol * max(np.linalg.norm(v.amps), 1.0):
            raise LinearDependenceError(f"vector {idx} lies in the span of its predecessors")
        u = r / norm
        # pin the phase so <u|v> is real positive
        overlap = np.vdot(u, v.amps)
        u = u * (overlap / abs(overlap)) if abs(overlap) > 0 else u
        out.append(u)
    return [StateVector(u) for u in out]


def gram_matrix(vs: Sequence[StateVector]) -> np.ndarray:
    M = np.array([v.amps for v in vs])
    return M.conj() @ M.T


def orthonormality_residual(vs: Sequence[StateVector]) -> float:
    if not vs:
        return 0.0
    return float(np.max(np.abs(gram_matrix(vs) - np.eye(len(vs)))))


def check_basis(basis: Sequence[StateVector], n: int, tol: float = CHECK_TOL) -> None:
    if len(basis) != n:
        raise NotOrthonormalError(f"basis has {len(basis)} vectors, need {n}")
    if any(b.dim != n for b in basis):
        raise DimensionMismatchError("basis vectors do not match subsystem dimension")
    residual = orthonormality_residual(basis)
    if residual > tol:
        raise NotOrthonormalError(f"basis Gram residual {residual:.3e} exceeds {tol:g}")


def _unnormalized_branches(s: BipartiteState, basis: Sequence[StateVector]) -> np.ndarray:
    check_basis(basis, s.dim)
    B = np.array([b.amps for b in basis])
    # row i: (<b_i| (x) I) |s>
    return B.conj() @ s.matrix


def measurement_branches(
    s: BipartiteState, basis: Sequence[StateVector]
) -> tuple[np.ndarray, list[StateVector | None]]:
    """Born probabilities of every outcome on A and the matching B states.

    Zero-probability branches (below ``EXACT_TOL``) have ``None`` in place of
    a conditional state.
    """
    raw = _unnormalized_branches(s, basis)
    probs = np.sum(np.abs(raw) ** 2, axis=1)
    states = [StateVector(row / np.sqrt(p)) if p > EXACT_TOL else None for row, p in zip(raw, probs)]
    return probs, states


def collapse(s: BipartiteState, basis: Sequence[StateVector], outcome: int) -> tuple[float, StateVector]:
    probs, states = measurement_branches(s, basis)
    if not 0 <= outcome < len(basis):
        raise IndexError(f"outcome {outcome} out of range")
    state = states[outcome]
    if state is None:
        raise ZeroProbabilityError(f"outcome {outcome} has probability {probs[outcome]:.3e}")
    return float(probs[outcome]), state


def measure_subsystem_A(
    s: BipartiteState, basis: Sequence[StateVector], rng: RandomSource
) -> tuple[int, float, StateVector]:
    """Sample an outcome of measuring A in ``basis``; return (outcome, prob, B state)."""
    probs, states = measurement_branches(s, basis)
    outcome = rng.sample_index(probs)
    return outcome, float(probs[outcome]), states[outcome]


class RandomSource:
    """Seeded stream for measurement sampling and random test inputs."""

    def __init__(self, seed: int):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    @classmethod
    def _from_generator(cls, seed: int, gen: np.random.Generator) -> RandomSource:
        src = cls.__new__(cls)
        src.seed = seed
        src._gen = gen
        return src

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def spawn(self, count: int) -> list[RandomSource]:
        """Independent child streams, one per parallel trial."""
        return [RandomSource._from_generator(self.seed, g) for g in self._gen.spawn(count)]

    def sample_index(self, probs: np.ndarray) -> int:
        probs = np.asarray(probs, dtype=float)
        cdf = np.cumsum(probs)
        u = self._gen.random() * cdf[-1]
        idx = int(np.searchsorted(cdf, u, side="right"))
        idx = min(idx, len(probs) - 1)
        while probs[idx] <= EXACT_TOL and idx > 0:
            idx -= 1
        return idx

    def real_state(self, n: int) -> StateVector:
        return StateVector.from_raw(self._gen.standard_normal(n))

    def complex_state(self, n: int) -> StateVector:
        return StateVector.from_raw(self._gen.standard_normal(n) + 1j * self._gen.standard_normal(n))

    def unitary(self, n: int) -> np.ndarray:
        """Haar-random unitary via QR with the diagonal phase fix."""
        Z = (self._gen.standard_normal((n, n)) + 1j * self._gen.standard_normal((n, n))) / np.sqrt(2)
        Q, R = np.linalg.qr(Z)
        d = np.diag(R)
        return Q * (d / np.abs(d))

    def phases(self, count: int) -> np.ndarray:
        return self._gen.uniform(0.0, 2 * np.pi, count)


def basis_from_unitary(U: np.ndarray) -> list[StateVector]:
    """Columns of ``U`` as states."""
    return [StateVector.from_raw(U[:, k]) for k in range(U.shape[1])]
