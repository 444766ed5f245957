"""Constant orthogonal frame families and the dimension verdict.

A frame family is a list of real orthogonal matrices ``V_0 = I, V_1, ...,
V_{n-1}`` such that ``{V_i y}`` is an orthonormal basis for every unit vector
``y``. Algebraically this is ``V_i^T V_j + V_j^T V_i = 2 delta_ij I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebras
from .algebras import AlgebraElement, MultiplicationTable
from .errors import DimensionMismatchError, DivisionAlgebraError, InvalidFamilyError
from .linalg import EXACT_TOL, StateVector, gram_schmidt


@dataclass(frozen=True, eq=False)
class FrameFamily:
    mats: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        mats = []
        for M in self.mats:
            M = np.array(M)
            if M.dtype.kind not in "iuf":
                raise InvalidFamilyError("frame matrices must be real")
            M.setflags(write=False)
            mats.append(M)
        n = len(mats)
        if n == 0 or any(M.shape != (n, n) for M in mats):
            raise DimensionMismatchError(f"a family of {n} matrices needs every matrix to be {n}x{n}")
        object.__setattr__(self, "mats", tuple(mats))

    @property
    def dim(self) -> int:
        return len(self.mats)

    def __len__(self) -> int:
        return len(self.mats)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.mats[i]

    def __eq__(self, other):
        if not isinstance(other, FrameFamily):
            return NotImplemented
        return self.dim == other.dim and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))

    __hash__ = None

    def is_integer(self) -> bool:
        return all(M.dtype.kind in "iu" for M in self.mats)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "label": self.label,
            "matrices": [M.tolist() for M in self.mats],
        }

    @classmethod
    def from_dict(cls, data: dict) -> FrameFamily:
        mats = data["matrices"]
        if "dim" in data and int(data["dim"]) != len(mats):
            raise DimensionMismatchError(f"declared dim {data['dim']} but {len(mats)} matrices given")
        arrays = []
        for M in mats:
            flat = [x for row in M for x in row]
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in flat):
                raise InvalidFamilyError("matrix entries must be real numbers")
            dtype = np.int64 if all(isinstance(x, int) for x in flat) else float
            arrays.append(np.array(M, dtype=dtype))
        return cls(tuple(arrays), label=data.get("label", ""))


@dataclass
class ConditionResult:
    name: str
    passed: bool
    max_residual: float


@dataclass
class FrameReport:
    dim: int
    tol: float
    conditions: list[ConditionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.conditions), default=0.0)

    def condition(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)


def verify_frame_family(f: FrameFamily, tol: float = EXACT_TOL) -> FrameReport:
    """Check every frame condition and report the worst residual of each."""
    n = f.dim
    eye = np.eye(n, dtype=np.int64)
    V = f.mats

    def worst(mats) -> float:
        return max((float(np.max(np.abs(M))) for M in mats), default=0.0)

    residuals = {
        "identity": worst([V[0] - eye]),
        "orthogonality": worst([M.T @ M - eye for M in V]),
        "antisymmetry": worst([M + M.T for M in V[1:]]),
        "frame": worst([V[i].T @ V[j] + V[j].T @ V[i] for i in range(n) for j in range(i + 1, n)]),
    }
    report = FrameReport(n, tol)
    for name, r in residuals.items():
        report.conditions.append(ConditionResult(name, r <= tol, r))
    return report


def pointwise_gram_residual(f: FrameFamily, samples: int, rng: np.random.Generator) -> float:
    """Worst ``|G(y) - I|`` where ``G(y)`` is the Gram matrix of ``{V_i y}``."""
    stack = np.array(f.mats, dtype=float)
    worst = 0.0
    for _ in range(samples):
        y = rng.standard_normal(f.dim)
        y /= np.linalg.norm(y)
        vecs = stack @ y
        worst = max(worst, float(np.max(np.abs(vecs @ vecs.T - np.eye(f.dim)))))
    return worst


def constancy_residual(
    t: MultiplicationTable, f: FrameFamily, samples: int, rng: np.random.Generator
) -> float:
    """Worst gap between orthonormalized ``{e_i * y}`` and ``{V_i y}``."""
    n = t.dim
    worst = 0.0
    for _ in range(samples):
        y = rng.standard_normal(n)
        y /= np.linalg.norm(y)
        Y = AlgebraElement(tuple(y))
        prods = [StateVector(algebras.multiply(t, AlgebraElement.basis(n, i), Y).array) for i in range(n)]
        ortho = gram_schmidt(prods)
        for i, u in enumerate(ortho):
            worst = max(worst, float(np.max(np.abs(u.amps - f.mats[i] @ y))))
    return worst


def build_frame_family(t: MultiplicationTable, check_constancy: bool = True) -> FrameFamily:
    """Left multiplications ``L_i`` of a division algebra as a frame family."""
    algebras.check_table_laws(t)
    family = FrameFamily(tuple(algebras.left_mult_matrix(t, i) for i in range(t.dim)), label=t.name)
    report = verify_frame_family(family)
    if not report.passed:
        raise DivisionAlgebraError(f"left multiplications of {t.name} do not form a frame")
    if check_constancy:
        r = constancy_residual(t, family, samples=100, rng=np.random.default_rng(0))
        if r > EXACT_TOL:
            raise DivisionAlgebraError(f"orthonormalized products drift from the frame by {r:.3e}")
    return family


# 2x2 blocks; -i sigma_y = J is real
_I2 = np.eye(2, dtype=np.int64)
_O = np.zeros((2, 2), dtype=np.int64)
_J = np.array([[0, -1], [1, 0]], dtype=np.int64)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.int64)
_SX = np.array([[0, 1], [1, 0]], dtype=np.int64)


def _reference_4() -> list[np.ndarray]:
    I2, O, J, SZ, SX = _I2, _O, _J, _SZ, _SX
    return [
        np.eye(4, dtype=np.int64),
        np.block([[J, O], [O, J]]),
        np.block([[O, -SZ], [SZ, O]]),
        np.block([[O, -SX], [SX, O]]),
    ]


def _reference_8() -> list[np.ndarray]:
    I2, O, J, SZ, SX = _I2, _O, _J, _SZ, _SX
    # i sigma_y = -J
    return [
        np.eye(8, dtype=np.int64),
        np.block([[J, O, O, O], [O, J, O, O], [O, O, J, O], [O, O, O, J]]),
        np.block([[O, -SZ, O, O], [SZ, O, O, O], [O, O, O, -I2], [O, O, I2, O]]),
        np.block([[O, -SX, O, O], [SX, O, O, O], [O, O, O, J], [O, O, J, O]]),
        np.block([[O, O, -SZ, O], [O, O, O, I2], [SZ, O, O, O], [O, -I2, O, O]]),
        np.block([[O, O, -SX, O], [O, O, O, -J], [SX, O, O, O], [O, -J, O, O]]),
        np.block([[O, O, O, -I2], [O, O, -SZ, O], [O, SZ, O, O], [I2, O, O, O]]),
        np.block([[O, O, O, J], [O, O, -SX, O], [O, SX, O, O], [J, O, O, O]]),
    ]


def reference_family(n: int) -> FrameFamily:
    """Hardcoded reference tables of V_i for n = 4 and n = 8, entry for entry.

    The n = 8 table is kept exactly as tabulated. Its V_1 carries the same
    block in all four diagonal positions and so does not anticommute with
    V_2..V_7; :func:`reconcile_families` locates the discrepancy against the
    octonion construction.
    """
    if n == 4:
        return FrameFamily(tuple(_reference_4()), label="reference-4")
    if n == 8:
        return FrameFamily(tuple(_reference_8()), label="reference-8")
    raise ValueError(f"reference tables exist only for n = 4 and n = 8, not {n}")


@dataclass
class MatrixMatch:
    reference_index: int
    built_index: int
    sign: int
    mismatched_entries: list[tuple[int, int]]
    max_residual: float

    @property
    def exact(self) -> bool:
        return not self.mismatched_entries


@dataclass
class Reconciliation:
    dim: int
    matches: list[MatrixMatch]

    @property
    def exact(self) -> bool:
        """True when reference = sign * built under a bijective index map."""
        return all(m.exact for m in self.matches) and (
            sorted(m.built_index for m in self.matches) == list(range(self.dim))
        )

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "exact_signed_permutation": self.exact,
            "matrices": [
                {
                    "reference_index": m.reference_index,
                    "built_index": m.built_index,
                    "sign": m.sign,
                    "exact": m.exact,
                    "mismatched_entries": [list(e) for e in m.mismatched_entries],
                    "max_residual": m.max_residual,
                }
                for m in self.matches
            ],
        }


def reconcile_families(built: FrameFamily, reference: FrameFamily) -> Reconciliation:
    """Match each reference matrix to ``sign * built[i]`` with fewest differing entries."""
    if built.dim != reference.dim:
        raise DimensionMismatchError("families have different dimensions")
    matches = []
    for k, R in enumerate(reference.mats):
        best = None
        for i, B in enumerate(built.mats):
            for s in (1, -1):
                diff = R - s * B
                count = int(np.count_nonzero(diff))
                if best is None or count < best[0]:
                    best = (count, i, s, diff)
        _, i, s, diff = best
        entries = [(int(r), int(c)) for r, c in zip(*np.nonzero(diff))]
        matches.append(MatrixMatch(k, i, s, entries, float(np.max(np.abs(diff)))))
    return Reconciliation(built.dim, matches)


def radon_hurwitz(n: int) -> int:
    """Radon-Hurwitz number: ``n = 2^(4a+b) * odd`` gives ``8a + 2^b``."""
    if n < 1:
        raise ValueError("n must be positive")
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    a, b = divmod(e, 4)
    return 8 * a + 2**b


@dataclass(frozen=True)
class DimensionVerdict:
    dim: int
    realizable: bool
    radon_number: int
    obstruction_note: str = ""


def realizability_verdict(n: int) -> DimensionVerdict:
    rho = radon_hurwitz(n)
    if rho == n:
        return DimensionVerdict(n, True, rho)
    notes = [
        f"rho({n}) = {rho} < {n}: the sphere S^{n - 1} carries at most {rho - 1} "
        f"pointwise independent vector fields, fewer than the {n - 1} a frame needs"
    ]
    if n % 2 == 1:
        notes.append(
            f"n = {n} is odd: a real antisymmetric V has det(V) = det(-V^T) = (-1)^{n} det(V), "
            "so det(V) = 0 and V cannot be orthogonal; no V_1 exists"
        )
    return DimensionVerdict(n, False, rho, "; ".join(notes))


def standard_family(n: int) -> FrameFamily:
    """The division-algebra frame for ``n`` in {1, 2, 4, 8}."""
    return build_frame_family(algebras.table_for_dim(n), check_constancy=False)

