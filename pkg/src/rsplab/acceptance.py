"""Exit criteria for the whole package, runnable from tests and from the CLI."""

from __future__ import annotations

import numpy as np

from . import algebras, frames, linalg, protocols
from .errors import UnrealizableDimensionError
from .frames import FrameFamily
from .linalg import RandomSource
from .report import Check

FIDELITY_TOL = 1e-10
EXACT_TOL = 1e-12


def reference_matrices() -> Check:
    reports = {n: frames.verify_frame_family(frames.reference_family(n), tol=0.0) for n in (4, 8)}
    failed = [
        f"n={n} {c.name} residual {c.max_residual:g}"
        for n, r in reports.items()
        for c in r.conditions
        if not c.passed
    ]
    for n in (4, 8):
        V = frames.reference_family(n).mats
        bad = [(i, j) for i in range(n) for j in range(i + 1, n) if np.any(V[i].T @ V[j] + V[j].T @ V[i])]
        if bad:
            failed.append(f"n={n} pairs failing V_i^T V_j + V_j^T V_i = 0: {bad}")
    worst = max(r.max_residual for r in reports.values())
    return Check("1 reference-matrix validity", not failed, worst, "; ".join(failed))


def quaternion_construction() -> Check:
    built = frames.build_frame_family(algebras.standard_table("quaternions"))
    ref = frames.reference_family(4)
    worst = max(float(np.max(np.abs(a - b))) for a, b in zip(built.mats, ref.mats))
    return Check("2 quaternion construction = n=4 reference", built == ref, worst)


def octonion_construction() -> Check:
    built = frames.build_frame_family(algebras.standard_table("octonions"))
    verdict = frames.verify_frame_family(built, tol=0.0)
    rec = frames.reconcile_families(built, frames.reference_family(8))
    documented = all(m.exact or m.mismatched_entries for m in rec.matches)
    notes = [
        f"V_{m.reference_index} ~ built {m.built_index} differs at {m.mismatched_entries}"
        for m in rec.matches
        if not m.exact
    ]
    detail = "exact signed-permutation match" if rec.exact else "; ".join(notes)
    return Check(
        "3 octonion construction valid + reconciled",
        verdict.passed and documented,
        verdict.max_residual,
        detail,
    )


def minimum_round_trip(rng: RandomSource, targets: int = 1000) -> Check:
    worst_fid = 0.0
    worst_prob = 0.0
    for n in (2, 4, 8):
        f = frames.standard_family(n)
        for _ in range(targets):
            branches = protocols.minimum_rsp_branches(rng.real_state(n), f)
            if len(branches) != n:
                return Check("4 minimum RSP round trip", False, 1.0, f"n={n} lost a branch")
            for b in branches:
                worst_fid = max(worst_fid, 1 - b.fidelity)
                worst_prob = max(worst_prob, abs(b.probability - 1 / n))
    ok = worst_fid <= FIDELITY_TOL and worst_prob <= EXACT_TOL
    return Check(
        "4 minimum RSP round trip",
        ok,
        max(worst_fid, worst_prob),
        f"max 1-F={worst_fid:.2e}, max |p-1/n|={worst_prob:.2e}",
    )


def equatorial_round_trip(rng: RandomSource, samples: int = 100) -> Check:
    worst_fid = 0.0
    worst_id = 0.0
    worst_prob = 0.0
    for n in range(2, 17):
        for _ in range(samples):
            t = protocols.EqualMagnitudeTarget.from_relative_phases(rng.phases(n - 1))
            branches = protocols.equatorial_rsp_branches(t)
            if len(branches) != n:
                return Check("5 equatorial RSP round trip", False, 1.0, f"n={n} lost a branch")
            for b in branches:
                worst_fid = max(worst_fid, 1 - b.fidelity)
                worst_prob = max(worst_prob, abs(b.probability - 1 / n))
            worst_id = max(worst_id, protocols.rotation_identity_residual(t))
    ok = worst_fid <= FIDELITY_TOL and worst_id <= EXACT_TOL and worst_prob <= EXACT_TOL
    return Check(
        "5 equatorial RSP round trip",
        ok,
        max(worst_fid, worst_id),
        f"max 1-F={worst_fid:.2e}, identity residual={worst_id:.2e}, max |p-1/n|={worst_prob:.2e}",
    )


def dimension_gate(max_dim: int = 64) -> Check:
    problems = []
    for n in range(1, max_dim + 1):
        v = frames.realizability_verdict(n)
        if v.realizable != (n in (1, 2, 4, 8)):
            problems.append(f"verdict wrong at n={n}")
        if n % 2 == 1 and n > 1 and "odd" not in v.obstruction_note:
            problems.append(f"odd-dimension note missing at n={n}")
        if not v.realizable:
            dummy = FrameFamily(tuple(np.eye(n, dtype=np.int64) for _ in range(n)))
            target = linalg.basis_state(n, 0)
            try:
                protocols.run_minimum_rsp(target, dummy, RandomSource(0))
            except UnrealizableDimensionError:
                pass
            else:
                problems.append(f"run_minimum_rsp accepted n={n}")
    return Check("6 dimension gate n=1..64", not problems, float(len(problems)), "; ".join(problems[:5]))


def omega_decomposition(rng: RandomSource, samples: int = 100) -> Check:
    worst_orth = worst_schmidt = worst_conj = 0.0
    for n in (2, 4, 8):
        for _ in range(samples):
            basis = linalg.basis_from_unitary(rng.unitary(n))
            omegas = protocols.omega_states(basis)
            worst_orth = max(worst_orth, linalg.orthonormality_residual(omegas))
            worst_schmidt = max(worst_schmidt, protocols.schmidt_residual(basis, omegas))
            conj = [linalg.conjugate_state(b) for b in basis]
            worst_conj = max(worst_conj, max(float(np.max(np.abs(o.amps - c.amps))) for o, c in zip(omegas, conj)))
    worst = max(worst_orth, worst_schmidt, worst_conj)
    return Check(
        "7 omega decomposition",
        worst <= EXACT_TOL,
        worst,
        f"orthonormality={worst_orth:.2e}, schmidt={worst_schmidt:.2e}, vs conjugate={worst_conj:.2e}",
    )


def classical_cost(rng: RandomSource) -> Check:
    problems = []
    fields = set(protocols.TRANSCRIPT_FIELDS)
    if fields != set(protocols.FIELD_ROLES):
        problems.append(f"unclassified transcript fields: {sorted(fields ^ set(protocols.FIELD_ROLES))}")
    messages = [k for k, role in protocols.FIELD_ROLES.items() if role == "message"]
    if messages != [protocols.CLASSICAL_CHANNEL]:
        problems.append(f"message fields {messages}")
    samples = [
        protocols.run_minimum_rsp(rng.real_state(4), frames.standard_family(4), rng),
        protocols.run_equatorial_rsp(protocols.EqualMagnitudeTarget.from_relative_phases(rng.phases(4)), rng),
    ]
    for t in samples:
        out = getattr(t, protocols.CLASSICAL_CHANNEL)
        if not (isinstance(out, int) and 0 <= out < t.dim):
            problems.append(f"{t.scheme} message {out!r} not in [0, {t.dim})")
        keys = set(t.to_dict()) - {"transcript_version"}
        if keys != fields:
            problems.append(f"{t.scheme} JSON keys differ from schema")
    return Check("8 one n-valued classical message", not problems, float(len(problems)), "; ".join(problems))


def run_all(seed: int = 0) -> list[Check]:
    streams = RandomSource(seed).spawn(4)
    return [
        reference_matrices(),
        quaternion_construction(),
        octonion_construction(),
        minimum_round_trip(streams[0]),
        equatorial_round_trip(streams[1]),
        dimension_gate(),
        omega_decomposition(streams[2]),
        classical_cost(streams[3]),
    ]
