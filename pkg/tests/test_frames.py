import json

import numpy as np
import pytest

from rsplab import algebras, frames
from rsplab.errors import DimensionMismatchError, DivisionAlgebraError
from rsplab.frames import FrameFamily, build_frame_family, reference_family, verify_frame_family

J = np.array([[0, -1], [1, 0]])
O = np.zeros((2, 2), dtype=int)
I2 = np.eye(2, dtype=int)


def symmetric_family(n):
    mats = [np.eye(n, dtype=int), np.diag([1] + [-1] * (n - 1))]
    mats += [np.eye(n, dtype=int)] * (n - 2)
    return FrameFamily(tuple(mats))


class TestReferenceFamily:
    def test_n4_v1(self):
        assert np.array_equal(reference_family(4)[1], np.block([[J, O], [O, J]]))

    def test_n4_v0(self):
        assert np.array_equal(reference_family(4)[0], np.eye(4))

    def test_n8_v6_bottom_left_identity(self):
        assert np.array_equal(reference_family(8)[6][6:, 0:2], I2)

    def test_integer_entries(self):
        for n in (4, 8):
            assert reference_family(n).is_integer()

    def test_unsupported(self):
        with pytest.raises(ValueError):
            reference_family(2)

    def test_n4_passes_exactly(self):
        r = verify_frame_family(reference_family(4), tol=0.0)
        assert r.passed and r.max_residual == 0

    def test_n8_v1_breaks_frame_condition(self):
        # every block of V_1 is J, so V_1 commutes with the identity blocks of V_2
        r = verify_frame_family(reference_family(8), tol=0.0)
        for name in ("identity", "orthogonality", "antisymmetry"):
            assert r.condition(name).passed
        assert not r.condition("frame").passed
        assert r.condition("frame").max_residual == 2
        f = reference_family(8)
        assert np.array_equal(f[1].T @ f[2] + f[2].T @ f[1] != 0, np.pad(np.fliplr(np.eye(4)), ((4, 0), (4, 0))) != 0)


class TestVerify:
    def test_symmetric_v1_fails(self):
        r = verify_frame_family(symmetric_family(4))
        assert not r.condition("antisymmetry").passed
        assert not r.condition("frame").passed

    def test_trivial_n1(self):
        r = verify_frame_family(FrameFamily((np.eye(1, dtype=int),)))
        assert r.passed

    def test_reports_every_condition(self):
        r = verify_frame_family(reference_family(4))
        assert [c.name for c in r.conditions] == ["identity", "orthogonality", "antisymmetry", "frame"]

    def test_bad_shapes(self):
        with pytest.raises(DimensionMismatchError):
            FrameFamily((np.eye(2), np.eye(3)))


class TestBuild:
    def test_quaternions_equal_reference(self):
        assert build_frame_family(algebras.standard_table("quaternions")) == reference_family(4)

    def test_complexes(self):
        f = build_frame_family(algebras.standard_table("complexes"))
        assert f == FrameFamily((np.eye(2, dtype=int), J))

    def test_reals(self):
        assert build_frame_family(algebras.standard_table("reals")) == FrameFamily((np.eye(1, dtype=int),))

    def test_octonions_pass(self):
        f = build_frame_family(algebras.standard_table("octonions"))
        r = verify_frame_family(f, tol=0.0)
        assert r.passed and r.max_residual == 0

    @pytest.mark.parametrize("name", ["reals", "complexes", "quaternions", "octonions"])
    def test_constancy(self, name):
        t = algebras.standard_table(name)
        f = build_frame_family(t)
        assert frames.constancy_residual(t, f, 100, np.random.default_rng(5)) <= 1e-12

    def test_rejects_broken_table(self):
        broken = algebras.MultiplicationTable("broken", [[0, 1], [0, 1]], [[1, 1], [1, 1]])
        with pytest.raises(DivisionAlgebraError):
            build_frame_family(broken)


class TestReconcile:
    def test_n4_exact(self):
        rec = frames.reconcile_families(build_frame_family(algebras.standard_table("quaternions")), reference_family(4))
        assert rec.exact
        assert [(m.built_index, m.sign) for m in rec.matches] == [(i, 1) for i in range(4)]

    def test_n8_identity_map_except_v1(self):
        built = build_frame_family(algebras.standard_table("octonions"))
        rec = frames.reconcile_families(built, reference_family(8))
        assert not rec.exact
        for m in rec.matches:
            assert (m.built_index, m.sign) == (m.reference_index, 1)
            assert m.exact == (m.reference_index != 1)
        v1 = rec.matches[1]
        assert v1.mismatched_entries == [(6, 7), (7, 6)]
        # the octonion V_1 is the tabulated one with its last diagonal block negated
        fixed = reference_family(8)[1].copy()
        fixed[6:, 6:] *= -1
        assert np.array_equal(fixed, built[1])
        assert json.loads(json.dumps(rec.to_dict()))["exact_signed_permutation"] is False


class TestPointwiseEquivalence:
    @pytest.mark.parametrize(
        "family",
        [
            reference_family(4),
            frames.standard_family(8),
            frames.standard_family(2),
            frames.standard_family(1),
        ],
        ids=["ref4", "oct", "cplx", "real"],
    )
    def test_passing_families(self, family):
        assert verify_frame_family(family, 1e-10).passed
        assert frames.pointwise_gram_residual(family, 1000, np.random.default_rng(1)) <= 1e-10

    @pytest.mark.parametrize("family", [reference_family(8), symmetric_family(4)], ids=["ref8", "sym"])
    def test_failing_families(self, family):
        assert not verify_frame_family(family, 1e-10).passed
        assert frames.pointwise_gram_residual(family, 1000, np.random.default_rng(1)) > 1e-10


class TestRadonHurwitz:
    @pytest.mark.parametrize("n,rho", [(1, 1), (2, 2), (4, 4), (8, 8), (3, 1), (16, 9), (12, 4), (32, 10), (64, 12)])
    def test_values(self, n, rho):
        assert frames.radon_hurwitz(n) == rho

    def test_fixed_points(self):
        assert [n for n in range(1, 257) if frames.radon_hurwitz(n) == n] == [1, 2, 4, 8]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            frames.radon_hurwitz(0)


class TestVerdict:
    def test_n4(self):
        v = frames.realizability_verdict(4)
        assert v.realizable and v.obstruction_note == ""

    def test_n3_odd_note(self):
        v = frames.realizability_verdict(3)
        assert not v.realizable and "odd" in v.obstruction_note and "det" in v.obstruction_note

    def test_n16(self):
        v = frames.realizability_verdict(16)
        assert not v.realizable and v.radon_number == 9 and "odd" not in v.obstruction_note

    def test_up_to_64(self):
        realizable = [n for n in range(1, 65) if frames.realizability_verdict(n).realizable]
        assert realizable == [1, 2, 4, 8]

    def test_odd_antisymmetric_determinant(self):
        rng = np.random.default_rng(0)
        for n in (3, 5, 7):
            A = rng.standard_normal((n, n))
            assert abs(np.linalg.det(A - A.T)) <= 1e-10


class TestJson:
    @pytest.mark.parametrize("family", [reference_family(8), frames.standard_family(4)])
    def test_round_trip_lossless(self, family):
        text = json.dumps(family.to_dict())
        back = FrameFamily.from_dict(json.loads(text))
        assert back == family
        assert back.is_integer()
        assert all(isinstance(x, int) for row in json.loads(text)["matrices"][1] for x in row)

    def test_float_entries_survive(self):
        data = {"dim": 1, "matrices": [[[1.0]]]}
        assert FrameFamily.from_dict(data)[0].dtype.kind == "f"

    def test_declared_dim_checked(self):
        with pytest.raises(DimensionMismatchError):
            FrameFamily.from_dict({"dim": 2, "matrices": [[[1]]]})
