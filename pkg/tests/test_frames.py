import numpy as np
import pytest

from framekit import (
    DegenerateFrameError,
    Frame,
    OffSpanError,
    Tolerance,
    analysis,
    dual_frame,
    frame_bounds,
    frame_coefficients,
    frame_operator,
    is_tight,
    load_frame,
    load_frame_csv,
    save_frame,
    save_frame_csv,
    synthesis,
)
from framekit.blocks import block_frame, lemma5_block, perturbed_block_frame


def onb(d):
    return Frame(np.eye(d))


class TestFrameType:
    def test_requires_finite_entries(self):
        with pytest.raises(ValueError):
            Frame(np.array([[np.inf, 1.0]]))

    def test_requires_at_least_one_vector(self):
        with pytest.raises(ValueError):
            Frame(np.zeros((3, 0)))

    def test_from_vectors_column_order(self):
        f = Frame.from_vectors([[1.0, 0.0], [3.0, 4.0]])
        np.testing.assert_allclose(f.matrix, [[1.0, 3.0], [0.0, 4.0]])
        assert f.dim == 2 and f.size == 2 and f.field == "real"

    def test_matrix_is_immutable(self):
        f = onb(2)
        with pytest.raises(ValueError):
            f.matrix[0, 0] = 5.0


class TestSynthesis:
    def test_zero_coefficients(self):
        np.testing.assert_allclose(synthesis(onb(3), [0.0, 0.0, 0.0]), np.zeros(3))

    def test_standard_basis(self):
        np.testing.assert_allclose(synthesis(onb(2), [1.0, 2.0]), [1.0, 2.0])

    def test_block_kernel_combination(self):
        f = lemma5_block(3)
        out = synthesis(f, [1.0, 1.0, 1.0, 0.0])
        np.testing.assert_allclose(out, np.zeros(3), atol=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            synthesis(onb(2), [1.0])


class TestAnalysis:
    def test_zero_vector(self):
        np.testing.assert_allclose(analysis(onb(3), np.zeros(3)), np.zeros(3))

    def test_onb_gives_coordinates(self):
        np.testing.assert_allclose(analysis(onb(2), [0.5, -2.0]), [0.5, -2.0])

    def test_block2_values(self):
        f = lemma5_block(2)
        got = analysis(f, [1.0, 0.0])
        np.testing.assert_allclose(got, [0.5, -0.5, 1.0 / np.sqrt(2.0)], atol=1e-15)

    def test_first_slot_linear_convention(self):
        # <f, g> linear in f: coefficients of i*f are i*coefficients
        f = Frame(np.array([[1.0 + 1.0j], [0.5j]]))
        v = np.array([0.3 - 0.2j, 1.0])
        np.testing.assert_allclose(analysis(f, 1j * v), 1j * analysis(f, v))

    def test_adjoint_identity(self):
        # <Tc, f> = <c, T*f> ties synthesis and analysis together
        rng = np.random.default_rng(2)
        t = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
        f = Frame(t)
        c = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        lhs = np.vdot(v, synthesis(f, c))  # vdot conjugates the first arg
        rhs = np.vdot(analysis(f, v), c)
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestFrameOperator:
    def test_onb_identity(self):
        np.testing.assert_allclose(frame_operator(onb(3)), np.eye(3))

    def test_lemma5_blocks_are_parseval(self):
        for n in (1, 2, 5, 9):
            s = frame_operator(lemma5_block(n))
            np.testing.assert_allclose(s, np.eye(n), atol=1e-14)

    def test_doubled_vector(self):
        f = Frame(np.array([[1.0, 1.0]]))
        np.testing.assert_allclose(frame_operator(f), [[2.0]])

    def test_self_adjoint_psd(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            t = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
            s = frame_operator(Frame(t))
            np.testing.assert_allclose(s, s.conj().T, atol=1e-12)
            assert np.linalg.eigvalsh(s)[0] >= -1e-9


class TestFrameBounds:
    def test_block_frames_tight_at_one(self):
        for n in (1, 2, 4, 7):
            b = frame_bounds(block_frame(n).frame)
            assert b.lower == pytest.approx(1.0, abs=1e-10)
            assert b.upper == pytest.approx(1.0, abs=1e-10)
            assert b.spans_whole_space

    def test_perturbed_block_inside_guarantee(self):
        b = frame_bounds(perturbed_block_frame(4, 0.3).frame)
        assert 0.49 - 1e-12 <= b.lower <= b.upper <= 1.69 + 1e-12

    def test_partial_frame_reports_span_bound(self):
        f = Frame(np.array([[1.0], [0.0]]))
        b = frame_bounds(f)
        assert b.lower == pytest.approx(1.0)
        assert b.upper == pytest.approx(1.0)
        assert not b.spans_whole_space

    def test_zero_frame(self):
        b = frame_bounds(Frame(np.zeros((2, 3))))
        assert (b.lower, b.upper, b.spans_whole_space) == (0.0, 0.0, False)

    def test_bound_consistency_random_unit_vectors(self):
        rng = np.random.default_rng(8)
        for trial in range(10):
            d, m = int(rng.integers(2, 6)), int(rng.integers(2, 9))
            f = Frame(rng.standard_normal((d, m)))
            b = frame_bounds(f)
            basis = np.linalg.svd(f.matrix)[0][:, : np.linalg.matrix_rank(f.matrix)]
            for _ in range(200):
                v = rng.standard_normal(basis.shape[1])
                v = basis @ (v / np.linalg.norm(v))  # unit vector in the span
                energy = float(np.sum(np.abs(analysis(f, v)) ** 2))
                assert b.lower - 1e-9 <= energy <= b.upper + 1e-9


class TestDualFrame:
    def test_onb_self_dual(self):
        np.testing.assert_allclose(dual_frame(onb(3)).matrix, np.eye(3), atol=1e-12)

    def test_parseval_block_self_dual(self):
        f = block_frame(3).frame
        np.testing.assert_allclose(dual_frame(f).matrix, f.matrix, atol=1e-12)

    def test_doubled_vector_halves(self):
        f = Frame(np.array([[1.0, 1.0]]))
        np.testing.assert_allclose(dual_frame(f).matrix, [[0.5, 0.5]])

    def test_zero_frame_rejected(self):
        with pytest.raises(DegenerateFrameError):
            dual_frame(Frame(np.zeros((2, 2))))

    def test_dual_of_dual_is_original(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            d, m = int(rng.integers(1, 5)), int(rng.integers(1, 8))
            t = rng.standard_normal((d, m))
            if bool(rng.integers(0, 2)):
                t = t + 1j * rng.standard_normal((d, m))
            f = Frame(t)
            np.testing.assert_allclose(
                dual_frame(dual_frame(f)).matrix, f.matrix, atol=1e-9
            )


class TestFrameCoefficients:
    def test_zero_vector(self):
        np.testing.assert_allclose(
            frame_coefficients(onb(2), np.zeros(2)), np.zeros(2)
        )

    def test_onb_coordinates(self):
        np.testing.assert_allclose(frame_coefficients(onb(2), [1.5, -2.0]), [1.5, -2.0])

    def test_reconstruction_on_block_frame(self):
        f = block_frame(3).frame
        rng = np.random.default_rng(21)
        v = rng.standard_normal(f.dim)
        coeffs = frame_coefficients(f, v)
        err = np.linalg.norm(synthesis(f, coeffs) - v)
        assert err <= 1e-10 * np.linalg.norm(v)

    def test_off_span_reports_residual(self):
        f = Frame(np.array([[1.0], [0.0]]))
        with pytest.raises(OffSpanError) as info:
            frame_coefficients(f, [0.0, 1.0])
        assert info.value.residual == pytest.approx(1.0)

    def test_reconstruction_random_spanning_frames(self):
        rng = np.random.default_rng(34)
        for _ in range(25):
            d = int(rng.integers(1, 6))
            m = int(rng.integers(d, d + 5))
            t = rng.standard_normal((d, m))
            f = Frame(t)
            if not frame_bounds(f).spans_whole_space:
                continue
            v = rng.standard_normal(d)
            err = np.linalg.norm(synthesis(f, frame_coefficients(f, v)) - v)
            assert err <= 1e-9 * max(np.linalg.norm(v), 1e-12)


class TestTightness:
    def test_block_frame_tight_constant_one(self):
        flag, constant = is_tight(block_frame(4).frame)
        assert flag and constant == pytest.approx(1.0, abs=1e-10)

    def test_unbalanced_family_not_tight(self):
        f = Frame(np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))
        flag, constant = is_tight(f)
        assert not flag and constant is None
        b = frame_bounds(f)
        assert (b.lower, b.upper) == pytest.approx((1.0, 2.0))

    def test_scaled_onb(self):
        f = Frame(2.5 * np.eye(3))
        flag, constant = is_tight(f)
        assert flag and constant == pytest.approx(6.25)


class TestFrameFiles:
    def test_json_roundtrip_real(self, tmp_path):
        f = block_frame(3).frame
        path = tmp_path / "f.json"
        save_frame(path, f, blocks=3)
        loaded, blocks = load_frame(path)
        assert blocks == 3
        assert loaded.field == "real"
        assert np.array_equal(loaded.matrix, f.matrix)  # bit-exact

    def test_json_roundtrip_complex(self, tmp_path):
        rng = np.random.default_rng(55)
        f = Frame(rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4)))
        path = tmp_path / "c.json"
        save_frame(path, f)
        loaded, blocks = load_frame(path)
        assert blocks is None
        assert loaded.field == "complex"
        assert np.array_equal(loaded.matrix, f.matrix)

    def test_csv_roundtrip(self, tmp_path):
        rng = np.random.default_rng(56)
        f = Frame(rng.standard_normal((4, 7)))
        path = tmp_path / "f.csv"
        save_frame_csv(path, f)
        loaded = load_frame_csv(path)
        assert np.array_equal(loaded.matrix, f.matrix)

    def test_csv_rejects_complex(self, tmp_path):
        f = Frame(np.array([[1.0 + 1.0j]]))
        with pytest.raises(ValueError):
            save_frame_csv(tmp_path / "c.csv", f)

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2,\n  "field": oops}\n')
        with pytest.raises(ValueError, match="line 2"):
            load_frame(path)

    def test_wrong_vector_length_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 3, "field": "real", "vectors": [[1.0, 2.0]]}')
        with pytest.raises(ValueError, match="length 2"):
            load_frame(path)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rank_rel=0.0)
    with pytest.raises(ValueError):
        Tolerance(eq_abs=-1.0)
