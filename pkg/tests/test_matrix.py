"""Embedding containers and cosine similarity construction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mavils import EmbeddingMatrix, SimilarityMatrix, clamp_similarity, cosine_similarity_matrix


def emb(rows, kind="frame", modality="text"):
    return EmbeddingMatrix(np.asarray(rows, dtype=float), kind=kind, modality=modality)


class TestEmbeddingMatrix:
    def test_shape_properties(self):
        e = emb([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        assert e.rows == 2
        assert e.dims == 3

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="at least 1x1"):
            emb(np.empty((0, 4)))
        with pytest.raises(ValueError, match="at least 1x1"):
            emb(np.empty((3, 0)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="row 1"):
            emb([[1.0, 2.0], [np.nan, 0.0]])
        with pytest.raises(ValueError, match="non-finite"):
            emb([[np.inf, 0.0]])

    def test_rejects_bad_kind_and_modality(self):
        with pytest.raises(ValueError, match="kind"):
            emb([[1.0]], kind="slides")
        with pytest.raises(ValueError, match="modality"):
            emb([[1.0]], modality="video")

    def test_data_is_readonly(self):
        e = emb([[1.0, 2.0]])
        with pytest.raises(ValueError):
            e.data[0, 0] = 5.0


class TestSimilarityMatrix:
    def test_clamps_on_construction(self):
        s = SimilarityMatrix([[1.2, -3.0, 0.5]])
        assert s.values.tolist() == [[1.0, -1.0, 0.5]]

    def test_rejects_nan_with_location(self):
        with pytest.raises(ValueError, match=r"\(1, 2\)"):
            SimilarityMatrix([[0.0, 0.0, 0.0], [0.0, 0.0, np.nan]])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            SimilarityMatrix(np.empty((0, 3)))

    def test_shape(self):
        s = SimilarityMatrix(np.zeros((4, 7)))
        assert s.n_frames == 4
        assert s.m_slides == 7
        assert s.shape == (4, 7)


class TestCosineSimilarity:
    def test_identical_unit_vectors(self):
        out = cosine_similarity_matrix(emb([[1, 0]]), emb([[1, 0]], kind="slide"))
        assert out.values.tolist() == [[1.0]]

    def test_orthogonal(self):
        out = cosine_similarity_matrix(emb([[1, 0]]), emb([[0, 1]], kind="slide"))
        assert out.values.tolist() == [[0.0]]

    def test_zero_norm_row_gives_zero(self):
        out = cosine_similarity_matrix(emb([[0, 0]]), emb([[1, 0]], kind="slide"))
        assert out.values.tolist() == [[0.0]]

    def test_hand_computed(self):
        # dot = 24, norms = 5 * 5
        out = cosine_similarity_matrix(emb([[3, 4]]), emb([[4, 3]], kind="slide"))
        assert out.values[0, 0] == pytest.approx(24 / 25, abs=1e-12)

    def test_output_shape_and_tag(self):
        frames = emb(np.ones((5, 3)), modality="audio")
        slides = emb(np.ones((2, 3)), kind="slide")
        out = cosine_similarity_matrix(frames, slides)
        assert out.shape == (5, 2)
        assert out.modality_tag == "audio"

    def test_dim_mismatch_names_both(self):
        with pytest.raises(ValueError, match="frames have 2, slides have 3"):
            cosine_similarity_matrix(emb([[1, 0]]), emb([[1, 0, 0]], kind="slide"))

    def test_kind_checks(self):
        with pytest.raises(ValueError, match="frame"):
            cosine_similarity_matrix(emb([[1]], kind="slide"), emb([[1]], kind="slide"))
        with pytest.raises(ValueError, match="slide"):
            cosine_similarity_matrix(emb([[1]]), emb([[1]]))

    def test_self_similarity_diagonal(self):
        rng = np.random.default_rng(3)
        data = rng.normal(size=(6, 8))
        out = cosine_similarity_matrix(
            EmbeddingMatrix(data, kind="frame", modality="text"),
            EmbeddingMatrix(data, kind="slide", modality="text"),
        )
        assert np.allclose(np.diag(out.values), 1.0, atol=1e-12)

    @given(
        scale=st.floats(min_value=1e-3, max_value=1e3),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=50, deadline=None)
    def test_scale_invariance(self, scale, seed):
        rng = np.random.default_rng(seed)
        f = rng.normal(size=(3, 5))
        s = rng.normal(size=(4, 5))
        base = cosine_similarity_matrix(
            EmbeddingMatrix(f, kind="frame", modality="text"),
            EmbeddingMatrix(s, kind="slide", modality="text"),
        )
        scaled_f = f.copy()
        scaled_f[1] *= scale
        scaled = cosine_similarity_matrix(
            EmbeddingMatrix(scaled_f, kind="frame", modality="text"),
            EmbeddingMatrix(s, kind="slide", modality="text"),
        )
        assert np.allclose(base.values, scaled.values, atol=1e-6)


class TestClampSimilarity:
    def test_upper_and_lower(self):
        assert clamp_similarity([[1.2]]).values.tolist() == [[1.0]]
        assert clamp_similarity([[-3.0]]).values.tolist() == [[-1.0]]

    def test_identity_inside_range(self):
        assert clamp_similarity([[0.5]]).values.tolist() == [[0.5]]

    def test_nan_location(self):
        with pytest.raises(ValueError, match=r"\(0, 1\)"):
            clamp_similarity([[0.0, np.nan]])

    def test_preserves_tag(self):
        s = SimilarityMatrix([[0.5]], modality_tag="text")
        assert clamp_similarity(s).modality_tag == "text"
