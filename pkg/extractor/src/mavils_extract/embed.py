"""Text and image embedding engines behind a small registry.

Production defaults are the multilingual sentence-transformer for text and
an efficient vision transformer for images (mean-pooled last hidden
states). Both require downloaded weights, so the registry also provides
deterministic offline engines: a feature-hashing text embedder and a
patch-statistics image embedder. Texts with several sentences are pooled
by the mean of their sentence embeddings; an empty text embeds to the
zero vector, which downstream cosine similarity maps to "no evidence".
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

DEFAULT_TEXT_MODEL = "distiluse-base-multilingual-cased"
DEFAULT_IMAGE_MODEL = "MBZUAI/swiftformer-xs"

_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")


def split_sentences(text: str) -> list[str]:
    return [part.strip() for part in _SENTENCE_SPLIT.split(text) if part.strip()]


class HashTextEmbedder:
    """Feature-hashing embedder over words and character trigrams.

    Deterministic across processes (hashes via blake2b, not the salted
    builtin hash). Not semantically meaningful, but identical texts map to
    identical vectors and sharing words raises cosine similarity, which is
    all offline pipelines and tests need.
    """

    def __init__(self, dims: int = 256):
        if dims < 1:
            raise ValueError(f"dims must be >= 1, got {dims}")
        self.dims = dims

    @property
    def model_id(self) -> str:
        return f"hash-ngram-{self.dims}"

    def _tokens(self, sentence: str):
        words = re.findall(r"[\w']+", sentence.lower())
        for word in words:
            yield word
            padded = f"^{word}$"
            for i in range(len(padded) - 2):
                yield padded[i : i + 3]

    def _embed_sentence(self, sentence: str) -> np.ndarray:
        vec = np.zeros(self.dims)
        for token in self._tokens(sentence):
            digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
            value = int.from_bytes(digest, "little")
            idx = value % self.dims
            sign = 1.0 if (value >> 63) & 1 else -1.0
            vec[idx] += sign
        norm = np.linalg.norm(vec)
        return vec / norm if norm > 0 else vec

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dims))
        for i, text in enumerate(texts):
            sentences = split_sentences(text)
            if sentences:
                out[i] = np.mean([self._embed_sentence(s) for s in sentences], axis=0)
        return out


class SentenceTransformerEmbedder:
    """Adapter for any sentence-transformers model id."""

    def __init__(self, model_id: str):
        self.model_id = model_id
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise RuntimeError(f"cannot load text model {model_id!r}: {exc}") from exc
        try:
            self._model = SentenceTransformer(model_id)
        except Exception as exc:
            raise RuntimeError(f"cannot load text model {model_id!r}: {exc}") from exc
        self.dims = int(self._model.get_sentence_embedding_dimension())

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dims))
        for i, text in enumerate(texts):
            sentences = split_sentences(text)
            if sentences:
                vectors = self._model.encode(sentences, convert_to_numpy=True)
                out[i] = np.asarray(vectors, dtype=np.float64).mean(axis=0)
        return out


class PatchImageEmbedder:
    """Per-patch mean and standard deviation over a fixed grayscale grid.

    Deterministic and dependency-free; similar page images produce nearby
    vectors, which suffices for offline pipelines and tests.
    """

    def __init__(self, grid: int = 8):
        if grid < 1:
            raise ValueError(f"grid must be >= 1, got {grid}")
        self.grid = grid
        self.dims = 2 * grid * grid

    @property
    def model_id(self) -> str:
        return f"patch-stats-{self.grid}"

    def embed(self, images) -> np.ndarray:
        out = np.zeros((len(images), self.dims))
        g = self.grid
        for i, image in enumerate(images):
            arr = np.asarray(image, dtype=np.float64)
            if arr.ndim == 3:
                arr = arr.mean(axis=2)
            h = arr.shape[0] // g * g
            w = arr.shape[1] // g * g
            if h == 0 or w == 0:
                continue
            blocks = arr[:h, :w].reshape(g, h // g, g, w // g)
            means = blocks.mean(axis=(1, 3)).ravel() / 255.0
            stds = blocks.std(axis=(1, 3)).ravel() / 255.0
            out[i] = np.concatenate([means, stds])
        return out


class HFImageEmbedder:
    """Vision-transformer adapter: mean-pooled last hidden states."""

    def __init__(self, model_id: str):
        self.model_id = model_id
        try:
            import torch  # noqa: F401
            from transformers import AutoImageProcessor, AutoModel
        except ImportError as exc:
            raise RuntimeError(f"cannot load image model {model_id!r}: {exc}") from exc
        try:
            self._processor = AutoImageProcessor.from_pretrained(model_id)
            self._model = AutoModel.from_pretrained(model_id)
        except Exception as exc:
            raise RuntimeError(f"cannot load image model {model_id!r}: {exc}") from exc
        self._model.eval()
        self.dims = int(self._model.config.hidden_size)

    def embed(self, images) -> np.ndarray:
        import torch
        from PIL import Image

        pil = [Image.fromarray(np.asarray(img).astype(np.uint8)).convert("RGB") for img in images]
        with torch.no_grad():
            inputs = self._processor(images=pil, return_tensors="pt")
            hidden = self._model(**inputs).last_hidden_state
            pooled = hidden.mean(dim=tuple(range(1, hidden.dim() - 1)))
        return pooled.numpy().astype(np.float64)


_HASH_PREFIX = re.compile(r"^hash-ngram-(\d+)$")
_PATCH_PREFIX = re.compile(r"^patch-stats-(\d+)$")


def get_text_embedder(model_id: str):
    match = _HASH_PREFIX.match(model_id)
    if match:
        return HashTextEmbedder(dims=int(match.group(1)))
    return SentenceTransformerEmbedder(model_id)


def get_image_embedder(model_id: str):
    match = _PATCH_PREFIX.match(model_id)
    if match:
        return PatchImageEmbedder(grid=int(match.group(1)))
    return HFImageEmbedder(model_id)


def embed_texts(texts: list[str], model_id: str) -> np.ndarray:
    return get_text_embedder(model_id).embed(texts)


def embed_images(images, model_id: str) -> np.ndarray:
    return get_image_embedder(model_id).embed(images)
