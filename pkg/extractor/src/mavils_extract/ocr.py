"""OCR engines behind a small registry.

The default engine is Tesseract (via pytesseract), matching what the
embedding files are meant to be produced with in production. The built-in
"boxfont" engine recognizes only the package's own 5x7 bitmap font and
exists so pipelines and tests can run fully offline; it is a real, if
minimal, template matcher: it infers the rendering scale, segments glyph
cells, and classifies each cell against the font templates.
"""

from __future__ import annotations

import warnings

import numpy as np

from .glyphs import ADVANCE, GLYPH_H, GLYPH_W, LINE_PITCH, templates

DEFAULT_OCR = "tesseract"


def _to_gray(image) -> np.ndarray:
    arr = np.asarray(image)
    if arr.ndim == 3:
        arr = arr.mean(axis=2)
    return arr.astype(np.float64)


class TemplateOcr:
    """Recognize text rendered in the built-in 5x7 font."""

    #: maximum pixel mismatches tolerated per 5x7 glyph cell
    max_hamming = 3

    def __init__(self):
        self._templates = templates()

    def recognize(self, image) -> str:
        gray = _to_gray(image)
        binary = gray < 128.0
        if not binary.any():
            return ""
        # crop to the glyph bounding box: the renderer lays glyph pixels on
        # an s x s block grid anchored there
        ys, xs = np.nonzero(binary)
        binary = binary[ys.min() : ys.max() + 1, xs.min() : xs.max() + 1]
        scale = self._infer_scale(binary)
        if scale is None:
            warnings.warn("unreadable image: no glyph grid found", stacklevel=2)
            return ""
        grid = self._downsample(binary, scale)
        lines = [self._read_line(band) for band in self._line_bands(grid)]
        return "\n".join(lines).strip()

    def _infer_scale(self, binary: np.ndarray) -> int | None:
        # The renderer draws glyph pixels as exact s x s blocks; the true
        # scale is the one whose block grid reproduces the image best.
        height = binary.shape[0]
        best = None
        for scale in range(1, max(2, height // GLYPH_H + 2)):
            grid = self._downsample(binary, scale)
            if not grid.any():
                continue
            rebuilt = np.kron(grid, np.ones((scale, scale), dtype=bool))
            rebuilt = rebuilt[: binary.shape[0], : binary.shape[1]]
            padded = np.zeros_like(binary)
            padded[: rebuilt.shape[0], : rebuilt.shape[1]] = rebuilt
            err = np.count_nonzero(padded != binary) / max(1, np.count_nonzero(binary))
            if err < 0.05 and (best is None or scale > best):
                best = scale
        return best

    @staticmethod
    def _downsample(binary: np.ndarray, scale: int) -> np.ndarray:
        h = binary.shape[0] // scale * scale
        w = binary.shape[1] // scale * scale
        if h == 0 or w == 0:
            return np.zeros((0, 0), dtype=bool)
        blocks = binary[:h, :w].reshape(h // scale, scale, w // scale, scale)
        return blocks.mean(axis=(1, 3)) > 0.5

    @staticmethod
    def _line_bands(grid: np.ndarray):
        occupied = grid.any(axis=1)
        bands = []
        start = None
        for y, filled in enumerate(occupied):
            if filled and start is None:
                start = y
            elif not filled and start is not None:
                bands.append(grid[start:y])
                start = None
        if start is not None:
            bands.append(grid[start:])
        # glyph rows of one text line are GLYPH_H tall; taller bands are
        # split on the renderer's fixed line pitch
        out = []
        for band in bands:
            for y in range(0, band.shape[0], LINE_PITCH):
                chunk = band[y : y + GLYPH_H]
                if chunk.any():
                    out.append(chunk)
        return out

    def _read_line(self, band: np.ndarray) -> str:
        if band.shape[0] < GLYPH_H:
            pad = np.zeros((GLYPH_H - band.shape[0], band.shape[1]), dtype=bool)
            band = np.vstack([band, pad])
        cols = np.nonzero(band.any(axis=0))[0]
        if cols.size == 0:
            return ""
        first, last = int(cols[0]), int(cols[-1])
        # The character grid has pitch ADVANCE but an unknown phase: glyphs
        # like I or 1 leave their cell's first column blank. Try every
        # phase and keep the best-matching decode.
        best_text, best_err = "", None
        for offset in range(ADVANCE):
            start = first - offset
            if start + GLYPH_W <= 0:
                continue
            chars, total_err = [], 0
            x = start
            while x <= last:
                cell = self._cell(band, x)
                if not cell.any():
                    chars.append(" ")
                else:
                    char, err = self._classify(cell)
                    chars.append(char)
                    total_err += err
                x += ADVANCE
            if best_err is None or total_err < best_err:
                best_text, best_err = "".join(chars).strip(), total_err
        return best_text

    @staticmethod
    def _cell(band: np.ndarray, x: int) -> np.ndarray:
        cell = np.zeros((GLYPH_H, GLYPH_W), dtype=bool)
        lo, hi = max(x, 0), min(x + GLYPH_W, band.shape[1])
        if lo < hi:
            cell[:, lo - x : hi - x] = band[:GLYPH_H, lo:hi]
        return cell

    def _classify(self, cell: np.ndarray) -> tuple[str, int]:
        best_char, best_err = "", GLYPH_H * GLYPH_W
        for char, template in self._templates.items():
            err = int(np.count_nonzero(cell != template))
            if err < best_err:
                best_char, best_err = char, err
        if best_err <= self.max_hamming:
            return best_char, best_err
        return "", best_err


class TesseractOcr:
    """Tesseract adapter; requires pytesseract and the tesseract binary."""

    def __init__(self):
        try:
            import pytesseract
        except ImportError as exc:
            raise RuntimeError(
                "tesseract engine unavailable: install pytesseract and the tesseract binary, "
                "or use the offline 'boxfont' engine"
            ) from exc
        self._pytesseract = pytesseract

    def recognize(self, image) -> str:
        from PIL import Image

        arr = np.asarray(image)
        return self._pytesseract.image_to_string(Image.fromarray(arr)).strip()


def get_ocr_engine(engine_id: str):
    if engine_id == "boxfont":
        return TemplateOcr()
    if engine_id == "tesseract":
        return TesseractOcr()
    raise ValueError(f"unknown OCR engine {engine_id!r} (known: tesseract, boxfont)")


def ocr_texts(images, engine) -> list[str]:
    """One recognized text per image; blank images yield empty strings."""
    if isinstance(engine, str):
        engine = get_ocr_engine(engine)
    return [engine.recognize(image) for image in images]
