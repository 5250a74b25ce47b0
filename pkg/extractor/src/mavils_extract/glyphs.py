"""Built-in 5x7 bitmap font: text rendering and glyph templates.

Used two ways: tests render known text into images with `render_text_image`,
and the template OCR engine recognizes exactly this font. Uppercase letters,
digits, and space only; other characters are skipped when rendering.
"""

from __future__ import annotations

import numpy as np

GLYPH_W = 5
GLYPH_H = 7
ADVANCE = 6  # glyph + one blank column
LINE_PITCH = 9  # glyph rows + two blank rows

_FONT_ROWS = {
    "A": ("01110", "10001", "10001", "11111", "10001", "10001", "10001"),
    "B": ("11110", "10001", "10001", "11110", "10001", "10001", "11110"),
    "C": ("01110", "10001", "10000", "10000", "10000", "10001", "01110"),
    "D": ("11110", "10001", "10001", "10001", "10001", "10001", "11110"),
    "E": ("11111", "10000", "10000", "11110", "10000", "10000", "11111"),
    "F": ("11111", "10000", "10000", "11110", "10000", "10000", "10000"),
    "G": ("01110", "10001", "10000", "10111", "10001", "10001", "01111"),
    "H": ("10001", "10001", "10001", "11111", "10001", "10001", "10001"),
    "I": ("01110", "00100", "00100", "00100", "00100", "00100", "01110"),
    "J": ("00111", "00010", "00010", "00010", "00010", "10010", "01100"),
    "K": ("10001", "10010", "10100", "11000", "10100", "10010", "10001"),
    "L": ("10000", "10000", "10000", "10000", "10000", "10000", "11111"),
    "M": ("10001", "11011", "10101", "10101", "10001", "10001", "10001"),
    "N": ("10001", "10001", "11001", "10101", "10011", "10001", "10001"),
    "O": ("01110", "10001", "10001", "10001", "10001", "10001", "01110"),
    "P": ("11110", "10001", "10001", "11110", "10000", "10000", "10000"),
    "Q": ("01110", "10001", "10001", "10001", "10101", "10010", "01101"),
    "R": ("11110", "10001", "10001", "11110", "10100", "10010", "10001"),
    "S": ("01111", "10000", "10000", "01110", "00001", "00001", "11110"),
    "T": ("11111", "00100", "00100", "00100", "00100", "00100", "00100"),
    "U": ("10001", "10001", "10001", "10001", "10001", "10001", "01110"),
    "V": ("10001", "10001", "10001", "10001", "10001", "01010", "00100"),
    "W": ("10001", "10001", "10001", "10101", "10101", "11011", "10001"),
    "X": ("10001", "10001", "01010", "00100", "01010", "10001", "10001"),
    "Y": ("10001", "10001", "01010", "00100", "00100", "00100", "00100"),
    "Z": ("11111", "00001", "00010", "00100", "01000", "10000", "11111"),
    "0": ("01110", "10001", "10011", "10101", "11001", "10001", "01110"),
    "1": ("00100", "01100", "00100", "00100", "00100", "00100", "01110"),
    "2": ("01110", "10001", "00001", "00010", "00100", "01000", "11111"),
    "3": ("11111", "00010", "00100", "00010", "00001", "10001", "01110"),
    "4": ("00010", "00110", "01010", "10010", "11111", "00010", "00010"),
    "5": ("11111", "10000", "11110", "00001", "00001", "10001", "01110"),
    "6": ("00110", "01000", "10000", "11110", "10001", "10001", "01110"),
    "7": ("11111", "00001", "00010", "00100", "01000", "01000", "01000"),
    "8": ("01110", "10001", "10001", "01110", "10001", "10001", "01110"),
    "9": ("01110", "10001", "10001", "01111", "00001", "00010", "01100"),
}


def glyph_bitmap(char: str) -> np.ndarray:
    """(7, 5) boolean bitmap for one supported character."""
    rows = _FONT_ROWS[char]
    return np.array([[c == "1" for c in row] for row in rows], dtype=bool)


def templates() -> dict[str, np.ndarray]:
    """All glyph bitmaps, keyed by character."""
    return {char: glyph_bitmap(char) for char in _FONT_ROWS}


def supported(char: str) -> bool:
    return char in _FONT_ROWS or char == " "


def render_text_image(text: str, scale: int = 4, margin: int = 8) -> np.ndarray:
    """Render text into a grayscale image (uint8, white background).

    Characters outside the font are dropped; lowercase input is uppercased.
    An empty (or fully unsupported) text yields a small blank image.
    """
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    lines = []
    for raw_line in text.upper().split("\n"):
        lines.append("".join(c for c in raw_line if supported(c)))
    width_chars = max((len(line) for line in lines), default=0)
    if width_chars == 0:
        return np.full((GLYPH_H * scale + 2 * margin, GLYPH_W * scale + 2 * margin), 255, dtype=np.uint8)

    grid_h = (len(lines) - 1) * LINE_PITCH + GLYPH_H
    grid_w = width_chars * ADVANCE - 1  # no trailing gap
    grid = np.zeros((grid_h, grid_w), dtype=bool)
    for li, line in enumerate(lines):
        for ci, char in enumerate(line):
            if char == " ":
                continue
            y = li * LINE_PITCH
            x = ci * ADVANCE
            grid[y : y + GLYPH_H, x : x + GLYPH_W] = glyph_bitmap(char)

    scaled = np.kron(grid, np.ones((scale, scale), dtype=bool))
    img = np.full(
        (scaled.shape[0] + 2 * margin, scaled.shape[1] + 2 * margin), 255, dtype=np.uint8
    )
    img[margin : margin + scaled.shape[0], margin : margin + scaled.shape[1]] = np.where(
        scaled, 0, 255
    )
    return img
