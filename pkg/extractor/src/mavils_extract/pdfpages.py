"""PDF page access: page counting and rasterization.

Two renderers sit behind `open_pdf`:

- `PdfiumPages` wraps pypdfium2 and handles arbitrary decks (text, vector
  graphics); it is the default when the library is installed.
- `ImagePdfPages` is a dependency-free reader for the subset of PDFs whose
  pages are single full-page Flate-compressed RGB images, as produced by
  `write_image_pdf` below (and by many scan-to-PDF tools). It keeps the
  pipeline and its tests runnable offline.

Both expose `page_count` and `render(index, dpi) -> uint8 RGB array`.
"""

from __future__ import annotations

import re
import zlib
from pathlib import Path

import numpy as np


def write_image_pdf(images, path, dpi: int = 150) -> None:
    """Write one RGB image per page, full-bleed, Flate-compressed.

    The media box is sized so rendering back at the same dpi reproduces
    each image at its original pixel size.
    """
    images = [np.ascontiguousarray(np.asarray(img, dtype=np.uint8)) for img in images]
    if not images:
        raise ValueError("need at least one page image")
    for img in images:
        if img.ndim != 3 or img.shape[2] != 3:
            raise ValueError(f"page images must be (h, w, 3) uint8, got {img.shape}")

    objects: list[bytes] = []  # 1-indexed body of each object

    def ref(num: int) -> bytes:
        return f"{num} 0 R".encode()

    n_pages = len(images)
    page_nums = [3 + i * 3 for i in range(n_pages)]
    objects.append(b"<< /Type /Catalog /Pages 2 0 R >>")  # object 1
    kids = b" ".join(ref(num) for num in page_nums)
    objects.append(b"<< /Type /Pages /Kids [" + kids + b"] /Count %d >>" % n_pages)  # object 2

    for i, img in enumerate(images):
        h, w = img.shape[:2]
        pts_w = w * 72.0 / dpi
        pts_h = h * 72.0 / dpi
        page_num, img_num, content_num = page_nums[i], page_nums[i] + 1, page_nums[i] + 2
        objects.append(
            (
                f"<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {pts_w:.4f} {pts_h:.4f}] "
                f"/Resources << /XObject << /Im0 {img_num} 0 R >> >> "
                f"/Contents {content_num} 0 R >>"
            ).encode()
        )
        payload = zlib.compress(img.tobytes())
        objects.append(
            (
                f"<< /Type /XObject /Subtype /Image /Width {w} /Height {h} "
                f"/ColorSpace /DeviceRGB /BitsPerComponent 8 /Filter /FlateDecode "
                f"/Length {len(payload)} >>\nstream\n"
            ).encode()
            + payload
            + b"\nendstream"
        )
        draw = f"q {pts_w:.4f} 0 0 {pts_h:.4f} 0 0 cm /Im0 Do Q".encode()
        objects.append(
            (f"<< /Length {len(draw)} >>\nstream\n").encode() + draw + b"\nendstream"
        )

    out = bytearray(b"%PDF-1.4\n")
    offsets = [0]
    for num, body in enumerate(objects, start=1):
        offsets.append(len(out))
        out += f"{num} 0 obj\n".encode() + body + b"\nendobj\n"
    xref_at = len(out)
    out += f"xref\n0 {len(objects) + 1}\n".encode()
    out += b"0000000000 65535 f \n"
    for offset in offsets[1:]:
        out += f"{offset:010d} 00000 n \n".encode()
    out += (
        f"trailer\n<< /Size {len(objects) + 1} /Root 1 0 R >>\nstartxref\n{xref_at}\n%%EOF\n"
    ).encode()
    Path(path).write_bytes(bytes(out))


_OBJ = re.compile(rb"(\d+)\s+0\s+obj\s*(.*?)\s*endobj", re.DOTALL)
_KIDS = re.compile(rb"/Kids\s*\[(.*?)\]", re.DOTALL)
_REF = re.compile(rb"(\d+)\s+0\s+R")
_DIM = re.compile(rb"/Width\s+(\d+).*?/Height\s+(\d+)", re.DOTALL)
_XOBJ = re.compile(rb"/XObject\s*<<[^>]*?(\d+)\s+0\s+R")
_STREAM = re.compile(rb"stream\r?\n(.*)\nendstream$", re.DOTALL)
_MEDIABOX = re.compile(rb"/MediaBox\s*\[\s*0\s+0\s+([\d.]+)\s+([\d.]+)\s*\]")


class ImagePdfPages:
    """Reader for single-image-per-page Flate RGB PDFs."""

    def __init__(self, path):
        self.path = Path(path)
        data = self.path.read_bytes()
        if not data.startswith(b"%PDF"):
            raise ValueError(f"{path}: not a PDF file")
        self._objects = {int(num): body for num, body in _OBJ.findall(data)}
        pages_obj = next(
            (b for b in self._objects.values() if b"/Type /Pages" in b or b"/Type/Pages" in b),
            None,
        )
        if pages_obj is None:
            raise ValueError(f"{path}: no page tree found")
        kids = _KIDS.search(pages_obj)
        if kids is None:
            raise ValueError(f"{path}: page tree has no /Kids")
        self._page_objects = [int(num) for num in _REF.findall(kids.group(1))]
        if not self._page_objects:
            raise ValueError(f"{path}: empty page tree")

    @property
    def page_count(self) -> int:
        return len(self._page_objects)

    def render(self, index: int, dpi: int = 150) -> np.ndarray:
        if not (0 <= index < self.page_count):
            raise IndexError(f"page {index} out of range (0..{self.page_count - 1})")
        page = self._objects[self._page_objects[index]]
        xobj = _XOBJ.search(page)
        if xobj is None:
            raise ValueError(
                f"{self.path}: page {index} carries no image XObject; this reader handles "
                "image-only PDFs - install pypdfium2 for general decks"
            )
        image_obj = self._objects[int(xobj.group(1))]
        dim = _DIM.search(image_obj)
        stream = _STREAM.search(image_obj)
        if dim is None or stream is None or b"/FlateDecode" not in image_obj:
            raise ValueError(
                f"{self.path}: page {index} image is not Flate RGB; install pypdfium2"
            )
        width, height = int(dim.group(1)), int(dim.group(2))
        raw = zlib.decompress(stream.group(1))
        img = np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3)
        box = _MEDIABOX.search(page)
        if box is None:
            return img
        target = (
            max(1, round(float(box.group(1)) * dpi / 72.0)),
            max(1, round(float(box.group(2)) * dpi / 72.0)),
        )
        if target == (width, height):
            return img
        from PIL import Image

        return np.asarray(Image.fromarray(img).resize(target, Image.NEAREST))


class PdfiumPages:
    """pypdfium2 adapter for arbitrary PDF decks."""

    def __init__(self, path):
        try:
            import pypdfium2
        except ImportError as exc:
            raise RuntimeError("pypdfium2 is not installed") from exc
        self.path = Path(path)
        self._doc = pypdfium2.PdfDocument(str(path))

    @property
    def page_count(self) -> int:
        return len(self._doc)

    def render(self, index: int, dpi: int = 150) -> np.ndarray:
        page = self._doc[index]
        bitmap = page.render(scale=dpi / 72.0)
        return np.asarray(bitmap.to_pil().convert("RGB"))


def open_pdf(path, renderer: str = "auto"):
    """Open a PDF with the requested renderer ("auto", "pdfium", "image-pdf")."""
    if renderer == "pdfium":
        return PdfiumPages(path)
    if renderer == "image-pdf":
        return ImagePdfPages(path)
    if renderer != "auto":
        raise ValueError(f"unknown PDF renderer {renderer!r}")
    try:
        return PdfiumPages(path)
    except RuntimeError:
        return ImagePdfPages(path)
