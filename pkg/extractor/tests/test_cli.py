"""Extractor command line."""

import json

from mavils_extract.cli import main
from mavils_extract.pipeline import OUTPUT_FILES


def run(*argv):
    return main([str(a) for a in argv])


OFFLINE_FLAGS = (
    "--text-model", "hash-ngram-256",
    "--image-model", "patch-stats-8",
    "--ocr", "boxfont",
    "--pdf-renderer", "image-pdf",
)


class TestRunCommand:
    def test_end_to_end(self, fixture_lecture, tmp_path, capsys):
        out = tmp_path / "embeddings"
        code = run(
            "run",
            "--video", fixture_lecture["video"],
            "--pdf", fixture_lecture["pdf"],
            "--transcript", fixture_lecture["transcript"],
            "--out", out,
            *OFFLINE_FLAGS,
        )
        assert code == 0
        assert "5 segments, 3 slides" in capsys.readouterr().out
        for name in OUTPUT_FILES:
            assert (out / name).exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["text_model_id"] == "hash-ngram-256"

    def test_missing_pdf_exits_2(self, fixture_lecture, tmp_path, capsys):
        code = run(
            "run",
            "--video", fixture_lecture["video"],
            "--pdf", tmp_path / "missing.pdf",
            "--transcript", fixture_lecture["transcript"],
            "--out", tmp_path / "out",
            *OFFLINE_FLAGS,
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_unknown_ocr_exits_2(self, fixture_lecture, tmp_path, capsys):
        code = run(
            "run",
            "--video", fixture_lecture["video"],
            "--pdf", fixture_lecture["pdf"],
            "--transcript", fixture_lecture["transcript"],
            "--out", tmp_path / "out",
            "--ocr", "sorcery",
        )
        assert code == 2
        capsys.readouterr()

    def test_usage_error_exits_2(self, capsys):
        assert run("run") == 2
        capsys.readouterr()

    def test_no_command_exits_2(self, capsys):
        assert run() == 2
        capsys.readouterr()
