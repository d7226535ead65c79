import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest
from PIL import Image

from visus.cli import main
from visus.image import RasterImage, load_image, save_image

from conftest import dark_cover, random_image


@pytest.fixture
def cover(tmp_path, rng):
    path = tmp_path / "cover.png"
    save_image(dark_cover(rng, 48, 48, collisions=6), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_embed_extract(capsys, tmp_path, cover):
    stego = tmp_path / "stego.png"
    code, out, _ = run(capsys, "embed", "--cover", cover, "--message", "Steganography", "--out", stego)
    assert code == 0 and stego.exists()
    assert "capacity:" in out and "used: 13 bytes" in out
    code, out, _ = run(capsys, "extract", "--stego", stego)
    assert code == 0
    assert out == "Steganography\n"


def test_extract_to_file(capsys, tmp_path, cover, rng):
    payload = rng.integers(0, 256, 40, dtype=np.uint8).tobytes()
    (tmp_path / "msg.in").write_bytes(payload)
    stego = tmp_path / "s.bmp"
    assert run(capsys, "embed", "--cover", cover, "--message-file", tmp_path / "msg.in", "--out", stego)[0] == 0
    assert run(capsys, "extract", "--stego", stego, "--out", tmp_path / "msg.bin")[0] == 0
    assert (tmp_path / "msg.bin").read_bytes() == payload


def test_embed_too_large(capsys, tmp_path):
    path = tmp_path / "c.png"
    save_image(RasterImage.blank(4, 4), path)  # 16 carriers -> 2 bytes
    code, _, err = run(capsys, "embed", "--cover", path, "--message", "toolong", "--out", tmp_path / "o.png")
    assert code == 2
    assert "capacity is 2 bytes" in err
    assert not (tmp_path / "o.png").exists()


def test_embed_jpeg(capsys, tmp_path):
    path = tmp_path / "c.jpg"
    Image.new("RGB", (8, 8)).save(path, format="JPEG")
    assert run(capsys, "embed", "--cover", path, "--message", "x", "--out", tmp_path / "o.png")[0] == 3


def test_embed_alpha_flag(capsys, tmp_path):
    path = tmp_path / "a.png"
    Image.new("RGBA", (8, 8), (0, 0, 0, 255)).save(path)
    out = tmp_path / "o.png"
    assert run(capsys, "embed", "--cover", path, "--message", "hi", "--out", out)[0] == 3
    assert run(capsys, "embed", "--strip-alpha", "--cover", path, "--message", "hi", "--out", out)[0] == 0


def test_extract_plain_image(capsys, tmp_path, rng):
    path = tmp_path / "plain.png"
    save_image(random_image(rng, 8, 8, low=100), path)
    assert run(capsys, "extract", "--stego", path)[0] == 4


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["embed", "--cover", "x.png"])
    assert info.value.code == 1


def test_share_and_reconstruct(capsys, tmp_path, rng):
    src = tmp_path / "img.png"
    img = random_image(rng, 16, 12)
    save_image(img, src)
    assert run(capsys, "share", "--image", src, "--out-dir", tmp_path / "shares")[0] == 0
    files = [tmp_path / "shares" / f"share{i}.png" for i in range(1, 8)]
    assert all(f.exists() for f in files)

    out = tmp_path / "rec.png"
    code, text, _ = run(capsys, "reconstruct", *files[:4], "--out", out)
    assert code == 0 and "union mask: 0xFF" in text
    assert out.read_bytes() and load_image(out) == img

    assert run(capsys, "reconstruct", *files, "--out", out, "--require-complete")[0] == 0
    assert load_image(out) == img


def test_reconstruct_incomplete(capsys, tmp_path, rng):
    src = tmp_path / "img.ppm"
    save_image(random_image(rng, 5, 5), src)
    run(capsys, "share", "--image", src, "--out-dir", tmp_path, "--ext", "ppm")
    picks = [tmp_path / f"share{i}.ppm" for i in (4, 6, 7)]
    out = tmp_path / "rec.ppm"
    code, text, _ = run(capsys, "reconstruct", *picks, "--out", out, "--require-complete")
    assert code == 5
    assert "missing bit 1" in text
    assert not out.exists()
    code, text, _ = run(capsys, "reconstruct", *picks, "--out", out)
    assert code == 0 and "union mask: 0xFE" in text and out.exists()


def test_reconstruct_dimension_mismatch(capsys, tmp_path):
    save_image(RasterImage.blank(2, 2), tmp_path / "share1.png")
    save_image(RasterImage.blank(3, 2), tmp_path / "share2.png")
    code = run(capsys, "reconstruct", tmp_path / "share1.png", tmp_path / "share2.png", "--out", tmp_path / "o.png")[0]
    assert code == 6


def test_reconstruct_unnamed_share(capsys, tmp_path):
    save_image(RasterImage.blank(2, 2), tmp_path / "piece.png")
    assert run(capsys, "reconstruct", tmp_path / "piece.png", "--out", tmp_path / "o.png")[0] == 1


def test_metrics_json(capsys, tmp_path, cover):
    stego = tmp_path / "stego.png"
    run(capsys, "embed", "--cover", cover, "--message", "Steganography", "--out", stego)
    code, out, _ = run(capsys, "metrics", cover, stego, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    names = {"max_difference", "avg_abs_difference", "norm_avg_abs_difference", "mse", "nmse",
             "snr_linear", "psnr_db", "image_fidelity", "ncc", "correlation_quality"}
    for ch in "RGB":
        assert set(doc["metrics"][ch]) == names
        assert doc["metrics"][ch]["max_difference"] <= 43


def test_metrics_table_and_mismatch(capsys, tmp_path):
    save_image(RasterImage.blank(2, 2, (9, 9, 9)), tmp_path / "a.png")
    save_image(RasterImage.blank(3, 2), tmp_path / "b.png")
    code, out, _ = run(capsys, "metrics", tmp_path / "a.png", tmp_path / "a.png")
    assert code == 0 and "Image Fidelity" in out and "inf" in out
    assert run(capsys, "metrics", tmp_path / "a.png", tmp_path / "b.png")[0] == 6


def test_histogram_csv(capsys, tmp_path):
    path = tmp_path / "z.png"
    save_image(RasterImage.blank(2, 2), path)
    code, out, _ = run(capsys, "histogram", path)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "R", "G", "B"]
    assert rows[1] == ["0", "4", "4", "4"]
    assert len(rows) == 257 and all(r[1:] == ["0", "0", "0"] for r in rows[2:])
    assert run(capsys, "histogram", path, "--out", tmp_path / "h.csv")[0] == 0
    assert (tmp_path / "h.csv").read_text() == out


def test_verify_threshold(capsys):
    code, out, _ = run(capsys, "verify-threshold")
    assert code == 0
    assert "minimum guaranteed subset size: 4" in out
    assert "failing triples: {1,3,5} {1,4,6} {1,5,7} {2,3,7} {2,4,5} {2,4,6} {4,6,7}" in out
    code, out, _ = run(capsys, "verify-threshold", "--format", "json")
    doc = json.loads(out)
    assert len(doc["subsets"]) == 127 and doc["min_guaranteed_size"] == 4
    assert len(doc["failing_triples"]) == 7


def test_deterministic_output(capsys, tmp_path, cover):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    run(capsys, "embed", "--cover", cover, "--message", "same", "--out", a)
    run(capsys, "embed", "--cover", cover, "--message", "same", "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "visus", "verify-threshold"],
        capture_output=True, text=True, env={"VISUS_LOG": "DEBUG", "PATH": ""},
    )
    assert proc.returncode == 0
    assert "kernel backend" in proc.stderr


def test_pipeline_any_complete_subset(rng):
    from visus import capacity_bytes, embed, extract, make_shares, reconstruct, verify_threshold

    complete = [sorted(r.subset) for r in verify_threshold() if r.complete]
    for _ in range(15):
        cover = dark_cover(rng, int(rng.integers(12, 32)), int(rng.integers(12, 32)), collisions=4)
        payload = rng.integers(0, 256, int(rng.integers(0, capacity_bytes(cover) + 1)), dtype=np.uint8).tobytes()
        shares = make_shares(embed(cover, payload))
        subset = complete[int(rng.integers(len(complete)))]
        image, report = reconstruct([shares[i - 1] for i in subset])
        assert report.complete and extract(image) == payload
