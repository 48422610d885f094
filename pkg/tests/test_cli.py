import json
import os

import numpy as np
import pytest

import chaopad
from chaopad import imgio
from chaopad.cli import main
from chaopad.fnv import image_hash

from conftest import fixture_bits

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")
KEY_A = chaopad.data_path("set_a.key")


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["encrypt", "--bogus"]) == 2
    assert main(["randtest", "--in", "x", "--alpha", "2"]) == 2


def test_seed_prep_set_a(capsys):
    assert main(["seed-prep", "--key", KEY_A]) == 0
    out = capsys.readouterr().out
    assert "hash match" in out and "M = 262144" in out


def test_seed_prep_white_image_fails(tmp_path, capsys):
    img = np.full((16, 16), 255, np.uint8)
    imgio.write_pgm(img, tmp_path / "w.pgm")
    key = chaopad.bundled_key("A").replace(m=5, k=4, seed_image_hash=image_hash(img),
                                           seed_image_path=str(tmp_path / "w.pgm"))
    imgio.write_key(key, tmp_path / "w.key")
    assert main(["seed-prep", "--key", str(tmp_path / "w.key")]) == 1
    assert "M value is not correct" in capsys.readouterr().err


def test_seed_prep_search(tmp_path, capsys):
    rng = np.random.default_rng(8)
    img = (rng.integers(0, 2, (32, 32)) * 255).astype(np.uint8)
    img[:16] = 0
    imgio.write_pgm(img, tmp_path / "s.pgm")
    key = chaopad.bundled_key("A").replace(m=4, k=5, seed_image_hash=image_hash(img),
                                           seed_image_path=str(tmp_path / "s.pgm"))
    imgio.write_key(key, tmp_path / "s.key")
    rc = main(["seed-prep", "--key", str(tmp_path / "s.key"), "--search-m",
               "--write-key", str(tmp_path / "found.key"), "--dump", str(tmp_path / "c.pgm")])
    assert rc == 0
    found = imgio.read_key(tmp_path / "found.key")
    assert found.m > 4 and found.m & (found.m - 1) == 0
    assert set(np.unique(imgio.read_pgm(tmp_path / "c.pgm"))) <= {0, 255}


def test_encrypt_decrypt_round_trip(tmp_path):
    plain = np.random.default_rng(1).integers(0, 256, (32, 48), dtype=np.uint8)
    imgio.write_pgm(plain, tmp_path / "p.pgm")
    assert main(["encrypt", "--key", KEY_A, "--in", str(tmp_path / "p.pgm"), "--out", str(tmp_path / "c.pgm")]) == 0
    assert main(["decrypt", "--key", KEY_A, "--in", str(tmp_path / "c.pgm"), "--out", str(tmp_path / "d.pgm")]) == 0
    assert (tmp_path / "d.pgm").read_bytes() == (tmp_path / "p.pgm").read_bytes()


def test_decrypt_wrong_seed_image(tmp_path, capsys):
    imgio.write_pgm(np.zeros((8, 8), np.uint8), tmp_path / "p.pgm")
    other = chaopad.bundled_image().copy()
    other[0, 0] ^= 1
    imgio.write_pgm(other, tmp_path / "o.pgm")
    rc = main(["decrypt", "--key", KEY_A, "--seed-image", str(tmp_path / "o.pgm"),
               "--in", str(tmp_path / "p.pgm"), "--out", str(tmp_path / "d.pgm")])
    assert rc == 1
    assert "does not match" in capsys.readouterr().err


def test_missing_file_is_operational_error(tmp_path):
    assert main(["randtest", "--in", str(tmp_path / "none.bits")]) == 1


def test_genbits_matches_library(tmp_path, key_a, seed_image):
    out = tmp_path / "a.bits"
    assert main(["genbits", "--key", KEY_A, "--n", "1001", "--out", str(out)]) == 0
    want = chaopad.keystream.init(key_a, seed_image).generate(1001)
    assert np.array_equal(imgio.read_bits(out), want)


def test_randtest_all_zeros(tmp_path, capsys):
    imgio.write_bits(np.zeros(1 << 20, np.uint8), tmp_path / "z.bits")
    assert main(["randtest", "--in", str(tmp_path / "z.bits"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is False
    assert {t["status"] for t in doc["tests"]} <= {"fail", "not-applicable", "not-implemented"}


def test_randtest_unknown_test(tmp_path):
    imgio.write_bits(np.zeros(200, np.uint8), tmp_path / "z.bits")
    assert main(["randtest", "--in", str(tmp_path / "z.bits"), "--tests", "FT,XYZ"]) == 2


def test_randtest_golden_report(tmp_path):
    imgio.write_bits(fixture_bits(4096, 7), tmp_path / "g.bits", "ascii")
    report = tmp_path / "r.txt"
    assert main(["randtest", "--in", str(tmp_path / "g.bits"), "--format", "ascii",
                 "--report", str(report)]) == 0
    with open(os.path.join(FIXTURES, "randtest_4096.txt"), "rb") as fh:
        assert report.read_bytes() == fh.read()


def test_analyze(tmp_path, capsys, key_a, seed_image):
    cipher_img = chaopad.cipher.encrypt(seed_image, key_a, seed_image)
    imgio.write_pgm(cipher_img, tmp_path / "c.pgm")
    rc = main(["analyze", "--plain", chaopad.data_path("retina_256.pgm"), "--cipher", str(tmp_path / "c.pgm"),
               "--probe", "5,7,1", "--key", KEY_A, "--json",
               "--histogram-csv", str(tmp_path / "h.csv"), "--scatter-csv", str(tmp_path / "s.csv")])
    assert rc == 0
    recs = json.loads(capsys.readouterr().out)
    verdicts = [r["verdict"] for r in recs if r["verdict"]]
    assert verdicts and all(v == "PASS" for v in verdicts)
    assert len((tmp_path / "h.csv").read_text().splitlines()) == 257
    assert len((tmp_path / "s.csv").read_text().splitlines()) == 1 + 6 * 2000


def test_analyze_probe_needs_key(tmp_path):
    p = chaopad.data_path("retina_256.pgm")
    assert main(["analyze", "--plain", p, "--cipher", p, "--probe", "1,1,1"]) == 2
    assert main(["analyze", "--plain", p, "--cipher", p, "--probe", "1,1"]) == 2


def test_strict_env(tmp_path, monkeypatch):
    img = np.full((16, 16), 255, np.uint8)
    imgio.write_pgm(img, tmp_path / "w.pgm")
    key = chaopad.bundled_key("A").replace(m=5, k=4, seed_image_hash=image_hash(img),
                                           seed_image_path=str(tmp_path / "w.pgm"))
    imgio.write_key(key, tmp_path / "w.key")
    args = ["genbits", "--key", str(tmp_path / "w.key"), "--n", "8", "--out", str(tmp_path / "b")]
    assert main(args) == 0
    monkeypatch.setenv("CHAOPAD_STRICT", "1")
    assert main(args) == 1
