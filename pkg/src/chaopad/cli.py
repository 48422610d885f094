"""Command-line interface.

Exit status: 0 when the command ran (failing randomness verdicts are data,
not errors), 1 for operational faults such as a bad key, image mismatch or
a seed that fails validation, 2 for usage errors.
"""

import argparse
import csv
import os
import sys

import numpy as np

from . import analysis, cipher, imgio, keystream, seed
from .errors import ChaopadError, SeedNotRandom
from .fnv import image_hash
from .randtests import TEST_NAMES, TestConfig, format_json, format_text, run_suite

M_SEARCH_CAP = 1 << 24


def strict_mode():
    return os.environ.get("CHAOPAD_STRICT", "") == "1"


def _load_key_and_image(key_path, image_path):
    key = imgio.read_key(key_path)
    path = image_path or key.seed_image_path
    if not path:
        raise ChaopadError("no seed image given and the key names none")
    return key, imgio.read_pgm(path)


def _write_text(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_seed_prep(args):
    key, img = _load_key_and_image(args.key, args.image)
    sp = key.seed_params
    matrix, report = seed.prepare_seed(img, sp, args.alpha)
    if args.search_m:
        while not report.passed and sp.m * 2 <= M_SEARCH_CAP:
            sp = seed.SeedParams(sp.x0, sp.y0, sp.rx, sp.ry, sp.m * 2)
            matrix, report = seed.prepare_seed(img, sp, args.alpha)

    binding = "match" if image_hash(img) == key.seed_image_hash else "MISMATCH"
    print(f"seed image: {args.image or key.seed_image_path} (hash {binding})")
    print(f"M = {sp.m}" + (" (searched)" if sp.m != key.m else ""))
    print(report.format_table(label="C'"))
    if args.dump:
        imgio.write_pgm(matrix * 255, args.dump)
    if args.write_key and report.passed:
        imgio.write_key(key.replace(m=sp.m), args.write_key)
    if not report.passed:
        print("seed validation failed: M value is not correct for this image", file=sys.stderr)
        return 1
    return 0


def cmd_genbits(args):
    key, img = _load_key_and_image(args.key, args.image)
    state = keystream.init(key, img, strict=strict_mode())
    imgio.write_bits(state.generate(args.n), args.out, args.format)
    return 0


def _crypt(args, fn):
    key, seed_img = _load_key_and_image(args.key, args.seed_image)
    img = imgio.read_pgm(args.input)
    imgio.write_pgm(fn(img, key, seed_img, strict=strict_mode()), args.out)
    return 0


def cmd_encrypt(args):
    return _crypt(args, cipher.encrypt)


def cmd_decrypt(args):
    return _crypt(args, cipher.decrypt)


def cmd_randtest(args):
    bits = imgio.read_bits(args.input, args.format)
    tests = None
    if args.tests:
        tests = [t.strip() for t in args.tests.split(",") if t.strip()]
        unknown = sorted(set(tests) - set(TEST_NAMES))
        if unknown:
            raise _UsageError(f"unknown test(s): {', '.join(unknown)}")
    results = run_suite(bits, TestConfig(alpha=args.alpha), tests)
    _write_text(format_json(results) if args.json else format_text(results), args.report)
    return 0


def _analysis_records(args):
    plain = imgio.read_pgm(args.plain)
    ciphered = imgio.read_pgm(args.cipher)
    records = [
        analysis.Record("api", "plain", seed.average_pixel_intensity(plain)),
        analysis.Record("api", "cipher", seed.average_pixel_intensity(ciphered), "[126,129]",
                        _verdict(126 <= seed.average_pixel_intensity(ciphered) <= 129)),
        analysis.Record("hist_chi2", "cipher", analysis.histogram_chi2(ciphered), "<340",
                        _verdict(analysis.histogram_chi2(ciphered) < 340)),
    ]
    samples = []
    for label, img in (("plain", plain), ("cipher", ciphered)):
        for direction in analysis.DIRECTIONS:
            sample = analysis.sample_adjacent_pairs(img, direction, args.pairs, args.sampler_seed)
            samples.append((label, sample))
            r = analysis.correlation(sample)
            if label == "plain":
                rec = analysis.Record("correlation", f"plain/{direction}", r)
            else:
                rec = analysis.Record("correlation", f"cipher/{direction}", r, "|r|<=0.05",
                                      _verdict(abs(r) <= 0.05))
            records.append(rec)
    if args.probe:
        if not args.key:
            raise _UsageError("--probe needs --key")
        key, seed_img = _load_key_and_image(args.key, args.seed_image)
        row, col, delta = args.probe
        npcr, uaci = analysis.differential_probe(plain, key, seed_img, (row, col), delta)
        expected = 100.0 / plain.size
        params = f"probe {row},{col},{delta}"
        records.append(analysis.Record("npcr", params, npcr, f"={expected:.6f}",
                                       _verdict(npcr == expected)))
        records.append(analysis.Record("uaci", params, uaci))
    return plain, ciphered, samples, records


def _verdict(ok):
    return "PASS" if ok else "FAIL"


def cmd_analyze(args):
    plain, ciphered, samples, records = _analysis_records(args)
    text = analysis.records_json(records) if args.json else analysis.format_records(records)
    _write_text(text, args.report)
    if args.histogram_csv:
        hp, hc = analysis.histogram(plain), analysis.histogram(ciphered)
        with open(args.histogram_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["value", "plain", "cipher"])
            w.writerows((v, int(hp[v]), int(hc[v])) for v in range(256))
    if args.scatter_csv:
        with open(args.scatter_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["image", "direction", "x", "y"])
            for label, sample in samples:
                w.writerows((label, sample.direction, int(x), int(y)) for x, y in sample.pairs)
    return 0


class _UsageError(Exception):
    pass


def _probe(text):
    try:
        row, col, delta = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected ROW,COL,DELTA") from None
    return row, col, delta


def _alpha(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="chaopad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seed-prep", help="build and validate the dynamic seed image C'")
    p.add_argument("--key", required=True)
    p.add_argument("--image", help="grayscale seed image (default: the one named in the key)")
    p.add_argument("--alpha", type=_alpha, default=0.05)
    p.add_argument("--search-m", action="store_true",
                   help=f"double M until validation passes (cap {M_SEARCH_CAP})")
    p.add_argument("--dump", help="write C' as a black/white PGM")
    p.add_argument("--write-key", help="write the key with the accepted M")
    p.set_defaults(func=cmd_seed_prep)

    p = sub.add_parser("genbits", help="write keystream bits")
    p.add_argument("--key", required=True)
    p.add_argument("--image")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("raw", "ascii"), default="raw")
    p.set_defaults(func=cmd_genbits)

    for name, func in (("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)):
        p = sub.add_parser(name, help=f"{name} a PGM image")
        p.add_argument("--key", required=True)
        p.add_argument("--seed-image")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("randtest", help="run the randomness test battery on a bitstream")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("raw", "ascii"), default="raw")
    p.add_argument("--alpha", type=_alpha, default=0.01)
    p.add_argument("--tests", help=f"comma-separated subset of: {','.join(TEST_NAMES)}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_randtest)

    p = sub.add_parser("analyze", help="histogram, correlation and differential metrics")
    p.add_argument("--plain", required=True)
    p.add_argument("--cipher", required=True)
    p.add_argument("--pairs", type=_positive, default=analysis.DEFAULT_PAIRS)
    p.add_argument("--sampler-seed", type=int, default=analysis.DEFAULT_SAMPLER_SEED)
    p.add_argument("--probe", type=_probe, metavar="ROW,COL,DELTA")
    p.add_argument("--key")
    p.add_argument("--seed-image")
    p.add_argument("--histogram-csv")
    p.add_argument("--scatter-csv")
    p.add_argument("--json", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"chaopad {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except SeedNotRandom as exc:
        print(f"chaopad: {exc}", file=sys.stderr)
        print(exc.report.format_table(), file=sys.stderr)
        return 1
    except (ChaopadError, OSError) as exc:
        print(f"chaopad: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
