"""Run the whole battery on one sequence and render the results."""

import json

import numpy as np

from ..errors import ChaopadError
from . import nist
from .appendix import monobit_chi2, serial_chi2
from .result import ERROR, NOT_IMPLEMENTED, TestConfig, TestResult

NOT_IMPLEMENTED_TESTS = ("BMRT", "NTMT", "OTMT", "MUST", "LCT", "RET", "REVT")


def _runners(cfg):
    a = cfg.alpha
    return {
        "monobit_chi2": lambda b: monobit_chi2(b, cfg.appendix_alpha),
        "serial_chi2": lambda b: serial_chi2(b, cfg.appendix_alpha),
        "FT": lambda b: nist.nist_frequency(b, a),
        "FTB": lambda b: nist.nist_block_frequency(b, cfg.block_frequency_m, a),
        "RT": lambda b: nist.nist_runs(b, a),
        "LROBT": lambda b: nist.nist_longest_run(b, cfg.longest_run_m, a),
        "DFFT": lambda b: nist.nist_dfft(b, a),
        "ST": lambda b: nist.nist_serial(b, cfg.serial_m, a),
        "CST-forward": lambda b: nist.nist_cusum(b, "forward", a),
        "CST-reverse": lambda b: nist.nist_cusum(b, "reverse", a),
        "AET": lambda b: nist.nist_approx_entropy(b, cfg.apen_m, a),
    }


TEST_NAMES = tuple(_runners(TestConfig())) + NOT_IMPLEMENTED_TESTS
NIST_TEST_NAMES = ("FT", "FTB", "RT", "LROBT", "DFFT", "ST", "CST-forward", "CST-reverse", "AET")


def run_suite(bits, cfg=None, tests=None):
    """Run the selected tests (default: all) in a fixed order.

    A test that cannot run on this input (too short, bad parameters) is
    reported with status ``error`` instead of aborting the suite.
    """
    cfg = cfg or TestConfig()
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    wanted = TEST_NAMES if tests is None else tuple(tests)
    unknown = set(wanted) - set(TEST_NAMES)
    if unknown:
        raise ValueError(f"unknown test name(s): {', '.join(sorted(unknown))}")
    runners = _runners(cfg)
    results = []
    for name in TEST_NAMES:
        if name not in wanted:
            continue
        if name in NOT_IMPLEMENTED_TESTS:
            results.append(TestResult(name, status=NOT_IMPLEMENTED, alpha=cfg.alpha, notes="not implemented"))
            continue
        try:
            results.append(runners[name](bits))
        except (ChaopadError, ValueError) as exc:
            results.append(TestResult(name, status=ERROR, alpha=cfg.alpha, notes=str(exc)))
    return results


def suite_passed(results):
    """True when every test that actually ran passed."""
    ran = [r for r in results if r.status != NOT_IMPLEMENTED]
    return bool(ran) and all(r.passed for r in ran)


def format_text(results):
    lines = [f"{'test':<14}{'p-value(s)':<24}{'statistic':<22}result"]
    for r in results:
        if r.p_values:
            pv = " ".join(f"{p:.6f}" for p in r.p_values)
        else:
            pv = "-"
        if "chi2" in r.statistics:
            stat = f"chi2={r.statistics['chi2']:.4f}"
        elif "z" in r.statistics:
            stat = f"z={r.statistics['z']}"
        elif "s_obs" in r.statistics:
            stat = f"s_obs={r.statistics['s_obs']:.4f}"
        elif "v_obs" in r.statistics:
            stat = f"V={r.statistics['v_obs']}"
        elif "d" in r.statistics:
            stat = f"d={r.statistics['d']:.4f}"
        elif "del1" in r.statistics:
            stat = f"del1={r.statistics['del1']:.2f}"
        else:
            stat = "-"
        verdict = r.status.upper()
        if r.notes and r.status not in ("pass", "fail"):
            verdict += f" ({r.notes})"
        lines.append(f"{r.name:<14}{pv:<24}{stat:<22}{verdict}")
    lines.append(f"overall: {'PASS' if suite_passed(results) else 'FAIL'}")
    return "\n".join(lines)


def format_json(results):
    return json.dumps(
        {"passed": suite_passed(results), "tests": [r.to_dict() for r in results]},
        indent=2,
        allow_nan=False,
    )
