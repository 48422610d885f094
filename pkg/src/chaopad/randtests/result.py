from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
NOT_IMPLEMENTED = "not-implemented"
ERROR = "error"


@dataclass(frozen=True)
class TestResult:
    """Outcome of one statistical test on one bit sequence.

    ``p_values`` is empty for the pure chi-square tests, which decide
    against a critical value carried in ``statistics["critical"]``.
    """

    __test__ = False  # keep pytest from collecting this class

    name: str
    statistics: dict = field(default_factory=dict)
    p_values: tuple = ()
    status: str = FAIL
    alpha: float = 0.01
    notes: str = ""

    @property
    def passed(self):
        return self.status == PASS

    @property
    def p_value(self):
        return min(self.p_values) if self.p_values else None

    @classmethod
    def from_p_values(cls, name, statistics, p_values, alpha, notes=""):
        p_values = tuple(min(1.0, max(0.0, float(p))) for p in p_values)
        status = PASS if all(p >= alpha for p in p_values) else FAIL
        return cls(name, statistics, p_values, status, alpha, notes)

    def to_dict(self):
        return {
            "name": self.name,
            "statistic": {k: _plain(v) for k, v in self.statistics.items()},
            "p_value": self.p_value,
            "p_values": list(self.p_values),
            "pass": self.passed,
            "status": self.status,
            "alpha": self.alpha,
            "notes": self.notes,
        }


def _plain(v):
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


@dataclass(frozen=True)
class TestConfig:
    """Significance levels and per-test parameters.

    ``None`` block sizes are chosen from the sequence length: block
    frequency uses the smallest power of two >= max(20, n/99), which gives
    2^14 (64 blocks) for 2^20 bits; longest-run uses the SP 800-22 regimes
    8 / 128 / 10^4.
    """

    __test__ = False

    alpha: float = 0.01
    appendix_alpha: float = 0.05
    block_frequency_m: int | None = None
    longest_run_m: int | None = None
    serial_m: int = 16
    apen_m: int = 10

    def __post_init__(self):
        for a in (self.alpha, self.appendix_alpha):
            if not 0.0 < a < 1.0:
                raise ValueError(f"significance level {a!r} outside (0, 1)")
