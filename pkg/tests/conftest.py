import hypothesis
import numpy as np
import pytest

from qrng_tse.bitstore import BitString

hypothesis.settings.register_profile("fast", max_examples=10)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.load_profile("default")

# SP 800-22 worked-example input: first 100 binary digits of the expansion of pi
PI_100 = ("1100100100001111110110101010001000100001011010001100001000110100"
          "110001001100011001100010100010111000")


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def pi_bits():
    return BitString.from_str(PI_100)


def random_bits(rng, n):
    return BitString.from_array(rng.integers(0, 2, n, dtype=np.uint8))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], outcome, props.get("detail", "")))
    if rows:
        terminalreporter.section("acceptance criteria")
        for crit, outcome, detail in sorted(rows):
            terminalreporter.write_line(f"[{'PASS' if outcome == 'passed' else 'FAIL'}] {crit}  {detail}")
