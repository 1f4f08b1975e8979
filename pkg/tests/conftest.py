import numpy as np
import pytest

from qrframes.groups import make_preset

PRESETS = ["cyclic(2)", "cyclic(3)", "cyclic(4)", "symmetric3"]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=PRESETS)
def group(request):
    return make_preset(request.param)


ACCEPTANCE = {}


def record_criterion(number, title, passed, detail):
    """Store one acceptance outcome; printed in the terminal summary."""
    line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
