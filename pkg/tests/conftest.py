import importlib
import sys

import pytest

from linlog import _purepy


def _backends():
    out = [pytest.param(_purepy, id="python")]
    try:
        out.append(pytest.param(importlib.import_module("linlog._speedups"), id="cython"))
    except ImportError:
        out.append(pytest.param(None, id="cython", marks=pytest.mark.skip(reason="extension not built")))
    return out


@pytest.fixture(params=_backends(), scope="session")
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
