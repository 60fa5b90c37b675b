import pytest

from superdiscord import _pykernels, kernels

try:
    from superdiscord import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=KERNEL_BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_report_header(config):
    return f"superdiscord kernel backend: {kernels.BACKEND}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
