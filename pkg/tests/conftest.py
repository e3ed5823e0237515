import pytest

from wpcomm import _pyspecfun

try:
    from wpcomm import _cspecfun
except ImportError:
    _cspecfun = None

BACKENDS = [pytest.param(_pyspecfun, id="python")]
if _cspecfun is not None:
    BACKENDS.append(pytest.param(_cspecfun, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    """Each scalar-kernel backend that is available in this build."""
    return request.param


@pytest.fixture(autouse=True)
def _mpmath_precision():
    """High-precision oracles; restored after each test."""
    import mpmath
    with mpmath.workdps(40):
        yield


_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(number, ok, detail):
        _ACCEPTANCE[number] = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
        print(_ACCEPTANCE[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
