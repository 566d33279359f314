import pytest

from hecketransfer.exactalg import set_zeta_order, zeta_order


@pytest.fixture(autouse=True)
def _session_zeta_order():
    """Every test runs with the default root-of-unity order 24."""
    set_zeta_order(24)
    yield
    assert zeta_order() == 24


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """record(n, passed, detail): one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(n: int, passed: bool, detail: str = "") -> None:
        line = f"criterion {n}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail else "")
        lines[n] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
