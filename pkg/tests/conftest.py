import pytest

from relweil import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run a test once per kernel backend, restoring the default afterwards."""
    previous = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


@pytest.fixture
def criterion(request):
    """Tag an acceptance test with its criterion number and description."""

    def tag(number, description):
        request.node.user_properties.append(("criterion", (number, description)))

    return tag


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call":
                continue
            for name, value in rep.user_properties:
                if name == "criterion":
                    number, desc = value
                    ok = rows.get(number, (True, desc))[0] and outcome == "passed"
                    rows[number] = (ok, desc)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(rows):
        ok, desc = rows[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
