import pytest

from hashtc import available_backends
from hashtc.synthetic import gnp, lattice3d

from graphs import complete, prepared

BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def random_graphs():
    return [prepared(gnp(n, p, seed)) for seed, (n, p) in
            enumerate([(16, 0.3), (24, 0.5), (32, 0.3), (40, 0.2), (20, 0.8)])]


@pytest.fixture
def lattice():
    return prepared(lattice3d(4))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(RESULTS, key=lambda c: int(c.split()[0])):
        status, detail = RESULTS[crit]
        terminalreporter.write_line(f"criterion {crit}: {status}  {detail}")
