import numpy as np
import pytest

from tpqsim import LatticeSpec

# kron helpers for independent dense oracles (qubit 0 = least significant,
# so the operator on qubit q sits at kron position n-1-q)
I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def kron_chain(n, placed):
    """Dense operator with single-qubit matrices `placed` = {qubit: 2x2}."""
    out = np.array([[1.0 + 0j]])
    for q in reversed(range(n)):
        out = np.kron(out, placed.get(q, I2))
    return out


@pytest.fixture
def chain2():
    return LatticeSpec(1, (2,))


@pytest.fixture
def chain3():
    return LatticeSpec(1, (3,))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = (sys.modules.get("test_acceptance")
              or sys.modules.get("tests.test_acceptance"))
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
