import numpy as np
import pytest

from pauligeom.hyperplanes import HyperplaneFamily

# real Pauli matrices, built independently of the package
I2 = np.eye(2, dtype=int)
X = np.array([[0, 1], [1, 0]])
Z = np.array([[1, 0], [0, -1]])
Y = Z @ X
MATS = {"I": I2, "X": X, "Z": Z, "Y": Y}


def pauli_matrix(label: str) -> np.ndarray:
    out = np.array([[1]])
    for ch in label:
        out = np.kron(out, MATS[ch])
    return out


def labels(n: int) -> list[str]:
    """All nonidentity labels in ``IXZY`` order."""
    out = [""]
    for _ in range(n):
        out = [s + c for s in out for c in "IXZY"]
    return [s for s in out if set(s) != {"I"}]


@pytest.fixture(scope="session")
def fam2():
    return HyperplaneFamily(2)


@pytest.fixture(scope="session")
def fam3():
    return HyperplaneFamily(3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
