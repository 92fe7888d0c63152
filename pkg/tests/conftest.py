import numpy as np
import pytest

from aqft.numerics import StateVector

ACCEPTANCE_LINES: list[str] = []


def random_state(num_qubits: int, seed: int) -> StateVector:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return StateVector(amps / np.linalg.norm(amps), num_qubits)


@pytest.fixture
def record():
    """Append one PASS/FAIL line for an acceptance criterion, then assert it."""

    def _record(name: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        assert ok, f"{name}: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
