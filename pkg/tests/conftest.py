import numpy as np
import pytest

import cohfisher as cf

# (criterion number, clause) -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[tuple[int, str], tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def gauss():
    return cf.gaussian(1.0)


@pytest.fixture(scope="session")
def sampled_gauss():
    return cf.sampled_gaussian(1.0, extent=12.0, n=4096)


def grid_superpositions(s, sigma=1.0, n=2**14, half=14.0):
    """Independent position-grid Phi1, Phi2 and their x-derivatives (analytic Gaussian)."""
    x = np.linspace(-half, half, n + 1)
    dx = x[1] - x[0]
    norm = (2 * np.pi * sigma**2) ** -0.25

    def psi(u):
        return norm * np.exp(-(u**2) / (4 * sigma**2))

    def dpsi(u):
        return -u / (2 * sigma**2) * psi(u)

    plus, minus = psi(x + s / 2), psi(x - s / 2)
    dplus, dminus = dpsi(x + s / 2), dpsi(x - s / 2)
    return x, dx, (plus + minus) / 2, (plus - minus) / 2, (dplus + dminus) / 2, (dplus - dminus) / 2


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted({k[0] for k in ACCEPTANCE_RESULTS}):
        clauses = [(k[1], *v) for k, v in sorted(ACCEPTANCE_RESULTS.items()) if k[0] == number]
        ok = all(c[1] for c in clauses)
        detail = "; ".join(f"{name}: {d}{'' if good else ' [FAIL]'}" for name, good, d in clauses)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}")
