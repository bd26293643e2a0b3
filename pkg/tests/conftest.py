from __future__ import annotations

import numpy as np
import pytest

from cauchy_radius import MatrixPoly

NILPOTENT = np.array([[0, 1], [0, 0]], dtype=complex)


def numpy_positive_root(leading: float, lower) -> float:
    """Independent oracle: the positive real root found by ``numpy.roots``."""
    desc = [leading] + [-c for c in reversed(list(lower))]
    roots = np.roots(desc)
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots))].real
    return float(real.max())


def random_complex(rng: np.random.Generator, shape, scale: float = 10.0) -> np.ndarray:
    return rng.uniform(-scale, scale, shape) + 1j * rng.uniform(-scale, scale, shape)


@pytest.fixture
def nilpotent_quadratic() -> MatrixPoly:
    """``I z^2 + N z + 2 I`` with ``N`` strictly upper triangular."""
    eye = np.eye(2, dtype=complex)
    return MatrixPoly([2 * eye, NILPOTENT, eye])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


# acceptance summary: one line per criterion, collected from the `acceptance` marker
_ACCEPTANCE: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "_acceptance", None)
    if marker is None:
        return
    number, label = marker
    entry = _ACCEPTANCE.setdefault(number, {"label": label, "failed": [], "ran": 0})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry["ran"] += 1
        if report.outcome != "passed":
            entry["failed"].append(report.nodeid.split("::")[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("acceptance")
    if m is not None:
        outcome.get_result()._acceptance = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[number]
        status = "FAIL" if e["failed"] or not e["ran"] else "PASS"
        line = f"AC{number} {status}  {e['label']}"
        if e["failed"]:
            line += f"  (failed: {', '.join(e['failed'])})"
        tr.write_line(line)
