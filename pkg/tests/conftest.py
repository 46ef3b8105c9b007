import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def brute_cusum(x, s, b, e):
    """Direct summation, no prefix sums (1-based inclusive bounds)."""
    seg = np.asarray(x, dtype=float)[s - 1:e]
    n_se, n_l = e - s + 1, b - s + 1
    n_r = n_se - n_l
    left = sum(seg[:n_l])
    right = sum(seg[n_l:])
    return (n_r / (n_se * n_l)) ** 0.5 * left - (n_l / (n_se * n_r)) ** 0.5 * right


def brute_argmax(x, s, e):
    best_b, best = None, -1.0
    for b in range(s, e):
        v = abs(brute_cusum(x, s, b, e))
        if v > best:
            best_b, best = b, v
    return best_b, best


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _report(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
