import math

import numpy as np
import pytest
from hypothesis import strategies as st

from elcauchy.algebra import ElComplex, make_params

# parameter set used throughout the acceptance criteria
PARAM_SET = [(1.0, 0.0), (2.0, 0.0), (2.0, 1.0), (5.0, 3.0), (1.0, -1.0)]


@pytest.fixture(params=PARAM_SET, ids=lambda ab: f"a{ab[0]:g}_b{ab[1]:g}")
def params(request):
    return make_params(*request.param)


@st.composite
def elliptic_params(draw, max_alpha=10.0):
    alpha = draw(st.floats(0.05, max_alpha))
    frac = draw(st.floats(-0.95, 0.95))
    return make_params(alpha, frac * 2.0 * math.sqrt(alpha))


def elements(bound=1e3):
    comp = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    return st.builds(ElComplex, comp, comp)


def random_elements(rng, n, scale=1.0):
    return ElComplex(rng.uniform(-scale, scale, n), rng.uniform(-scale, scale, n))


def random_params(rng, n):
    out = []
    for _ in range(n):
        alpha = rng.uniform(0.1, 8.0)
        beta = rng.uniform(-0.95, 0.95) * 2.0 * math.sqrt(alpha)
        out.append(make_params(alpha, beta))
    return out


def close(z, w, tol):
    return math.hypot(float(z.re) - float(w.re), float(z.im) - float(w.im)) <= tol


ACCEPTANCE_LINES = []


def record_acceptance(label, ok, message):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {message}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
