from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flataffine.algebra import ProductTable

settings.register_profile("ci", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def sparse_tables(draw, n=None, density=0.3):
    n = n or draw(st.integers(2, 3))
    entries = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if draw(st.floats(0, 1)) < density:
                    entries[(i, j, k)] = draw(small_rationals)
    return ProductTable(tuple(f"e{i}" for i in range(n)), entries, "random")


def dense_array(P) -> np.ndarray:
    """Independent float copy: arr[i, j, k] = coefficient of e_k in e_i e_j."""
    n = P.dim
    return np.array([[[float(P.dense[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)])


def as_fraction_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
