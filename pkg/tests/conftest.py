from __future__ import annotations

from hypothesis import strategies as st

from mzlab.poly import Poly

PRIMES = (2, 3, 5, 7)


@st.composite
def polys(draw, p: int | None = None, max_degree: int = 6, nonzero: bool = False):
    if p is None:
        p = draw(st.sampled_from(PRIMES))
    cs = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_degree + 1))
    f = Poly(p, cs)
    if nonzero and f.is_zero:
        f = Poly.const(p, 1)
    return f


@st.composite
def poly_tuples(draw, n: int, max_degree: int = 5, nonzero: bool = False):
    p = draw(st.sampled_from(PRIMES))
    return (p,) + tuple(draw(polys(p, max_degree, nonzero)) for _ in range(n))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
