from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lorentz_poly.scalar_poly import PowerPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_num=20, max_den=8, nonzero=False):
    r = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return r.filter(lambda q: q != 0) if nonzero else r


def polys(max_degree=8, nonzero=True):
    s = st.lists(rationals(), min_size=1, max_size=max_degree + 1).map(PowerPoly)
    return s.filter(lambda f: not f.is_zero()) if nonzero else s


X = PowerPoly.x()


# one line per acceptance criterion, shown at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
