import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from halfcanon.formats import FormatId, builtin  # noqa: E402
from halfcanon.polycore import Field, Polynomial, WeightedRing  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

HALF_CANONICAL = (FormatId.A0, FormatId.A1, FormatId.B0, FormatId.B1, FormatId.B2)
ALL_FORMATS = tuple(FormatId)


def poly_strategy(ring: WeightedRing, max_terms: int = 4, max_exp: int = 3, coeff_range: int = 50):
    n = ring.nvars
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * n), st.integers(-coeff_range, coeff_range))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((ring.term(c, e) for e, c in ts), ring.zero()))


def homogeneous_strategy(ring: WeightedRing, degree: int, max_terms: int = 4, coeff_range: int = 20):
    monos = ring.monomials_of_degree(degree)
    term = st.tuples(st.sampled_from(monos), st.integers(-coeff_range, coeff_range))
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: sum((ring.term(c, e) for e, c in ts), ring.zero()))


@pytest.fixture(scope="session")
def instances():
    """One seeded instance per format over GF(32003), computed once."""
    return {f: builtin(f, 0) for f in ALL_FORMATS}


@pytest.fixture
def small_ring():
    return WeightedRing.from_spec("x:1,y:2,z:3")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
