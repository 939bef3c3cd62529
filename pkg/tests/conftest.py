import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

from dvdp.exactalg import PolyRing, field_create

settings.register_profile("dvdp", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "dvdp"))

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (7, 1), (5, 2)]


@st.composite
def fields(draw, choices=FIELDS):
    p, k = draw(st.sampled_from(choices))
    return field_create(p, k)


@st.composite
def polynomials(draw, ring, max_terms=5, max_exp=3, max_degree=None):
    F = ring.field
    terms = {}
    n = draw(st.integers(0, max_terms))
    for _ in range(n):
        m = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.nvars))
        if max_degree is not None and sum(m) > max_degree:
            continue
        c = draw(st.integers(1, F.q - 1))
        terms[m] = c
    return ring.zero() + sum((ring.monomial(m, _elem(F, c)) for m, c in terms.items()), ring.zero())


def _elem(F, code):
    from dvdp.exactalg import FieldElement
    return FieldElement(F, code)


def ring(p, k, names):
    return PolyRing(field_create(p, k), tuple(names))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
