import pytest
from hypothesis import HealthCheck, settings, strategies as st

from skewcodes.galois import field_from_order
from skewcodes.skew import SkewRing

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

# (q, alpha token, e, l) contexts used by the property suites
FIELD_CONTEXTS = [
    (4, "t", 1, None),
    (4, "1", 1, None),
    (4, "0", 1, None),
    (9, "t^2", 1, None),
    (16, "t", 1, None),
    (16, "t^3", 2, None),
    (25, "t", 1, None),
    (49, "t^2", 1, None),
]
RL_CONTEXTS = [
    (16, "t", 1, 2),
    (25, "t", 1, 3),
    (49, "t", 1, 2),
]
ALL_CONTEXTS = FIELD_CONTEXTS + RL_CONTEXTS


def make_ring(q, alpha, e=1, l=None):
    F = field_from_order(q)
    return SkewRing.inner(F, alpha=F.parse(alpha), e=e, l=l)


def ctx_id(c):
    q, a, e, l = c
    return f"F{q}-a{a}-e{e}" + (f"-R{l}" if l else "")


@pytest.fixture(params=ALL_CONTEXTS, ids=ctx_id)
def ring(request):
    return make_ring(*request.param)


@pytest.fixture(params=FIELD_CONTEXTS, ids=ctx_id)
def field_ring(request):
    return make_ring(*request.param)


def coeff(S):
    """Strategy for one coefficient of S's base ring."""
    F = S.field
    if S.over_rl():
        return st.tuples(*[st.integers(0, F.q - 1)] * S.base.l)
    return st.integers(0, F.q - 1)


def polys(S, max_degree=6):
    return st.lists(coeff(S), max_size=max_degree + 1).map(S.poly)


def nonzero_polys(S, max_degree=6):
    return polys(S, max_degree).filter(lambda f: not f.is_zero())


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            for key, value in getattr(rep, "user_properties", []):
                if key == "criterion_line":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
