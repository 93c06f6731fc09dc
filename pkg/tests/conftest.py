import pytest
from hypothesis import HealthCheck, settings

from modalbench.terms import TermStore

# frame/term generation is cheap but evaluation over product spaces is not;
# keep example counts moderate and drop the per-example deadline
settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def store() -> TermStore:
    return TermStore()
