import os

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile(
    "workbench",
    max_examples=int(os.environ.get("EULERSUM_HYPO_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.filter_too_much],
)
settings.load_profile("workbench")


@pytest.fixture(autouse=True)
def ambient_oracle_precision():
    """Run test bodies at 400-bit ambient precision.

    mpmath rounds every high-level operation to the current working
    precision, so arithmetic on reference values in a test body (negating
    a constant, dividing by an integer) would silently truncate them to
    the 53-bit default.  The library code under test carries its own
    precision contexts and is unaffected.
    """
    with mp.workprec(400):
        yield
