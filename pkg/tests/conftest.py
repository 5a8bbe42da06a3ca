import numpy as np
import pytest

from clext import params_from_beta_bar, validate_params


@pytest.fixture(scope="session")
def fig1_params():
    """lambda = 3 with beta_bar = (4/3, 2/3), i.e. alpha = (3, -3, 0)."""
    return validate_params(3, (3.0, -3.0, 0.0))


@pytest.fixture(scope="session")
def paraboson_params():
    """lambda = 2 with beta_bar_1 = 2 (alpha_0 = 3)."""
    return params_from_beta_bar(2, [2.0])


@pytest.fixture(scope="session")
def undeformed2():
    return validate_params(2, (0.0, 0.0))


def random_valid_params(rng, lam):
    """Random admissible parameter set: beta_bar_mu drawn in (0.08, 2.5)."""
    tail = rng.uniform(0.08, 2.5, size=lam - 1)
    return params_from_beta_bar(lam, tail)


@pytest.fixture()
def rng():
    # function-scoped: every test sees the same deterministic stream
    # regardless of execution order
    return np.random.default_rng(20260810)
