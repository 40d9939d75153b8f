import numpy as np
import pytest

from fracspline.solver import ProblemSpec


def _zeros(x, *args):
    return np.zeros_like(np.asarray(x, dtype=float))


def make_linear_spec(alpha=0.5, kappa=1.0, T=1.0):
    """u(x, t) = x solves the homogeneous equation on [0, 1]."""
    return ProblemSpec(
        alpha=alpha, kappa=kappa, a=0.0, b=1.0, T=T,
        phi=lambda x: np.asarray(x, dtype=float),
        phi_prime=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        g1=lambda t: 0.0, g2=lambda t: 1.0, f=_zeros,
        exact=lambda x, t: np.asarray(x, dtype=float),
        name="linear",
    )


def make_constant_spec(alpha=0.5, kappa=1.0):
    return ProblemSpec(
        alpha=alpha, kappa=kappa, a=0.0, b=1.0, T=1.0,
        phi=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        phi_prime=_zeros,
        g1=lambda t: 1.0, g2=lambda t: 1.0, f=_zeros,
        exact=lambda x, t: np.ones_like(np.asarray(x, dtype=float)),
        name="constant",
    )


def make_zero_spec(alpha=0.5):
    return ProblemSpec(
        alpha=alpha, kappa=1.0, a=0.0, b=1.0, T=1.0,
        phi=_zeros, phi_prime=_zeros,
        g1=lambda t: 0.0, g2=lambda t: 0.0, f=_zeros,
        exact=lambda x, t: _zeros(x),
        name="zero",
    )


@pytest.fixture
def linear_spec():
    return make_linear_spec()


@pytest.fixture
def constant_spec():
    return make_constant_spec()


@pytest.fixture
def zero_spec():
    return make_zero_spec()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
