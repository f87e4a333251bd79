"""Shared fixtures: stock bases and skew densities reused across test modules."""

import pytest

from skewlab.bases import make_base
from skewlab.perturb import compose, odd_cubic, odd_linear
from skewlab.skew1d import SkewDensity1D


@pytest.fixture(scope="session")
def normal():
    return make_base("normal")


@pytest.fixture(scope="session")
def sn1(normal):
    """Unit-slant skew-normal, 2 phi(x) Phi(x)."""
    return SkewDensity1D(normal, compose(normal, odd_linear(1.0)), validate=False)


@pytest.fixture(scope="session")
def cubic_skew(normal):
    """2 phi(x) Phi(x^3), the stock two-mode case."""
    return SkewDensity1D(normal, compose(normal, odd_cubic(0.0, 1.0)), validate=False)


def sn(alpha):
    base = make_base("normal")
    return SkewDensity1D(base, compose(base, odd_linear(alpha)), validate=False)
