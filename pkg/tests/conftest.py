from fractions import Fraction

import pytest

from feyngen import Model


@pytest.fixture(scope="session")
def phi3_model():
    g = Fraction(1, 3)
    lam = Fraction(5, 7)
    return Model(("x",), {("x", "x"): g}, vertex_by_degree={3: lam * g**3})


@pytest.fixture(scope="session")
def phi4_model():
    g = Fraction(2, 5)
    lam = Fraction(3)
    return Model(("x",), {("x", "x"): g}, vertex_by_degree={4: lam * g**4})


@pytest.fixture(scope="session")
def two_label_model():
    # Degree-symmetric vertices over a non-diagonal 2x2 propagator.
    prop = {
        ("a", "a"): Fraction(2),
        ("a", "b"): Fraction(1, 2),
        ("b", "b"): Fraction(1),
    }
    return Model(
        ("a", "b"),
        prop,
        vertex_by_degree={1: Fraction(1, 5), 3: Fraction(1, 2), 4: Fraction(2, 7)},
    )
