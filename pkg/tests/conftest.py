import pytest

from ld2.gf2n import Field
from ld2.keys import QuadraticEquation, SecretKey, derive_public_key
from ld2.linalg import AffineMap, BitMatrix

# The n = 3 toy fixture over x^3 + x + 1: alpha = 1 + g + g^2 and fixed
# invertible affine maps with known public equations.
TOY_ALPHA = 0b111
TOY_A1 = (0b011, 0b110, 0b100)
TOY_C1 = 0b101
TOY_A2 = (0b111, 0b110, 0b100)
TOY_C2 = 0b010

TOY_EQUATIONS = (
    dict(xx=((2, 3),), xy=((2, 2), (2, 3), (3, 3)), x=(1, 2), y=(1, 2, 3), constant=0),
    dict(xx=((1, 3), (2, 3)), xy=((2, 2), (3, 1), (3, 2)), x=(2, 3), y=(2, 3), constant=1),
    dict(xx=((1, 2),), xy=((2, 1), (2, 2), (3, 2), (3, 3)), x=(2,), y=(3,), constant=1),
)


@pytest.fixture(scope="session")
def f8():
    return Field(3)


@pytest.fixture(scope="session")
def toy_sk(f8):
    s = AffineMap(BitMatrix(TOY_A1, 3), TOY_C1)
    t = AffineMap(BitMatrix(TOY_A2, 3), TOY_C2)
    return SecretKey(f8, s, t, TOY_ALPHA)


@pytest.fixture(scope="session")
def toy_pk(toy_sk):
    return derive_public_key(toy_sk)


@pytest.fixture(scope="session")
def toy_expected():
    return tuple(QuadraticEquation.from_terms(3, **terms) for terms in TOY_EQUATIONS)
