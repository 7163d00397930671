import pytest

from fmwalls import Surface


@pytest.fixture(scope="session")
def L2() -> Surface:
    """Product of two elliptic curves: hyperbolic plane, H = C1 + C2."""
    return Surface(
        [[0, 1], [1, 0]],
        [1, 1],
        name="product",
        product_of_elliptic_curves=True,
        elliptic_classes=[[1, 0], [0, 1]],
    )


@pytest.fixture(scope="session")
def L1() -> Surface:
    """Picard rank 1 with (H^2) = 2."""
    return Surface([[2]], [1], name="rank1")


@pytest.fixture(scope="session")
def R3() -> Surface:
    """Rank 3: hyperbolic plane plus a (-2) class, H = (1,1,0)."""
    return Surface([[0, 1, 0], [1, 0, 0], [0, 0, -2]], [1, 1, 0], name="rank3")
