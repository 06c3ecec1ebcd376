"""Shared pytest fixtures for genusone tests."""

from pathlib import Path

import pytest

from genusone.models.genus_one import (
    BinaryQuarticModel,
    CubicModel,
    QuadricPairModel,
)

FIXTURES_DIR = Path(__file__).parent / "integration" / "fixtures"
CORPUS_DIR = FIXTURES_DIR / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    """Directory holding the worked-example models."""
    return CORPUS_DIR


@pytest.fixture
def f1() -> CubicModel:
    """Cubic of level 1 at 3 and 503."""
    return CubicModel.from_coefficients(
        [27089, 2142, 291938, 10008, -127341, 92937, 104736, 21093, -71172, -2655]
    )


@pytest.fixture
def f3() -> CubicModel:
    """Minimal cubic equivalent to f1."""
    return CubicModel.from_coefficients(
        [40877301, -11504, 12, -8035425, -64887, 526580, -200, 5803, -383, 7307]
    )


@pytest.fixture
def f4() -> CubicModel:
    """Minimal and reduced cubic equivalent to f1."""
    return CubicModel.from_coefficients([12, 12, 171, 65, 65, 0, -94, 87, 101, 7])


@pytest.fixture
def hesse() -> CubicModel:
    """x^3 + y^3 + z^3."""
    return CubicModel.from_coefficients([1, 1, 1, 0, 0, 0, 0, 0, 0, 0])


@pytest.fixture
def skoro() -> QuadricPairModel:
    """Quadric pair of level 1 at 2 and level 4 at 3."""
    a = [
        [-1, 11, -66, 396],
        [11, -66, 396, -2520],
        [-66, 396, -2520, 16335],
        [396, -2520, 16335, -105786],
    ]
    b = [
        [-1, -3, 33, -198],
        [-3, 33, -198, 1188],
        [33, -198, 1188, -7560],
        [-198, 1188, -7560, 49005],
    ]
    return QuadricPairModel.from_matrices(
        [[2 * x for x in row] for row in a], [[2 * x for x in row] for row in b]
    )


@pytest.fixture
def minimal_pair() -> QuadricPairModel:
    """Globally minimal quadric pair equivalent to skoro."""
    a = [
        [-728, -424, 319, -474],
        [-424, -252, 187, -280],
        [319, 187, -140, 209],
        [-474, -280, 209, -310],
    ]
    b = [
        [348, 198, -152, 220],
        [198, 114, -86, 130],
        [-152, -86, 66, -97],
        [220, 130, -97, 144],
    ]
    return QuadricPairModel.from_matrices(a, b)


@pytest.fixture
def pair_7823() -> QuadricPairModel:
    """Reduced 4-covering of y^2 = x^3 + 7823."""
    return QuadricPairModel.from_coefficients(
        [0, 2, 1, 1, 0, 0, 1, 1, 0, -2, 1, 0, 1, -1, 2, -1, 2, -1, -1, 1]
    )


@pytest.fixture
def quartic_7823() -> BinaryQuarticModel:
    """y^2 = -18x^4 + 116x^3z + 48x^2z^2 - 12xz^3 + 30z^4."""
    return BinaryQuarticModel.from_quartic((-18, 116, 48, -12, 30))


@pytest.fixture
def critical_quartic() -> BinaryQuarticModel:
    """y^2 = 2x^4 + 24x^2z^2 + 8z^4, critical at 2."""
    return BinaryQuarticModel.from_quartic((2, 0, 24, 0, 8))


@pytest.fixture
def critical_cubic() -> CubicModel:
    """x^3 + 3y^3 + 9z^3 + 18xyz, critical at 3."""
    return CubicModel.from_coefficients([1, 3, 9, 0, 0, 0, 0, 0, 0, 18])


@pytest.fixture
def critical_pair() -> QuadricPairModel:
    """x1^2 + 2x3^2 + 4x2x4 = x2^2 + 2x4^2 + 4x1x3 = 0, critical at 2."""
    return QuadricPairModel.from_coefficients(
        [1, 0, 0, 0, 0, 0, 4, 2, 0, 0, 0, 0, 4, 0, 1, 0, 0, 0, 0, 2]
    )
