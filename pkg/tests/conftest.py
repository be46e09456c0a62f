"""
Test configuration for pytest
"""
import os
import sys
import pytest

# Add the parent directory to the path so we can import from app
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.algebra.gf2n import make_field
from app.algebra.polyops import Degree10Coeffs, Poly


@pytest.fixture
def f16():
    """F_16 = F_2[X]/(X^4+X^3+1), θ = 0x2"""
    return make_field(4, 0x19)


@pytest.fixture
def f8():
    return make_field(3)


@pytest.fixture
def poly_from():
    """Build a Poly from a leading-first coefficient string"""
    def build(ctx, text):
        return Poly.parse(ctx, text)
    return build


@pytest.fixture
def degree10():
    def build(ctx, text):
        return Degree10Coeffs.from_poly(Poly.parse(ctx, text))
    return build
