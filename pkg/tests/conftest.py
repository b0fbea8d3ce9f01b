from fractions import Fraction as F

import pytest

from multiop.moments import FamilySpec

FIXTURES = {
    "hermite": FamilySpec.hermite([1, -1]),
    "charlier": FamilySpec.charlier([1, 2]),
    "laguerre1": FamilySpec.laguerre1([F(1, 2), F(5, 3)]),
    "laguerre2": FamilySpec.laguerre2(F(1, 2), [1, 2]),
    "jacobi_pineiro": FamilySpec.jacobi_pineiro([F(1, 2), F(1, 3)], F(1, 3)),
}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_spec(request):
    return FIXTURES[request.param]
