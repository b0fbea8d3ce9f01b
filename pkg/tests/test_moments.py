import json
from fractions import Fraction as F

import mpmath as mp
import pytest

from multiop.errors import InvalidParameters, ParseError, RaggedTable, UnsupportedFamily
from multiop.moments import FamilySpec, build_moments, ingest_custom, normalize_family

mp.mp.dps = 40


def close(q, x, tol=mp.mpf("1e-25")):
    return abs(mp.mpf(q.numerator) / q.denominator - x) <= tol * max(1, abs(x))


def test_examples():
    assert build_moments(FamilySpec.hermite([2]), 2).moments[0] == (1, 1, F(3, 2))
    assert build_moments(FamilySpec.charlier([1]), 4).moments[0] == (1, 1, 2, 5, 15)
    assert build_moments(FamilySpec.jacobi_pineiro([0], 0), 3).moments[0] == (1, F(1, 2), F(1, 3), F(1, 4))


@pytest.mark.parametrize("c", [F(2), F(1), F(-1), F(3, 2)])
def test_hermite_against_quadrature(c):
    w = lambda x: mp.exp(-x * x + mp.mpf(c.numerator) / c.denominator * x)  # noqa: E731
    z = mp.quad(w, [-mp.inf, mp.inf])
    for k, q in enumerate(build_moments(FamilySpec.hermite([c]), 6).moments[0]):
        assert close(q, mp.quad(lambda x: x**k * w(x), [-mp.inf, mp.inf]) / z)


@pytest.mark.parametrize("a", [F(1), F(2), F(1, 3)])
def test_charlier_against_series(a):
    av = mp.mpf(a.numerator) / a.denominator
    for ell, q in enumerate(build_moments(FamilySpec.charlier([a]), 6).moments[0]):
        s = mp.nsum(lambda k: k**ell * av**k / mp.factorial(k), [0, mp.inf]) * mp.exp(-av)
        assert close(q, s)


def test_laguerre_and_jacobi_against_quadrature():
    al, be, c = F(1, 2), F(1, 3), F(2)
    A, B, C = (mp.mpf(v.numerator) / v.denominator for v in (al, be, c))
    lag1 = build_moments(FamilySpec.laguerre1([al]), 5).moments[0]
    lag2 = build_moments(FamilySpec.laguerre2(al, [c]), 5).moments[0]
    jp = build_moments(FamilySpec.jacobi_pineiro([al], be), 5).moments[0]
    z1 = mp.quad(lambda x: x**A * mp.exp(-x), [0, mp.inf])
    z2 = mp.quad(lambda x: x**A * mp.exp(-C * x), [0, mp.inf])
    z3 = mp.quad(lambda x: x**A * (1 - x) ** B, [0, 1])
    for k in range(6):
        assert close(lag1[k], mp.quad(lambda x: x**(A + k) * mp.exp(-x), [0, mp.inf]) / z1)
        assert close(lag2[k], mp.quad(lambda x: x**(A + k) * mp.exp(-C * x), [0, mp.inf]) / z2)
        assert close(jp[k], mp.quad(lambda x: x**(A + k) * (1 - x) ** B, [0, 1]) / z3)


@pytest.mark.parametrize("spec", [
    FamilySpec.charlier([0]),
    FamilySpec.charlier([-1, 2]),
    FamilySpec.laguerre1([-1, 1]),
    FamilySpec.laguerre1([F(1, 2), F(3, 2)]),  # difference is an integer
    FamilySpec.laguerre2(F(1, 2), [1, 1]),
    FamilySpec.laguerre2(-1, [1, 2]),
    FamilySpec.jacobi_pineiro([F(1, 2), F(1, 3)], -1),
])
def test_invalid_parameters(spec):
    with pytest.raises(InvalidParameters):
        build_moments(spec, 3)


def test_family_names():
    assert normalize_family("jacobi-pineiro") == "jacobi_pineiro"
    with pytest.raises(UnsupportedFamily):
        normalize_family("meixner")


def write(tmp_path, obj):
    p = tmp_path / "m.json"
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_custom_equivalent(tmp_path):
    table = ingest_custom(write(tmp_path, {"r": 1, "max_degree": 3, "moments": [["1", "1", "2", "5"]]}))
    assert table.same_values(build_moments(FamilySpec.charlier([1]), 3))


def test_custom_errors(tmp_path):
    with pytest.raises(RaggedTable):
        ingest_custom(write(tmp_path, {"r": 2, "max_degree": 2, "moments": [["1", "1", "2"], ["1", "2", "6", "22"]]}))
    with pytest.raises(ParseError, match=r"moments\[0\]\[1\]"):
        ingest_custom(write(tmp_path, {"r": 1, "max_degree": 1, "moments": [["1", "1/0"]]}))
    with pytest.raises(ParseError, match="line 1"):
        ingest_custom(write(tmp_path, "{not json"))
    with pytest.raises(ParseError, match="missing field"):
        ingest_custom(write(tmp_path, {"r": 1, "moments": [["1"]]}))
