import json
import math
from fractions import Fraction as F

import pytest

from multiop.core import NnCoefficients, type2_polynomial
from multiop.errors import BelowLattice, DomainError, InconsistentField, ParseError
from multiop.lattice import LatticePath, MultiIndex, enumerate_box, monotone_paths
from multiop.moments import FamilySpec, build_moments
from multiop.recurrence import (
    CoefficientField,
    cd_identity_check,
    cd_kernel_eval,
    cd_kernel_polys,
    cd_sides,
    default_path,
    field_from_closed_form,
    field_from_json,
    field_from_table,
    generate_along_box,
    load_field,
    neighbor_difference_identity,
    type1_recurrence_check,
)

CH_SPEC = FamilySpec.charlier([1, 2])
CHARLIER = build_moments(CH_SPEC, 14)
HE_SPEC = FamilySpec.hermite([1, -1])
HERMITE = build_moments(HE_SPEC, 14)


def classical_charlier_kernel(a, n, x, y):
    """sum_{k<n} p_k(x) p_k(y) w(y) / h_k from the three-term recurrence, in floats."""
    total, p_prev, p = 0.0, [0.0, 0.0], [1.0, 1.0]
    for k in range(n):
        h = a**k * math.factorial(k)
        total += p[0] * p[1] / h
        nxt = [(t - (k + a)) * u - k * a * v for t, u, v in zip((x, y), p, p_prev)]
        p_prev, p = p, nxt
    return total * math.exp(-a) * a**y / math.factorial(int(y))


def test_generate_matches_moment_solve():
    P = generate_along_box(field_from_closed_form(CH_SPEC, [1, 1]), [1, 1])
    # the recurrence from the Charlier coefficients gives x^2 - 4x + 2
    assert P[MultiIndex.of(1, 0)].coefficients == (-1, 1)
    assert P[MultiIndex.of(1, 1)].coefficients == (2, -4, 1)
    assert P[MultiIndex.of(1, 1)] == type2_polynomial(CHARLIER, (1, 1))


def test_generate_whole_box_agrees_with_oracle(fixture_spec):
    table = build_moments(fixture_spec, 14)
    P = generate_along_box(field_from_closed_form(fixture_spec, [3, 3]), [3, 3])
    for n in enumerate_box([3, 3]):
        assert P[n] == type2_polynomial(table, n)


def test_generate_trivial_box():
    P = generate_along_box(field_from_closed_form(CH_SPEC, [0, 0]), [0, 0])
    assert {n: p.coefficients for n, p in P.items()} == {MultiIndex.of(0, 0): (1,)}


def test_generate_perturbed():
    field = field_from_closed_form(CH_SPEC, [1, 1])
    c = field[(0, 0)]
    bad = field.replace((0, 0), b=(c.b[0] + 1, c.b[1]))
    with pytest.raises(InconsistentField) as info:
        generate_along_box(bad, [1, 1])
    assert info.value.index == (1, 1)


def test_neighbor_identity():
    field = field_from_closed_form(CH_SPEC, [2, 2])
    P = generate_along_box(field, [2, 2])
    assert neighbor_difference_identity(field, P, (0, 0), 1, 2)
    assert neighbor_difference_identity(field, P, (1, 1), 1, 1)
    hf = field_from_table(HERMITE, [2, 2])
    HP = generate_along_box(hf, [2, 2])
    assert neighbor_difference_identity(hf, HP, (1, 0), 1, 2)


def test_type1_recurrence():
    assert type1_recurrence_check(CHARLIER, (1, 1), 1)
    assert type1_recurrence_check(HERMITE, (2, 1), 2)
    with pytest.raises(BelowLattice):
        type1_recurrence_check(CHARLIER, (0, 2), 1)


def test_cd_examples():
    one = build_moments(FamilySpec.charlier([1]), 10)
    assert cd_identity_check(one, (2,), default_path((2,)))
    for steps in ((1, 1, 2, 2), (2, 2, 1, 1)):
        assert cd_identity_check(CHARLIER, (2, 2), LatticePath(steps, 2))
    paths = monotone_paths(MultiIndex.of(2, 1), 100)
    assert len(paths) == 3
    sides = [cd_sides(HERMITE, (2, 1), p) for p in paths]
    assert all(s.holds() for s in sides)
    assert len({s.lhs for s in sides}) == 1 and len({s.rhs for s in sides}) == 1
    assert len({cd_kernel_polys(HERMITE, p) for p in paths}) == 1


def test_cd_fails_for_wrong_end():
    with pytest.raises(ValueError):
        cd_sides(CHARLIER, (2, 2), LatticePath((1, 2), 2))


def test_kernel_against_classical():
    spec = FamilySpec.charlier([1])
    table = build_moments(spec, 10)
    got = cd_kernel_eval(table, spec, (2,), default_path((2,)), 0.0, 1.0)
    want = classical_charlier_kernel(1.0, 2, 0.0, 1.0)
    assert abs(got - want) <= 1e-12 * abs(want)


def test_kernel_closed_vs_sum_hermite():
    path = default_path((2, 2))
    for x in (-1.5, -0.25, 0.5, 2.0):
        for y in (-1.0, 0.125, 1.75):
            s = cd_kernel_eval(HERMITE, HE_SPEC, (2, 2), path, x, y, form="sum")
            c = cd_kernel_eval(HERMITE, HE_SPEC, (2, 2), path, x, y, form="closed")
            assert abs(s - c) <= 1e-10 * max(1.0, abs(s))


def test_kernel_diagonal_is_finite():
    v = cd_kernel_eval(HERMITE, HE_SPEC, (2, 1), default_path((2, 1)), 0.5, 0.5, form="closed")
    assert math.isfinite(v)
    assert v == cd_kernel_eval(HERMITE, HE_SPEC, (2, 1), default_path((2, 1)), 0.5, 0.5)


def test_kernel_domain():
    spec = FamilySpec.laguerre1([F(1, 2), F(5, 3)])
    table = build_moments(spec, 10)
    with pytest.raises(DomainError):
        cd_kernel_eval(table, spec, (1, 1), default_path((1, 1)), 0.0, -1.0)
    with pytest.raises(DomainError):
        cd_kernel_eval(CHARLIER, CH_SPEC, (1, 1), default_path((1, 1)), 0.0, 0.5)


def test_field_validation():
    with pytest.raises(ValueError):
        CoefficientField(2, {MultiIndex.of(0, 1): NnCoefficients((1, 0), (0, 0))})
    with pytest.raises(ValueError):
        CoefficientField(2, {MultiIndex.of(0, 0): NnCoefficients((0, 0), (0, 0)),
                             MultiIndex.of(1, 1): NnCoefficients((1, 1), (0, 0))})


def test_field_json_roundtrip(tmp_path):
    field = field_from_closed_form(CH_SPEC, [2, 2])
    path = tmp_path / "f.json"
    path.write_text(json.dumps(field.to_json()))
    back = load_field(path)
    assert all(back[n] == field[n] for n in field.indices())
    with pytest.raises(ParseError):
        field_from_json({"r": 2, "field": [{"index": [0, 0], "a": ["0"], "b": ["1", "2"]}]})
