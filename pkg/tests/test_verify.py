from fractions import Fraction as F

from multiop.lattice import MultiIndex
from multiop.moments import FamilySpec, MomentTable, build_moments
from multiop.recurrence import field_from_closed_form
from multiop.verify import (
    FAIL,
    PASS,
    SKIPPED,
    check_biorthogonality,
    check_cd,
    check_generation,
    check_identities,
    check_pde_general,
    check_pde_r2,
    differential_check,
    run_suite,
)

CH_SPEC = FamilySpec.charlier([1, 2])


def mutated_charlier(limits=(5, 5)):
    field = field_from_closed_form(CH_SPEC, limits)
    c = field[(2, 2)]
    return field.replace((2, 2), a=(F(99), c.a[1]))


def test_pde_r2_charlier_and_hermite():
    rep = check_pde_r2(field_from_closed_form(CH_SPEC, [5, 5]), [4, 4])
    assert rep.passed
    first = [c for c in rep.checks if c.name == "pde.b_exchange"]
    assert len(first) == 25
    he = check_pde_r2(field_from_closed_form(FamilySpec.hermite([1, -1]), [5, 5]), [4, 4])
    assert he.passed


def test_pde_boundary_skips_only():
    rep = check_pde_r2(field_from_closed_form(CH_SPEC, [5, 5]), [4, 4])
    for c in rep.checks:
        if c.status == SKIPPED:
            n, m = c.index[0].entries
            assert (c.name == "pde.a1_ratio" and n == 0) or (c.name == "pde.a2_ratio" and m == 0)
    assert rep.count(SKIPPED) == 10


def test_mutation_fails_exactly_around_the_index():
    rep = check_pde_r2(mutated_charlier(), [4, 4])
    bad = sorted((c.name, c.index[0].entries) for c in rep.failures())
    assert bad == [
        ("pde.a1_ratio", (2, 1)), ("pde.a1_ratio", (2, 2)),
        ("pde.a_sum", (1, 2)), ("pde.a_sum", (2, 1)),
    ]
    assert all("lhs=" in c.witness and "rhs=" in c.witness for c in rep.failures())


def test_general_and_r2_agree():
    good = field_from_closed_form(CH_SPEC, [5, 5])
    assert check_pde_general(good, [4, 4]).passed
    assert not check_pde_general(mutated_charlier(), [4, 4]).passed


def test_pde_general_r3_and_jacobi():
    spec = FamilySpec.laguerre2(F(1, 2), [1, 2, 3])
    assert check_pde_general(field_from_closed_form(spec, [3, 3, 3]), [2, 2, 2]).passed
    jp = FamilySpec.jacobi_pineiro([F(1, 2), F(5, 3)], F(1, 3))
    assert check_pde_r2(field_from_closed_form(jp, [4, 4]), [3, 3]).passed


def test_generation_failure_is_recorded():
    field = field_from_closed_form(CH_SPEC, [3, 3])
    c = field[(1, 0)]
    rep = check_generation(field.replace((1, 0), b=(c.b[0], c.b[1] + 1)), [3, 3])
    assert rep.status == FAIL
    assert rep.failures()[0].name == "recurrence.generation"


def test_biorthogonality_and_cd():
    table = build_moments(CH_SPEC, 20)
    rep = check_biorthogonality(table, [3, 3])
    assert rep.passed and rep.count(PASS) > 0
    pair = [c for c in rep.checks if c.index == (MultiIndex.of(2, 1), MultiIndex.of(1, 1))]
    assert pair[0].status == PASS
    assert check_cd(table, [2, 2], max_paths=4).passed


def test_differential_and_identities():
    spec = FamilySpec.laguerre1([F(1, 2), F(5, 3)])
    table = build_moments(spec, 20)
    assert differential_check(spec, table, [4, 4]).passed
    assert check_identities(spec, [4, 4], table).passed


def test_suite_is_deterministic_and_serializable():
    spec = FamilySpec.hermite([1, -1])
    table = build_moments(spec, 20)
    a = run_suite([2, 2], spec=spec, table=table, seed=3).dumps()
    b = run_suite([2, 2], spec=spec, table=build_moments(spec, 20), seed=3).dumps()
    assert a == b
    assert '"status": "pass"' in a


def test_suite_custom_table_skips_family_checks():
    table = MomentTable(build_moments(CH_SPEC, 12).moments)
    rep = run_suite([2, 2], table=table)
    assert rep.passed
    skipped = {c.name for c in rep.checks if c.status == SKIPPED and c.witness == "needs a built-in family"}
    assert skipped == {"differential", "identities"}


def test_suite_field_only():
    rep = run_suite([3, 3], ["pde", "recurrence", "cd"], field_=mutated_charlier((4, 4)))
    assert rep.status == FAIL
    assert any(c.name == "cd" and c.status == SKIPPED for c in rep.checks)
