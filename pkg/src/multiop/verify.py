"""Pass/fail suites for the compatibility equations and the cross-checks.

Every check compares exact rationals or exact polynomials.  Ratio-type
equations are checked cross-multiplied, so a zero denominator only shows up
as a ``skipped`` entry at a lattice boundary.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import system_for
from .errors import InconsistentField, MopError
from .exact import format_rational
from .families import (
    closed_form_coefficients,
    jp_delta,
    jp_delta_partial_fraction,
    jp_sum_identity,
    laguerre1_a_residue_form,
    laguerre1_sum_identity,
    residue_sum,
)
from .lattice import MultiIndex, enumerate_box, monotone_paths, path_count, step_down, step_up
from .moments import FamilySpec, MomentTable
from .recurrence import (
    CoefficientField,
    cd_kernel_polys,
    cd_sides,
    generate_along_box,
    neighbor_difference_identity,
    type1_recurrence_residuals,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
ALL_CHECKS = ("pde", "cd", "biorth", "recurrence", "differential", "identities")


@dataclass(frozen=True)
class CheckRecord:
    name: str
    index: tuple  # one MultiIndex, or a pair for two-index checks
    status: str
    witness: str | None = None

    def sort_key(self):
        return (tuple(n.entries for n in self.index), self.name)

    def to_json(self) -> dict:
        idx = [n.to_json() for n in self.index]
        return {
            "name": self.name,
            "index": idx[0] if len(idx) == 1 else idx,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def status(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def count(self, status: str) -> int:
        return sum(c.status == status for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == FAIL]

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def sorted(self) -> "VerificationReport":
        return VerificationReport(sorted(self.checks, key=CheckRecord.sort_key))

    def to_json(self) -> dict:
        return {"status": self.status, "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


class _Recorder:
    def __init__(self):
        self.report = VerificationReport()

    def equal(self, name, index, lhs, rhs):
        if lhs == rhs:
            self.add(name, index, PASS)
        else:
            self.add(name, index, FAIL, f"lhs={_show(lhs)} rhs={_show(rhs)}")

    def add(self, name, index, status, witness=None):
        if isinstance(index, MultiIndex):
            index = (index,)
        self.report.checks.append(CheckRecord(name, tuple(index), status, witness))

    def done(self) -> VerificationReport:
        return self.report.sorted()


def _show(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (tuple, list)):
        return "[" + ",".join(_show(x) for x in v) + "]"
    return str(v)


def _require_cover(field_: CoefficientField, limits: Sequence[int], ring: int = 1):
    outer = [m + ring for m in limits]
    missing = [n for n in enumerate_box(outer) if n not in field_]
    if missing:
        raise ValueError(f"coefficient field must cover the box {outer}; missing {missing[0]}")


def check_pde_r2(field_: CoefficientField, limits: Sequence[int]) -> VerificationReport:
    """The four r = 2 partial difference equations at every index of the box.

    Names follow the bivariate convention a, b = a[0], a[1] and c, d = b[0], b[1].
    """
    if field_.r != 2:
        raise ValueError("check_pde_r2 needs r = 2")
    _require_cover(field_, limits)
    rec = _Recorder()

    def A(n, m):
        return field_[(n, m)].a[0]

    def B(n, m):
        return field_[(n, m)].a[1]

    def C(n, m):
        return field_[(n, m)].b[0]

    def D(n, m):
        return field_[(n, m)].b[1]

    for idx in enumerate_box(limits):
        n, m = idx.entries
        rec.equal("pde.b_exchange", idx, D(n + 1, m) - D(n, m), C(n, m + 1) - C(n, m))
        rec.equal("pde.a_sum", idx,
                  B(n + 1, m) - B(n, m + 1) + A(n + 1, m) - A(n, m + 1),
                  D(n + 1, m) * C(n, m) - D(n, m) * C(n, m + 1))
        if n == 0:
            rec.add("pde.a1_ratio", idx, SKIPPED, "n = 0 boundary")
        else:
            rec.equal("pde.a1_ratio", idx,
                      A(n, m + 1) * (C(n - 1, m) - D(n - 1, m)),
                      A(n, m) * (C(n, m) - D(n, m)))
        if m == 0:
            rec.add("pde.a2_ratio", idx, SKIPPED, "m = 0 boundary")
        else:
            rec.equal("pde.a2_ratio", idx,
                      B(n + 1, m) * (C(n, m - 1) - D(n, m - 1)),
                      B(n, m) * (C(n, m) - D(n, m)))
    return rec.done()


def check_pde_general(field_: CoefficientField, limits: Sequence[int]) -> VerificationReport:
    """The three compatibility equations for every ordered pair i != j."""
    if field_.r < 2:
        raise ValueError("check_pde_general needs r >= 2")
    _require_cover(field_, limits)
    rec = _Recorder()
    r = field_.r
    for n in enumerate_box(limits):
        here = field_[n]
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                if i == j:
                    continue
                up_i, up_j = field_[step_up(n, i)], field_[step_up(n, j)]
                tag = f"[{i},{j}]"
                rec.equal("pde.r1" + tag, n,
                          up_i.b[j - 1] - here.b[j - 1], up_j.b[i - 1] - here.b[i - 1])
                rec.equal("pde.r2" + tag, n,
                          sum(up_j.a) - sum(up_i.a),
                          up_j.b[i - 1] * here.b[j - 1] - here.b[i - 1] * up_i.b[j - 1])
                if n[i - 1] == 0:
                    rec.add("pde.r3" + tag, n, SKIPPED, f"n_{i} = 0 boundary")
                else:
                    low = field_[step_down(n, i)]
                    rec.equal("pde.r3" + tag, n,
                              here.a[i - 1] * (here.b[j - 1] - here.b[i - 1]),
                              up_j.a[i - 1] * (low.b[j - 1] - low.b[i - 1]))
    return rec.done()


def check_generation(field_: CoefficientField, limits: Sequence[int]) -> VerificationReport:
    """Path independence of the recurrences plus the three-neighbour identity."""
    rec = _Recorder()
    r = field_.r
    try:
        P = generate_along_box(field_, limits)
    except InconsistentField as exc:
        rec.add("recurrence.generation", MultiIndex(exc.index), FAIL, str(exc))
        return rec.done()
    rec.add("recurrence.generation", MultiIndex(tuple(limits)), PASS)
    for n in enumerate_box(limits):
        for j in range(1, r + 1):
            for k in range(j + 1, r + 1):
                if step_up(n, j) in P and step_up(n, k) in P:
                    ok = neighbor_difference_identity(field_, P, n, j, k)
                    rec.add(f"recurrence.neighbors[{j},{k}]", n, PASS if ok else FAIL,
                            None if ok else "P_{n+e_k} - P_{n+e_j} != (b_j - b_k) P_n")
    return rec.done()


def check_type1_recurrence(table: MomentTable, limits: Sequence[int]) -> VerificationReport:
    rec = _Recorder()
    for n in enumerate_box(limits):
        for k in range(1, table.r + 1):
            if n[k - 1] == 0:
                continue
            res = type1_recurrence_residuals(table, n, k)
            bad = [j + 1 for j, p in enumerate(res) if p]
            rec.add(f"recurrence.type1[{k}]", n, FAIL if bad else PASS,
                    f"nonzero residual for weights {bad}" if bad else None)
    return rec.done()


def check_cd(table: MomentTable, limits: Sequence[int], max_paths: int = 10, seed: int = 0,
             full_limit: int | None = None, max_size: int | None = None) -> VerificationReport:
    """Christoffel-Darboux identity per weight over sampled monotone paths.

    All paths are used when there are at most ``full_limit`` (default
    ``max_paths``) of them, otherwise ``max_paths`` seeded ones.
    """
    full_limit = max_paths if full_limit is None else full_limit
    rec = _Recorder()
    for n in enumerate_box(limits):
        if n.is_zero() or (max_size is not None and n.size() > max_size):
            continue
        count = full_limit if path_count(n) <= full_limit else max_paths
        paths = monotone_paths(n, count, seed)
        kernels = set()
        for path in paths:
            sides = cd_sides(table, n, path)
            label = "cd[" + "".join(map(str, path.steps)) + "]"
            bad = [j + 1 for j, (p, q) in enumerate(zip(sides.lhs, sides.rhs)) if p != q]
            rec.add(label, n, FAIL if bad else PASS,
                    f"identity fails for weights {bad}" if bad else None)
            kernels.add(cd_kernel_polys(table, path))
        ok = len(kernels) == 1
        rec.add("cd.path_independence", n, PASS if ok else FAIL,
                None if ok else f"{len(kernels)} distinct kernels over {len(paths)} paths")
    return rec.done()


def _biorth_case(n: MultiIndex, m: MultiIndex):
    if m.leq(n):
        return 0
    if n.size() <= m.size() - 2:
        return 0
    if m.size() == n.size() + 1:
        return 1
    return None


def check_biorthogonality(table: MomentTable, limits: Sequence[int],
                          max_size: int | None = None) -> VerificationReport:
    sys_ = system_for(table)
    rec = _Recorder()
    idx = [n for n in enumerate_box(limits) if max_size is None or n.size() <= max_size]
    for n in idx:
        for m in idx:
            expected = _biorth_case(n, m)
            if expected is None:
                rec.add("biorth", (n, m), SKIPPED, "no case applies")
                continue
            rec.equal("biorth", (n, m), sys_.pairing(n, m), Fraction(expected))
    return rec.done()


def differential_check(spec: FamilySpec, table: MomentTable, limits: Sequence[int]) -> VerificationReport:
    """Moment oracle against closed forms, the determinant route and the pairing form of b."""
    sys_ = system_for(table)
    rec = _Recorder()
    for n in enumerate_box(limits):
        oracle = sys_.coefficients(n)
        closed = closed_form_coefficients(spec, n)
        rec.equal("differential.closed_form", n, (oracle.a, oracle.b), (closed.a, closed.b))
        if table.r == 2:
            det = sys_.determinant_coefficients(n)
            rec.equal("differential.determinant", n,
                      (oracle.a, oracle.b), (det.coefficients.a, det.coefficients.b))
            rec.equal("differential.d_minus_c", n, det.d_minus_c, oracle.b[1] - oracle.b[0])
            rec.equal("differential.second_coefficient", n,
                      sys_.second_coefficient(n), sys_.type2(n).subleading())
        pairing_b = tuple(sys_.b_by_pairing(n, j) for j in range(1, table.r + 1))
        rec.equal("differential.b_pairing", n, oracle.b, pairing_b)
    return rec.done()


def check_identities(spec: FamilySpec, limits: Sequence[int],
                     table: MomentTable | None = None) -> VerificationReport:
    """The family-specific closed-form identities (Laguerre I and Jacobi-Pineiro)."""
    rec = _Recorder()
    fam = spec.family
    for n in enumerate_box(limits):
        if fam in ("laguerre1", "jacobi_pineiro"):
            rec.equal("identity.residue_sum", n, residue_sum(spec, n), Fraction(n.size()))
        if fam == "laguerre1":
            a = closed_form_coefficients(spec, n).a
            rec.equal("identity.laguerre1_sum", n, laguerre1_sum_identity(spec, n), sum(a))
            rec.equal("identity.laguerre1_residue_form", n, laguerre1_a_residue_form(spec, n), a)
        elif fam == "jacobi_pineiro":
            a = closed_form_coefficients(spec, n).a
            rec.equal("identity.jp_delta_forms", n, jp_delta(spec, n), jp_delta_partial_fraction(spec, n))
            rec.equal("identity.jp_sum", n, jp_sum_identity(spec, n), sum(a))
            if table is not None:
                rec.equal("identity.jp_delta_moments", n, jp_delta(spec, n),
                          system_for(table).type2(n).subleading())
    return rec.done()


def run_suite(limits: Sequence[int], checks: Iterable[str] = ALL_CHECKS, *,
              spec: FamilySpec | None = None, table: MomentTable | None = None,
              field_: CoefficientField | None = None, max_paths: int = 10,
              seed: int = 0) -> VerificationReport:
    """Run the selected check groups; unavailable groups are reported as skipped.

    ``field_`` defaults to the moment oracle over the box plus one ring.
    """
    from .recurrence import field_from_table

    checks = [c for c in ALL_CHECKS if c in set(checks)]
    limits = tuple(limits)
    top = MultiIndex(limits)
    report = VerificationReport()
    if field_ is None and table is not None:
        field_ = field_from_table(table, [m + 1 for m in limits])
    r = field_.r if field_ is not None else table.r

    def skip(group, why):
        report.checks.append(CheckRecord(group, (top,), SKIPPED, why))

    for group in checks:
        try:
            if group == "pde":
                if r < 2:
                    skip(group, "needs r >= 2")
                    continue
                if r == 2:
                    report.extend(check_pde_r2(field_, limits))
                report.extend(check_pde_general(field_, limits))
            elif group == "recurrence":
                report.extend(check_generation(field_, [m + 1 for m in limits]))
                if table is not None:
                    report.extend(check_type1_recurrence(table, limits))
            elif table is None:
                skip(group, "needs a moment table")
            elif group == "cd":
                report.extend(check_cd(table, limits, max_paths=max_paths, seed=seed))
            elif group == "biorth":
                report.extend(check_biorthogonality(table, limits))
            elif spec is None or spec.family == "custom":
                skip(group, "needs a built-in family")
            elif group == "differential":
                report.extend(differential_check(spec, table, limits))
            elif group == "identities":
                report.extend(check_identities(spec, limits, table))
        except MopError as exc:
            report.checks.append(CheckRecord(group, (top,), FAIL, f"{type(exc).__name__}: {exc}"))
    return report.sorted()
