"""Lattice generation from recurrence coefficients and the Christoffel-Darboux identity.

The Christoffel-Darboux check is exact: Q_n = sum_j A_{n,j} w_j, and the
weights of the built-in families are linearly independent over polynomials,
so the identity splits into one bivariate polynomial identity per weight.
Floating point appears only in :func:`cd_kernel_eval`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import MonicPolynomial, NnCoefficients, system_for
from .errors import BelowLattice, DomainError, InconsistentField, ParseError, UnsupportedFamily
from .exact import (
    BivariatePolynomial,
    bipoly_equal,
    parse_rational,
    poly_add,
    poly_scale,
    poly_shift,
    poly_sub,
)
from .lattice import LatticePath, MultiIndex, as_index, enumerate_box, step_down, step_up
from .moments import FamilySpec, MomentTable


@dataclass(frozen=True)
class CoefficientField:
    """Recurrence coefficients over a downward-closed set of indices."""

    r: int
    values: Mapping[MultiIndex, NnCoefficients]

    def __post_init__(self):
        vals = dict(self.values)
        for n, c in vals.items():
            if n.r != self.r or c.r != self.r:
                raise ValueError(f"entry at {n} does not have r = {self.r}")
            for j, nj in enumerate(n.entries):
                if nj == 0 and c.a[j] != 0:
                    raise ValueError(f"a_{{n,{j + 1}}} must vanish at {n} (n_{j + 1} = 0)")
        for n in vals:
            for j in range(1, self.r + 1):
                if n[j - 1] and step_down(n, j) not in vals:
                    raise ValueError(f"field is not downward closed: {n} lacks {step_down(n, j)}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, n) -> NnCoefficients:
        return self.values[as_index(n)]

    def __contains__(self, n) -> bool:
        return as_index(n) in self.values

    def indices(self) -> list[MultiIndex]:
        return sorted(self.values, key=lambda m: (m.size(), m.entries))

    def replace(self, n, a=None, b=None) -> "CoefficientField":
        """A copy with some coefficients at ``n`` replaced (used for mutations)."""
        n = as_index(n)
        old = self.values[n]
        vals = dict(self.values)
        vals[n] = NnCoefficients(tuple(a) if a is not None else old.a,
                                 tuple(b) if b is not None else old.b)
        return CoefficientField(self.r, vals)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "field": [{"index": n.to_json(), **self.values[n].to_json()} for n in self.indices()],
        }


def field_from_json(data, source: str = "<data>") -> CoefficientField:
    try:
        r = int(data["r"])
        vals = {}
        for k, row in enumerate(data["field"]):
            n = MultiIndex(tuple(row["index"]))
            try:
                vals[n] = NnCoefficients(tuple(parse_rational(x) for x in row["a"]),
                                         tuple(parse_rational(x) for x in row["b"]))
            except ValueError as exc:
                raise ParseError(f"{source}: field[{k}]: {exc}") from None
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{source}: malformed coefficient field ({exc})") from None
    try:
        return CoefficientField(r, vals)
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None


def load_field(path) -> CoefficientField:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return field_from_json(data, str(path))


def field_from_table(table: MomentTable, limits: Sequence[int]) -> CoefficientField:
    sys_ = system_for(table)
    return CoefficientField(table.r, {n: sys_.coefficients(n) for n in enumerate_box(limits)})


def field_from_closed_form(spec: FamilySpec, limits: Sequence[int]) -> CoefficientField:
    from .families import closed_form_coefficients

    return CoefficientField(spec.r, {n: closed_form_coefficients(spec, n) for n in enumerate_box(limits)})


def generate_along_box(field: CoefficientField, limits: Sequence[int]) -> dict[MultiIndex, MonicPolynomial]:
    """Run the nearest-neighbour recurrences from P_0 = 1 over a box.

    Every applicable step direction is used at every index and the results
    must coincide; otherwise :class:`InconsistentField` names the index.
    """
    box = enumerate_box(limits)
    polys: dict[MultiIndex, list[Fraction]] = {}
    for n in box:
        if n.is_zero():
            polys[n] = [Fraction(1)]
            continue
        found = None
        for k in range(1, n.r + 1):
            if n[k - 1] == 0:
                continue
            m = step_down(n, k)
            if m not in field:
                raise InconsistentField(n, f"field does not cover {m}")
            c = field[m]
            pm = polys[m]
            cand = poly_sub(poly_shift(pm), poly_scale(pm, c.b[k - 1]))
            for j in range(1, n.r + 1):
                if m[j - 1]:
                    cand = poly_sub(cand, poly_scale(polys[step_down(m, j)], c.a[j - 1]))
            if found is None:
                found = cand
            elif cand != found:
                raise InconsistentField(n, f"step directions disagree (direction {k})")
        polys[n] = found
    return {n: MonicPolynomial(tuple(p)) for n, p in polys.items()}


def neighbor_difference_identity(field: CoefficientField, P: Mapping[MultiIndex, MonicPolynomial],
                                 n, j: int, k: int) -> bool:
    """P_{n+e_k} - P_{n+e_j} == (b_{n,j} - b_{n,k}) P_n, exactly."""
    n = as_index(n)
    c = field[n]
    lhs = poly_sub(list(P[step_up(n, k)].coefficients), list(P[step_up(n, j)].coefficients))
    rhs = poly_scale(list(P[n].coefficients), c.b[j - 1] - c.b[k - 1])
    return lhs == rhs


def type1_recurrence_residuals(table: MomentTable, n, k: int) -> list[list[Fraction]]:
    """Per-weight residuals of the type I recurrence in direction k (all zero when it holds)."""
    sys_ = system_for(table)
    n = as_index(n)
    lower = step_down(n, k)  # BelowLattice when n_k = 0
    q_n = sys_.type1(n)
    q_low = sys_.type1_or_none(lower)
    b = sys_.coefficients(lower).b[k - 1]
    a = sys_.coefficients(n).a
    ups = {i: sys_.type1(step_up(n, i)) for i in range(1, n.r + 1) if a[i - 1] != 0}
    out = []
    for j in range(1, n.r + 1):
        anj = list(q_n.component(j))
        rhs = list(q_low.component(j)) if q_low is not None else []
        rhs = poly_add(rhs, poly_scale(anj, b))
        for i, q_up in ups.items():
            rhs = poly_add(rhs, poly_scale(list(q_up.component(j)), a[i - 1]))
        out.append(poly_sub(poly_shift(anj), rhs))
    return out


def type1_recurrence_check(table: MomentTable, n, k: int) -> bool:
    """x Q_n = Q_{n-e_k} + b_{n-e_k,k} Q_n + sum_j a_{n,j} Q_{n+e_j}, weight by weight.

    Raises :class:`BelowLattice` when n_k = 0 (precondition, not a failure).
    """
    n = as_index(n)
    if n[k - 1] == 0:
        raise BelowLattice(f"type I recurrence in direction {k} needs n_{k} >= 1 at {n}")
    return all(not res for res in type1_recurrence_residuals(table, n, k))


@dataclass(frozen=True)
class CdSides:
    lhs: tuple[BivariatePolynomial, ...]
    rhs: tuple[BivariatePolynomial, ...]

    def holds(self) -> bool:
        return all(bipoly_equal(p, q) for p, q in zip(self.lhs, self.rhs))


def cd_kernel_polys(table: MomentTable, path: LatticePath) -> tuple[BivariatePolynomial, ...]:
    """Per weight j: sum_i P_{n_i}(x) A_{n_{i+1},j}(y)."""
    sys_ = system_for(table)
    pts = path.indices()
    out = []
    for j in range(1, table.r + 1):
        acc = BivariatePolynomial()
        for lo, hi in zip(pts, pts[1:]):
            acc = acc + BivariatePolynomial.outer(sys_.type2(lo).coefficients,
                                                  sys_.type1(hi).component(j))
        out.append(acc)
    return tuple(out)


def cd_rhs_polys(table: MomentTable, n) -> tuple[BivariatePolynomial, ...]:
    """Per weight j: P_n(x) A_{n,j}(y) - sum_k a_{n,k} P_{n-e_k}(x) A_{n+e_k,j}(y)."""
    sys_ = system_for(table)
    n = as_index(n)
    a = sys_.coefficients(n).a
    q_n = sys_.type1_or_none(n)
    p_n = sys_.type2(n).coefficients
    out = []
    for j in range(1, table.r + 1):
        acc = BivariatePolynomial()
        if q_n is not None:
            acc = BivariatePolynomial.outer(p_n, q_n.component(j))
        for k in range(1, n.r + 1):
            if n[k - 1] == 0 or a[k - 1] == 0:
                continue
            term = BivariatePolynomial.outer(sys_.type2(step_down(n, k)).coefficients,
                                             sys_.type1(step_up(n, k)).component(j))
            acc = acc - term * a[k - 1]
        out.append(acc)
    return tuple(out)


def cd_sides(table: MomentTable, n, path: LatticePath) -> CdSides:
    n = as_index(n)
    if path.end != n:
        raise ValueError(f"path ends at {path.end}, not at {n}")
    lhs = tuple(p.times_x_minus_y() for p in cd_kernel_polys(table, path))
    return CdSides(lhs, cd_rhs_polys(table, n))


def cd_identity_check(table: MomentTable, n, path: LatticePath) -> bool:
    return cd_sides(table, n, path).holds()


class WeightEvaluator:
    """Reduced weight densities w_j(y) in double precision.

    Each weight is divided by the same constant as the corresponding moment
    sequence in :mod:`multiop.moments`, so the type I polynomials of a reduced
    table pair with these weights.
    """

    def __init__(self, spec: FamilySpec):
        if spec.family == "custom":
            raise UnsupportedFamily("custom measures have no weight function")
        self.spec = spec.validate()

    def __call__(self, j: int, y: float) -> float:
        spec = self.spec
        fam = spec.family
        y = float(y)
        if fam == "hermite":
            c = float(spec.vector("c")[j - 1])
            return math.exp(-(y - c / 2) ** 2) / math.sqrt(math.pi)
        if fam == "charlier":
            if y < 0 or y != int(y):
                raise DomainError(f"charlier weight lives on 0, 1, 2, ...; got y = {y}")
            a = float(spec.vector("a")[j - 1])
            return math.exp(y * math.log(a) - a - math.lgamma(y + 1))
        if fam == "laguerre1":
            al = float(spec.vector("alpha")[j - 1])
            self._positive_half_line(y, al)
            if y == 0:
                return 0.0 if al > 0 else 1.0 / math.gamma(al + 1)
            return math.exp(al * math.log(y) - y - math.lgamma(al + 1))
        if fam == "laguerre2":
            al = float(spec.scalar("alpha"))
            c = float(spec.vector("c")[j - 1])
            self._positive_half_line(y, al)
            if y == 0:
                return 0.0 if al > 0 else c ** (al + 1) / math.gamma(al + 1)
            return math.exp(al * math.log(y) - c * y + (al + 1) * math.log(c) - math.lgamma(al + 1))
        if fam == "jacobi_pineiro":
            al = float(spec.vector("alpha")[j - 1])
            be = float(spec.scalar("beta"))
            if not 0 <= y <= 1 or (y == 0 and al < 0) or (y == 1 and be < 0):
                raise DomainError(f"jacobi-pineiro weight {j} undefined at y = {y}")
            log_beta = math.lgamma(al + 1) + math.lgamma(be + 1) - math.lgamma(al + be + 2)
            if y == 0:
                return 0.0 if al > 0 else math.exp(-log_beta)
            if y == 1:
                return 0.0 if be > 0 else math.exp(-log_beta)
            return math.exp(al * math.log(y) + be * math.log1p(-y) - log_beta)
        raise UnsupportedFamily(fam)

    def _positive_half_line(self, y, al):
        if y < 0 or (y == 0 and al < 0):
            raise DomainError(f"{self.spec.family} weight undefined at y = {y}")


def cd_kernel_eval(table: MomentTable, spec: FamilySpec, n, path: LatticePath,
                   x: float, y: float, form: str = "sum") -> float:
    """Float value of sum_i P_{n_i}(x) Q_{n_{i+1}}(y).

    ``form="sum"`` evaluates the path sum; ``form="closed"`` uses the
    right-hand side divided by (x - y), falling back to the sum on the
    diagonal.  Polynomial parts are evaluated exactly at the binary values of
    x and y; only the final per-weight totals are rounded.
    """
    n = as_index(n)
    weights = WeightEvaluator(spec)
    wy = [weights(j, y) for j in range(1, table.r + 1)]
    xq, yq = Fraction(x), Fraction(y)
    if form == "closed" and xq != yq:
        polys = cd_rhs_polys(table, n)
        parts = [p.evaluate(xq, yq) / (xq - yq) for p in polys]
    elif form in ("sum", "closed"):
        if path.end != n:
            raise ValueError(f"path ends at {path.end}, not at {n}")
        parts = [p.evaluate(xq, yq) for p in cd_kernel_polys(table, path)]
    else:
        raise ValueError(f"unknown kernel form {form!r}")
    return math.fsum(float(s) * w for s, w in zip(parts, wy))


def default_path(n) -> LatticePath:
    """All steps in direction 1 first, then direction 2, and so on."""
    n = as_index(n)
    return LatticePath(tuple(d + 1 for d, e in enumerate(n.entries) for _ in range(e)), n.r)
