"""Type II / type I multiple orthogonal polynomials from moment tables.

Everything here is the moment-driven route: mixed moment matrices, exact
linear solves, and the nearest-neighbour recurrence coefficients obtained
from ratios of moment sums.  Integrals against a measure are finite sums of
polynomial coefficients times moments, never quadrature.

The functions take a :class:`~multiop.moments.MomentTable` and share a
per-table memo (:class:`MopSystem`) so that repeated calls over a lattice box
reuse earlier solves.
"""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    EmptyIndex,
    InsufficientDepth,
    NonNormalIndex,
    NotBivariate,
    SingularMatrix,
)
from .exact import (
    RationalMatrix,
    determinant,
    format_rational,
    poly_mul,
    poly_shift,
    solve,
)
from .lattice import MultiIndex, as_index, step_down, step_up
from .moments import MomentTable

_ZERO = Fraction(0)


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial, coefficients lowest degree first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("a monic polynomial needs leading coefficient 1")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def subleading(self) -> Fraction:
        """Coefficient of x^(deg-1); 0 for the constant polynomial."""
        return self.coefficients[-2] if self.degree >= 1 else _ZERO

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]


@dataclass(frozen=True)
class TypeOneVector:
    """Polynomials A_1..A_r; ``polys[j]`` has at most n_{j+1} coefficients."""

    polys: tuple[tuple[Fraction, ...], ...]

    @property
    def r(self) -> int:
        return len(self.polys)

    def component(self, j: int) -> tuple[Fraction, ...]:
        """A_j as a coefficient tuple (j is 1-based)."""
        return self.polys[j - 1]

    def to_json(self) -> list[list[str]]:
        return [[format_rational(c) for c in p] for p in self.polys]


@dataclass(frozen=True)
class NnCoefficients:
    """Recurrence coefficients (a_{n,1..r}, b_{n,1..r}) at one index.

    For r = 2 the usual bivariate names are a_{n,m} = a[0], b_{n,m} = a[1],
    c_{n,m} = b[0], d_{n,m} = b[1].
    """

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")

    @property
    def r(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {"a": [format_rational(x) for x in self.a], "b": [format_rational(x) for x in self.b]}


@dataclass(frozen=True)
class DeterminantCoefficients:
    coefficients: NnCoefficients
    d_minus_c: Fraction


def matrix_depth(n: MultiIndex) -> int:
    """Highest moment degree touched by M_n and by the type II right-hand side."""
    if n.size() == 0:
        return -1
    return n.size() + max(n.entries) - 1


def coefficient_depth(n: MultiIndex) -> int:
    """Moment degree needed for the recurrence coefficients at ``n``."""
    return n.size() + max(n.entries) + 1


def box_depth(limits: Sequence[int], ring: int = 2) -> int:
    """A moment degree that is enough for every check over a box plus ``ring`` layers."""
    return 2 * sum(m + ring for m in limits) + 1


class MopSystem:
    """Memoized solver bound to one moment table.

    Reads are lock-free; writes go through a lock and never replace an
    existing entry, so results are independent of thread interleaving.
    """

    def __init__(self, table: MomentTable):
        self.table = table
        self._lock = threading.Lock()
        self._type2: dict[MultiIndex, MonicPolynomial] = {}
        self._type1: dict[MultiIndex, TypeOneVector] = {}
        self._det: dict[MultiIndex, Fraction] = {}
        self._coef: dict[MultiIndex, NnCoefficients] = {}

    @property
    def r(self) -> int:
        return self.table.r

    def _store(self, cache, key, value):
        with self._lock:
            return cache.setdefault(key, value)

    def _index(self, n) -> MultiIndex:
        n = as_index(n)
        if n.r != self.r:
            raise ValueError(f"index {n} has {n.r} entries, table has r = {self.r}")
        return n

    def require_depth(self, degree: int):
        if degree > self.table.max_degree:
            raise InsufficientDepth(degree, self.table.max_degree)

    # -- integrals as moment sums ---------------------------------------------

    def integrate(self, poly: Sequence[Fraction], j: int) -> Fraction:
        """The integral of ``poly`` against measure j (1-based)."""
        if not poly:
            return _ZERO
        self.require_depth(len(poly) - 1)
        row = self.table.moments[j - 1]
        return sum((c * row[k] for k, c in enumerate(poly) if c), _ZERO)

    def pair(self, poly: Sequence[Fraction], q: TypeOneVector | None) -> Fraction:
        """The integral of poly * Q against mu = sum of the measures."""
        if q is None:
            return _ZERO
        return sum((self.integrate(poly_mul(list(poly), list(a)), j)
                    for j, a in enumerate(q.polys, start=1)), _ZERO)

    # -- matrices --------------------------------------------------------------

    def moment_matrix(self, n) -> RationalMatrix:
        n = self._index(n)
        size = n.size()
        self.require_depth(matrix_depth(n))
        cols = []
        for j, nj in enumerate(n.entries):
            row = self.table.moments[j]
            for i in range(nj):
                cols.append(row[i:i + size])
        return RationalMatrix.from_rows(
            [[col[ell] for col in cols] for ell in range(size)], size
        )

    def det(self, n) -> Fraction:
        n = self._index(n)
        hit = self._det.get(n)
        if hit is not None:
            return hit
        return self._store(self._det, n, determinant(self.moment_matrix(n)))

    def hat_matrix(self, n) -> RationalMatrix:
        """M_n with its last row replaced by the moments of row |n|."""
        n = self._index(n)
        size = n.size()
        m = self.moment_matrix(n)
        if size == 0:
            return m
        self.require_depth(size + max(n.entries) - 1 + 1)
        last = []
        for j, nj in enumerate(n.entries):
            row = self.table.moments[j]
            last.extend(row[size + i] for i in range(nj))
        return m.with_row(size - 1, last)

    # -- polynomials -----------------------------------------------------------

    def type2(self, n) -> MonicPolynomial:
        n = self._index(n)
        hit = self._type2.get(n)
        if hit is not None:
            return hit
        size = n.size()
        if size == 0:
            return self._store(self._type2, n, MonicPolynomial((Fraction(1),)))
        m = self.moment_matrix(n)
        rhs = []
        for j, nj in enumerate(n.entries):
            row = self.table.moments[j]
            rhs.extend(-row[size + ell] for ell in range(nj))
        try:
            low = solve(m.transpose(), rhs)
        except SingularMatrix:
            raise NonNormalIndex(n, "singular moment matrix") from None
        return self._store(self._type2, n, MonicPolynomial(tuple(low) + (Fraction(1),)))

    def type1(self, n) -> TypeOneVector:
        n = self._index(n)
        hit = self._type1.get(n)
        if hit is not None:
            return hit
        size = n.size()
        if size == 0:
            raise EmptyIndex("the type I vector of the zero index does not exist (Q_0 = 0)")
        rhs = [_ZERO] * (size - 1) + [Fraction(1)]
        try:
            sol = solve(self.moment_matrix(n), rhs)
        except SingularMatrix:
            raise NonNormalIndex(n, "singular moment matrix") from None
        polys, pos = [], 0
        for nj in n.entries:
            polys.append(tuple(sol[pos:pos + nj]))
            pos += nj
        return self._store(self._type1, n, TypeOneVector(tuple(polys)))

    def type1_or_none(self, n) -> TypeOneVector | None:
        """Like :meth:`type1` but maps the zero index to ``None`` (Q_0 = 0)."""
        n = self._index(n)
        return None if n.is_zero() else self.type1(n)

    # -- recurrence coefficients -----------------------------------------------

    def coefficients(self, n) -> NnCoefficients:
        n = self._index(n)
        hit = self._coef.get(n)
        if hit is not None:
            return hit
        self.require_depth(coefficient_depth(n))
        p = list(self.type2(n).coefficients)
        delta = self.type2(n).subleading()
        a, b = [], []
        for j in range(1, self.r + 1):
            nj = n[j - 1]
            if nj == 0:
                a.append(_ZERO)
            else:
                lower = step_down(n, j)
                q = list(self.type2(lower).coefficients)
                den = self.integrate(poly_shift(q, nj - 1), j)
                if den == 0:
                    raise NonNormalIndex(lower, f"vanishing integral against measure {j}")
                a.append(self.integrate(poly_shift(p, nj), j) / den)
            b.append(delta - self.type2(step_up(n, j)).subleading())
        return self._store(self._coef, n, NnCoefficients(tuple(a), tuple(b)))

    def b_by_pairing(self, n, j: int) -> Fraction:
        """b_{n,j} as the integral of x P_n Q_{n+e_j} against mu."""
        n = self._index(n)
        xp = poly_shift(list(self.type2(n).coefficients), 1)
        return self.pair(xp, self.type1(step_up(n, j)))

    def pairing(self, n, m) -> Fraction:
        """The integral of P_n Q_m against mu."""
        n, m = self._index(n), self._index(m)
        return self.pair(list(self.type2(n).coefficients), self.type1_or_none(m))

    def second_coefficient(self, n) -> Fraction:
        """A_{1,1}(n) = -det(M-hat_n) / det(M_n)."""
        n = self._index(n)
        if n.size() == 0:
            return _ZERO
        d = self.det(n)
        if d == 0:
            raise NonNormalIndex(n, "det M_n = 0")
        return -determinant(self.hat_matrix(n)) / d

    def determinant_coefficients(self, n) -> DeterminantCoefficients:
        n = self._index(n)
        if self.r != 2:
            raise NotBivariate(f"determinant formulas need r = 2, table has r = {self.r}")
        nn, mm = n.entries

        def D(i, k):
            return self.det(MultiIndex((i, k)))

        d0 = D(nn, mm)
        if d0 == 0:
            raise NonNormalIndex(n, "det M_{n,m} = 0")
        a1 = D(nn + 1, mm) * D(nn - 1, mm) / d0**2 if nn > 0 else _ZERO
        a2 = D(nn, mm + 1) * D(nn, mm - 1) / d0**2 if mm > 0 else _ZERO
        a11 = self.second_coefficient(n)
        c = a11 - self.second_coefficient(MultiIndex((nn + 1, mm)))
        d = a11 - self.second_coefficient(MultiIndex((nn, mm + 1)))
        den = D(nn + 1, mm) * D(nn, mm + 1)
        if den == 0:
            raise NonNormalIndex(n, "det M_{n+1,m} det M_{n,m+1} = 0")
        d_minus_c = d0 * D(nn + 1, mm + 1) / den
        return DeterminantCoefficients(NnCoefficients((a1, a2), (c, d)), d_minus_c)


_SYSTEMS: "weakref.WeakKeyDictionary[MomentTable, MopSystem]" = weakref.WeakKeyDictionary()
_SYSTEMS_LOCK = threading.Lock()


def system_for(table: MomentTable) -> MopSystem:
    sys_ = _SYSTEMS.get(table)
    if sys_ is None:
        with _SYSTEMS_LOCK:
            sys_ = _SYSTEMS.setdefault(table, MopSystem(table))
    return sys_


def moment_matrix(table: MomentTable, n) -> RationalMatrix:
    return system_for(table).moment_matrix(n)


def type2_polynomial(table: MomentTable, n) -> MonicPolynomial:
    return system_for(table).type2(n)


def type1_vector(table: MomentTable, n) -> TypeOneVector:
    return system_for(table).type1(n)


def oracle_coefficients(table: MomentTable, n) -> NnCoefficients:
    return system_for(table).coefficients(n)


def determinant_coefficients_r2(table: MomentTable, n) -> DeterminantCoefficients:
    return system_for(table).determinant_coefficients(n)


def second_coefficient_matrix(table: MomentTable, n) -> Fraction:
    return system_for(table).second_coefficient(n)


def biorthogonal_pairing(table: MomentTable, n, m) -> Fraction:
    return system_for(table).pairing(n, m)


def b_from_pairing(table: MomentTable, n, j: int) -> Fraction:
    return system_for(table).b_by_pairing(n, j)
