"""Exact scalars, dense rational matrices and polynomials over Q.

Rationals are :class:`fractions.Fraction` (always in lowest terms, positive
denominator).  Determinants and linear solves clear the denominators of each
row and hand an integer matrix to the fraction-free kernel in
:mod:`multiop._kernels`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _kernels
from .errors import DimensionMismatch, SingularMatrix

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Decimal and float notation is rejected so that no value is silently
    rounded.  Raises ``ValueError`` on malformed input or a zero denominator.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` when q = 1."""
    return str(Fraction(q))


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        d = v.denominator
        if d != 1:
            out = out * d // math.gcd(out, d)
    return out


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("rows of unequal length")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def with_row(self, i: int, values: Sequence) -> "RationalMatrix":
        rows = self.to_rows()
        if len(values) != self.cols:
            raise DimensionMismatch("replacement row has wrong length")
        rows[i] = list(values)
        return RationalMatrix.from_rows(rows, self.cols)

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match matrix")
        return [sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def _integer_rows(rows: Sequence[Sequence[Fraction]]):
    """Scale each row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for r in rows:
        lcm = _lcm_denominators(r)
        scales.append(lcm)
        out.append([int(v.numerator * (lcm // v.denominator)) for v in r])
    return out, scales


def determinant(m: RationalMatrix) -> Fraction:
    if not m.is_square:
        raise DimensionMismatch(f"determinant of a {m.rows}x{m.cols} matrix")
    int_rows, scales = _integer_rows(m.to_rows())
    d = _kernels.det_int(int_rows)
    return Fraction(d, math.prod(scales))


def solve(m: RationalMatrix, rhs: Sequence) -> list[Fraction]:
    """Exact solution of ``m x = rhs``; raises SingularMatrix."""
    if not m.is_square:
        raise DimensionMismatch(f"cannot solve with a {m.rows}x{m.cols} matrix")
    if len(rhs) != m.rows:
        raise DimensionMismatch("right-hand side length does not match matrix")
    aug = [list(r) + [Fraction(b)] for r, b in zip(m.to_rows(), rhs)]
    int_rows, _ = _integer_rows(aug)
    res = _kernels.solve_int([r[:-1] for r in int_rows], [r[-1] for r in int_rows])
    if res is None or res[1] == 0:
        raise SingularMatrix(f"singular {m.rows}x{m.cols} matrix")
    scaled, d = res
    return [Fraction(x, d) for x in scaled]


# -- univariate polynomials: coefficient lists, lowest degree first ----------

def poly_trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim(
        [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    )


def poly_scale(p, c):
    return poly_trim([c * v for v in p])


def poly_sub(p, q):
    return poly_add(p, poly_scale(q, -1))


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_shift(p, k=1):
    """Multiply by x**k."""
    return [Fraction(0)] * k + list(p) if p else []


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_from_roots(roots):
    out = [Fraction(1)]
    for r in roots:
        out = poly_mul(out, [-Fraction(r), Fraction(1)])
    return out


def poly_derivative(p):
    return poly_trim([k * p[k] for k in range(1, len(p))])


# -- bivariate polynomials ----------------------------------------------------

class BivariatePolynomial:
    """Sparse polynomial in (x, y) with exact coefficients.

    ``terms`` maps ``(deg_x, deg_y)`` to a nonzero Fraction.  Zero
    coefficients are pruned on construction, so equality of the mappings is
    equality of polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {
            (int(i), int(j)): Fraction(c) for (i, j), c in (terms or {}).items() if c != 0
        }

    @classmethod
    def outer(cls, px: Sequence, qy: Sequence) -> "BivariatePolynomial":
        """The product p(x) q(y) of two univariate coefficient lists."""
        return cls({(i, j): a * b for i, a in enumerate(px) if a for j, b in enumerate(qy) if b})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __neg__(self):
        return BivariatePolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivariatePolynomial):
            c = Fraction(other)
            return BivariatePolynomial({k: c * v for k, v in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def times_x_minus_y(self) -> "BivariatePolynomial":
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            out[(i + 1, j)] = out.get((i + 1, j), 0) + c
            out[(i, j + 1)] = out.get((i, j + 1), 0) - c
        return BivariatePolynomial(out)

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def evaluate(self, x, y):
        return sum((c * x**i * y**j for (i, j), c in self.terms.items()), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        body = " + ".join(f"({c})x^{i}y^{j}" for (i, j), c in sorted(self.terms.items()))
        return f"BivariatePolynomial({body or '0'})"


def bipoly_equal(p: BivariatePolynomial, q: BivariatePolynomial) -> bool:
    return p.terms == q.terms
