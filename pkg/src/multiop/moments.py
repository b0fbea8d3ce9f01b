"""Reduced moment tables for the classical families and for custom measures.

Each measure is divided by a fixed positive constant so that its moments are
rational for rational parameters and the zeroth moment is 1:

=================  ==============================  ==========================
family             weight                          reduced moment nu_k
=================  ==============================  ==========================
hermite            exp(-x^2 + c x) on R            Gaussian, mean c/2, var 1/2
charlier           a^x / x! on {0, 1, 2, ...}      Touchard polynomial T_k(a)
laguerre1          x^alpha_j exp(-x) on (0, inf)   (alpha_j + 1)_k
laguerre2          x^alpha exp(-c_j x)             (alpha + 1)_k / c_j^k
jacobi_pineiro     x^alpha_j (1 - x)^beta, [0, 1]  (alpha_j+1)_k/(alpha_j+beta+2)_k
=================  ==============================  ==========================

Rescaling a measure leaves the monic type II polynomials and every recurrence
coefficient unchanged.  Type I vectors computed from these tables belong to
the *reduced* measures: component j differs from the unreduced one by the
positive factor used for measure j.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .errors import InvalidParameters, ParseError, RaggedTable, UnsupportedFamily
from .exact import format_rational, parse_rational

FAMILIES = ("hermite", "charlier", "laguerre1", "laguerre2", "jacobi_pineiro")

# parameter names per family; vector parameters have one entry per measure
FAMILY_PARAMS = {
    "hermite": {"c": "vector"},
    "charlier": {"a": "vector"},
    "laguerre1": {"alpha": "vector"},
    "laguerre2": {"alpha": "scalar", "c": "vector"},
    "jacobi_pineiro": {"alpha": "vector", "beta": "scalar"},
}


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("-", "_")
    if key in ("jacobi_pineiro", "jacobipineiro", "jp"):
        return "jacobi_pineiro"
    if key in FAMILIES or key == "custom":
        return key
    raise UnsupportedFamily(f"unknown family {name!r}")


@dataclass(frozen=True)
class FamilySpec:
    """A classical family with its parameters (all stored as tuples)."""

    family: str
    params: Mapping[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        fam = normalize_family(self.family)
        object.__setattr__(self, "family", fam)
        clean = {}
        for k, v in dict(self.params).items():
            if isinstance(v, (list, tuple)):
                clean[k] = tuple(parse_rational(x) for x in v)
            else:
                clean[k] = (parse_rational(v),)
        object.__setattr__(self, "params", clean)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.params.items()))))

    @classmethod
    def hermite(cls, c):
        return cls("hermite", {"c": tuple(c)})

    @classmethod
    def charlier(cls, a):
        return cls("charlier", {"a": tuple(a)})

    @classmethod
    def laguerre1(cls, alpha):
        return cls("laguerre1", {"alpha": tuple(alpha)})

    @classmethod
    def laguerre2(cls, alpha, c):
        return cls("laguerre2", {"alpha": (alpha,), "c": tuple(c)})

    @classmethod
    def jacobi_pineiro(cls, alpha, beta):
        return cls("jacobi_pineiro", {"alpha": tuple(alpha), "beta": (beta,)})

    def vector(self, name: str) -> tuple[Fraction, ...]:
        try:
            return self.params[name]
        except KeyError:
            raise InvalidParameters(f"{self.family}: missing parameter {name!r}") from None

    def scalar(self, name: str) -> Fraction:
        v = self.vector(name)
        if len(v) != 1:
            raise InvalidParameters(f"{self.family}: {name} must be a single value")
        return v[0]

    @property
    def r(self) -> int:
        if self.family not in FAMILY_PARAMS:
            raise UnsupportedFamily(f"family {self.family!r} has no parameter layout")
        for name, kind in FAMILY_PARAMS[self.family].items():
            if kind == "vector":
                return len(self.vector(name))
        raise AssertionError("every family has a vector parameter")

    def validate(self) -> "FamilySpec":
        fam = self.family
        if fam == "custom":
            raise UnsupportedFamily("custom measures have no parameters to validate")
        expected = FAMILY_PARAMS[fam]
        unknown = set(self.params) - set(expected)
        if unknown:
            raise InvalidParameters(f"{fam}: unknown parameters {sorted(unknown)}")
        for name, kind in expected.items():
            v = self.vector(name)
            if kind == "scalar" and len(v) != 1:
                raise InvalidParameters(f"{fam}: {name} must be a single value")
            if kind == "vector" and not v:
                raise InvalidParameters(f"{fam}: {name} needs at least one value")

        def distinct(name):
            v = self.vector(name)
            if len(set(v)) != len(v):
                raise InvalidParameters(f"{fam}: {name}_i != {name}_j required for i != j")

        def non_integer_gaps(name):
            v = self.vector(name)
            for i in range(len(v)):
                for j in range(i + 1, len(v)):
                    if (v[i] - v[j]).denominator == 1:
                        raise InvalidParameters(
                            f"{fam}: {name}_{i + 1} - {name}_{j + 1} must not be an integer"
                        )

        def greater(name, bound):
            for k, x in enumerate(self.vector(name)):
                if not x > bound:
                    raise InvalidParameters(f"{fam}: {name}_{k + 1} > {bound} required, got {x}")

        if fam == "hermite":
            distinct("c")
        elif fam == "charlier":
            greater("a", 0)
            distinct("a")
        elif fam == "laguerre1":
            greater("alpha", -1)
            non_integer_gaps("alpha")
        elif fam == "laguerre2":
            greater("alpha", -1)
            greater("c", 0)
            distinct("c")
        elif fam == "jacobi_pineiro":
            greater("alpha", -1)
            greater("beta", -1)
            non_integer_gaps("alpha")
        return self

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": {k: [format_rational(x) for x in v] for k, v in sorted(self.params.items())},
        }


@dataclass(frozen=True, eq=False)
class MomentTable:
    """Moments ``moments[j][k]`` of measure j+1, for k = 0..max_degree.

    Compared by identity so that it can key per-table caches cheaply.
    """

    moments: tuple[tuple[Fraction, ...], ...]
    spec: FamilySpec | None = None

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.moments)
        if not rows:
            raise ParseError("a moment table needs at least one measure")
        if len({len(row) for row in rows}) != 1:
            raise RaggedTable(f"measure rows have lengths {[len(row) for row in rows]}")
        if not rows[0]:
            raise ParseError("moment rows must not be empty")
        object.__setattr__(self, "moments", rows)

    @property
    def r(self) -> int:
        return len(self.moments)

    @property
    def max_degree(self) -> int:
        return len(self.moments[0]) - 1

    def nu(self, j: int, k: int) -> Fraction:
        """k-th moment of measure j (j is 1-based)."""
        return self.moments[j - 1][k]

    def same_values(self, other: "MomentTable") -> bool:
        return self.moments == other.moments

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "max_degree": self.max_degree,
            "moments": [[format_rational(x) for x in row] for row in self.moments],
        }


def _pochhammer_ratio_seq(num_start, den_start, scale, count):
    """(num_start)_k / ((den_start)_k * scale**k) for k < count."""
    out = [Fraction(1)]
    for k in range(count - 1):
        out.append(out[-1] * (num_start + k) / ((den_start + k) * scale))
    return out


def hermite_moments(c, count):
    seq = [Fraction(1)]
    if count > 1:
        seq.append(Fraction(c) / 2)
    for k in range(1, count - 1):
        seq.append(Fraction(c) / 2 * seq[k] + Fraction(k, 2) * seq[k - 1])
    return seq[:count]


def touchard(a, count):
    seq = [Fraction(1)]
    for ell in range(count - 1):
        seq.append(Fraction(a) * sum(comb(ell, i) * seq[i] for i in range(ell + 1)))
    return seq


def build_moments(spec: FamilySpec, max_degree: int) -> MomentTable:
    if max_degree < 0:
        raise InvalidParameters("max_degree must be >= 0")
    spec.validate()
    n = max_degree + 1
    fam = spec.family
    if fam == "hermite":
        rows = [hermite_moments(c, n) for c in spec.vector("c")]
    elif fam == "charlier":
        rows = [touchard(a, n) for a in spec.vector("a")]
    elif fam == "laguerre1":
        rows = [_rising_seq(al + 1, n) for al in spec.vector("alpha")]
    elif fam == "laguerre2":
        al = spec.scalar("alpha")
        rows = [[p / c**k for k, p in enumerate(_rising_seq(al + 1, n))] for c in spec.vector("c")]
    elif fam == "jacobi_pineiro":
        be = spec.scalar("beta")
        rows = [_pochhammer_ratio_seq(al + 1, al + be + 2, 1, n) for al in spec.vector("alpha")]
    else:
        raise UnsupportedFamily(f"no built-in moments for {fam!r}")
    return MomentTable(tuple(tuple(r) for r in rows), spec)


def _rising_seq(start, count):
    out = [Fraction(1)]
    for k in range(count - 1):
        out.append(out[-1] * (start + k))
    return out


def table_from_json(data, source: str = "<data>") -> MomentTable:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("r", "max_degree", "moments"):
        if key not in data:
            raise ParseError(f"{source}: missing field {key!r}")
    r, max_degree, rows = data["r"], data["max_degree"], data["moments"]
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ParseError(f"{source}: field 'r' must be a positive integer")
    if not isinstance(max_degree, int) or isinstance(max_degree, bool) or max_degree < 0:
        raise ParseError(f"{source}: field 'max_degree' must be a non-negative integer")
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError(f"{source}: field 'moments' must be an array of arrays")
    if len(rows) != r:
        raise ParseError(f"{source}: 'moments' has {len(rows)} rows but r = {r}")
    if len({len(row) for row in rows}) > 1:
        raise RaggedTable(f"{source}: moment rows have lengths {[len(row) for row in rows]}")
    parsed = []
    for j, row in enumerate(rows):
        if len(row) != max_degree + 1:
            raise ParseError(
                f"{source}: moments[{j}] has {len(row)} entries, expected max_degree+1 = {max_degree + 1}"
            )
        out = []
        for k, entry in enumerate(row):
            try:
                out.append(parse_rational(entry))
            except ValueError as exc:
                raise ParseError(f"{source}: moments[{j}][{k}]: {exc}") from None
        parsed.append(tuple(out))
    return MomentTable(tuple(parsed))


def ingest_custom(path) -> MomentTable:
    """Load a custom-moment JSON file verbatim (no normalization)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return table_from_json(data, str(path))
