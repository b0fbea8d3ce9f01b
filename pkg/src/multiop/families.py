"""Closed-form recurrence coefficients and identities of the classical families.

The identities (Laguerre I sum rule, the two Jacobi-Pineiro delta forms, the
Jacobi-Pineiro sum rule, the residue sum) are total functions returning the
right-hand side; comparing them with other routes is left to
:mod:`multiop.verify`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .core import NnCoefficients
from .errors import EvaluationPole, InvalidParameters, UnsupportedFamily
from .exact import poly_derivative, poly_eval, poly_from_roots
from .lattice import MultiIndex, as_index, step_up
from .moments import FamilySpec


@dataclass(frozen=True)
class AuxPolynomials:
    """q_r(x) = prod (x - alpha_j) and Q_{r,n}(x) = prod (x - n_j - alpha_j)."""

    q: tuple[Fraction, ...]
    Q: tuple[Fraction, ...]
    roots: tuple[Fraction, ...]

    @classmethod
    def build(cls, alpha, n: MultiIndex) -> "AuxPolynomials":
        roots = tuple(nj + a for nj, a in zip(n.entries, alpha))
        return cls(tuple(poly_from_roots(alpha)), tuple(poly_from_roots(roots)), roots)

    def q_at(self, x) -> Fraction:
        return poly_eval(self.q, x)

    def Q_at(self, x) -> Fraction:
        return poly_eval(self.Q, x)

    def dQ_at(self, x) -> Fraction:
        return poly_eval(poly_derivative(list(self.Q)), x)

    def ratio(self, x) -> Fraction:
        """q_r(x) / Q_{r,n}(x); raises EvaluationPole at a root of Q."""
        den = self.Q_at(x)
        if den == 0:
            raise EvaluationPole(f"q/Q evaluated at a root of Q_r,n: x = {x}")
        return self.q_at(x) / den

    def residues(self) -> list[Fraction]:
        """q_r / Q'_{r,n} at each root n_j + alpha_j."""
        out = []
        for x in self.roots:
            d = self.dQ_at(x)
            if d == 0:
                raise InvalidParameters("repeated root in Q_r,n (alpha_i - alpha_j is an integer)")
            out.append(self.q_at(x) / d)
        return out


def _spec_index(spec: FamilySpec, n) -> MultiIndex:
    if spec.family == "custom":
        raise UnsupportedFamily("closed forms exist only for the built-in families")
    spec.validate()
    n = as_index(n)
    if n.r != spec.r:
        raise InvalidParameters(f"index {n} has {n.r} entries but the family has r = {spec.r}")
    return n


def _require(spec: FamilySpec, *families: str):
    if spec.family not in families:
        raise InvalidParameters(f"expected family in {families}, got {spec.family!r}")


def _cross_ratio(alpha, n: MultiIndex, j: int) -> Fraction:
    """prod_{i != j} (n_j + alpha_j - alpha_i) / (n_j - n_i + alpha_j - alpha_i), j 0-based."""
    out = Fraction(1)
    nj, aj = n[j], alpha[j]
    for i, (ni, ai) in enumerate(zip(n.entries, alpha)):
        if i == j:
            continue
        den = nj - ni + aj - ai
        if den == 0:
            raise InvalidParameters("n_j - n_i + alpha_j - alpha_i vanishes")
        out *= (nj + aj - ai) / den
    return out


def _jp_a(spec: FamilySpec, n: MultiIndex) -> tuple[Fraction, ...]:
    alpha, beta = spec.vector("alpha"), spec.scalar("beta")
    size = n.size()
    common = prod(((size + ai + beta) / (size + ni + ai + beta)
                   for ni, ai in zip(n.entries, alpha)), start=Fraction(1))
    out = []
    for j, (nj, aj) in enumerate(zip(n.entries, alpha)):
        if nj == 0:
            out.append(Fraction(0))
            continue
        s = size + nj + aj + beta
        out.append(_cross_ratio(alpha, n, j) * common
                   * nj * (nj + aj) * (size + beta) / ((s + 1) * s * (s - 1)))
    return tuple(out)


def jp_delta(spec: FamilySpec, n) -> Fraction:
    """Subleading coefficient of the Jacobi-Pineiro polynomial at ``n``."""
    n = _spec_index(spec, n)
    _require(spec, "jacobi_pineiro")
    beta = spec.scalar("beta")
    aux = AuxPolynomials.build(spec.vector("alpha"), n)
    z = -n.size() - beta
    return -(n.size() + beta) * aux.ratio(z) + beta


def jp_delta_partial_fraction(spec: FamilySpec, n) -> Fraction:
    """The same quantity as :func:`jp_delta`, from the partial-fraction expansion."""
    n = _spec_index(spec, n)
    _require(spec, "jacobi_pineiro")
    beta = spec.scalar("beta")
    aux = AuxPolynomials.build(spec.vector("alpha"), n)
    size = n.size()
    return -sum((x * res / (size + x + beta) for x, res in zip(aux.roots, aux.residues())),
                Fraction(0))


def closed_form_coefficients(spec: FamilySpec, n) -> NnCoefficients:
    n = _spec_index(spec, n)
    fam = spec.family
    size = n.size()
    r = n.r
    if fam == "hermite":
        c = spec.vector("c")
        return NnCoefficients(tuple(Fraction(nj, 2) for nj in n), tuple(cj / 2 for cj in c))
    if fam == "charlier":
        a = spec.vector("a")
        return NnCoefficients(tuple(nj * aj for nj, aj in zip(n, a)), tuple(size + aj for aj in a))
    if fam == "laguerre1":
        alpha = spec.vector("alpha")
        a = tuple(
            Fraction(0) if n[j] == 0 else n[j] * (n[j] + alpha[j]) * _cross_ratio(alpha, n, j)
            for j in range(r)
        )
        b = tuple(size + n[k] + alpha[k] + 1 for k in range(r))
        return NnCoefficients(a, b)
    if fam == "laguerre2":
        alpha, c = spec.scalar("alpha"), spec.vector("c")
        shift = sum((nj / cj for nj, cj in zip(n, c)), Fraction(0))
        a = tuple((size + alpha) * nj / cj**2 for nj, cj in zip(n, c))
        b = tuple((size + alpha + 1) / ck + shift for ck in c)
        return NnCoefficients(a, b)
    if fam == "jacobi_pineiro":
        delta = jp_delta(spec, n)
        b = tuple(delta - jp_delta(spec, step_up(n, k)) for k in range(1, r + 1))
        return NnCoefficients(_jp_a(spec, n), b)
    raise UnsupportedFamily(f"no closed form for {fam!r}")


def laguerre1_sum_identity(spec: FamilySpec, n) -> Fraction:
    """sum_j n_j alpha_j + (|n|^2 + sum_j n_j^2) / 2."""
    n = _spec_index(spec, n)
    _require(spec, "laguerre1")
    alpha = spec.vector("alpha")
    size = n.size()
    return (sum((nj * aj for nj, aj in zip(n, alpha)), Fraction(0))
            + Fraction(size**2 + sum(nj**2 for nj in n), 2))


def jp_sum_identity(spec: FamilySpec, n) -> Fraction:
    """Closed form of sum_j a_{n,j} for Jacobi-Pineiro.

    (|n| + beta) R(z0) * (-1/2) * second difference of z R(z) at z0, with
    R = q_r / Q_{r,n} and z0 = -|n| - beta.
    """
    n = _spec_index(spec, n)
    _require(spec, "jacobi_pineiro")
    beta = spec.scalar("beta")
    aux = AuxPolynomials.build(spec.vector("alpha"), n)
    s = n.size() + beta
    z = -s

    def g(t):
        return t * aux.ratio(t)

    bracket = -Fraction(1, 2) * (g(z + 1) - 2 * g(z) + g(z - 1))
    return s * aux.ratio(z) * bracket


def residue_sum(spec: FamilySpec, n) -> Fraction:
    """sum_j q_r(n_j + alpha_j) / Q'_{r,n}(n_j + alpha_j); equals |n|."""
    n = _spec_index(spec, n)
    _require(spec, "laguerre1", "jacobi_pineiro")
    aux = AuxPolynomials.build(spec.vector("alpha"), n)
    return sum(aux.residues(), Fraction(0))


def laguerre1_a_residue_form(spec: FamilySpec, n) -> tuple[Fraction, ...]:
    """a_{n,j} = (n_j + alpha_j) q_r(n_j + alpha_j) / Q'_{r,n}(n_j + alpha_j)."""
    n = _spec_index(spec, n)
    _require(spec, "laguerre1")
    aux = AuxPolynomials.build(spec.vector("alpha"), n)
    return tuple(x * res for x, res in zip(aux.roots, aux.residues()))
