"""The Hecke polynomial of a minuscule coweight and its matrix checks.

For a minuscule mu with weight list lam_1..lam_d, the attached monic
degree-d polynomial has Satake-coordinate coefficients

    coefficient of X^{d-i}  =  (-1)^i * v^{i*t} * tr wedge^i

where t is the twist exponent and tr wedge^i is the exterior-power
character of the weight list.  Evaluating the coefficients at a Satake
parameter s gives exactly det(X - M) for the diagonal Frobenius matrix
M at s, which is how every identity here is tested.

The verification operations are exact matrix identities:

* ``cayley_hamilton_check``: the evaluated polynomial annihilates M
  (the residual matrix must vanish identically);
* ``inertia_relation_check``: the degenerate binomial relation
  sum_i (-1)^i C(d,i) M^i = (I - M)^d, with (M - I)^d = 0 reported for
  unipotent M.

Reports render every scalar exactly; pass means the residual is the
zero matrix, never "small".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from .errors import ValidationError
from .laurent import LaurentHalf, RationalWithV, ScalarDomain, PrimeFieldWithV
from .characters import SymmetricFunction, ext_power_character, minuscule_weights
from .root_data import BasedRootDatum, Coweight
from .satake import (FrobeniusMatrix, SatakeParameter, evaluate,
                     frobenius_matrix, resolve_twist, trace_of)


# -- small exact matrix kit --------------------------------------------------

def mat_identity(dom: ScalarDomain, n: int) -> list[list]:
    return [[dom.one() if i == j else dom.zero() for j in range(n)]
            for i in range(n)]

def mat_add(dom: ScalarDomain, a, b) -> list[list]:
    return [[dom.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(dom: ScalarDomain, a, b) -> list[list]:
    return [[dom.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_scale(dom: ScalarDomain, c, a) -> list[list]:
    return [[dom.mul(c, x) for x in row] for row in a]

def mat_mul(dom: ScalarDomain, a, b) -> list[list]:
    n = len(a)
    m = len(b[0])
    k = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = dom.zero()
            for t in range(k):
                acc = dom.add(acc, dom.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out

def mat_pow(dom: ScalarDomain, a, k: int) -> list[list]:
    out = mat_identity(dom, len(a))
    for _ in range(k):
        out = mat_mul(dom, out, a)
    return out

def mat_is_zero(dom: ScalarDomain, a) -> bool:
    return all(dom.is_zero(x) for row in a for x in row)

def mat_determinant(dom: ScalarDomain, a) -> Any:
    """Division-free determinant by DP over column subsets."""
    n = len(a)
    prev = {frozenset(): dom.one()}
    for r in range(n):
        cur: dict[frozenset, Any] = {}
        for cols, val in prev.items():
            for j in range(n):
                if j in cols:
                    continue
                pos = sum(1 for c in cols if c < j)
                term = dom.mul(val, a[r][j])
                if (r + pos) % 2:
                    term = dom.neg(term)
                key = cols | {j}
                cur[key] = dom.add(cur.get(key, dom.zero()), term)
        prev = cur
    return prev[frozenset(range(n))]

def mat_strings(dom: ScalarDomain, a) -> list[list[str]]:
    return [[dom.scalar_str(x) for x in row] for row in a]


# -- the polynomial ----------------------------------------------------------

@dataclass
class HeckePolynomial:
    """Monic degree-d polynomial with spherical coefficients.

    coefficients[i] is the coefficient of X^{d-i}; coefficients[0] is
    the constant function 1.  ``coeff_domain`` is None for the generic
    integral form and a PrimeFieldWithV after mod-ell reduction.
    """

    datum: BasedRootDatum
    mu: Coweight
    degree: int
    coefficients: list[SymmetricFunction]
    twist_exponent: int
    twist_preset: str | None = None
    e_over_f: int = 1
    coeff_domain: ScalarDomain | None = None

    def to_json(self) -> dict:
        twist = {"preset": self.twist_preset, "exponent": self.twist_exponent}
        out = {
            "group": {"family": self.datum.family, "rank": self.datum.rank},
            "mu": list(self.mu),
            "twist": twist,
            "e_over_f": self.e_over_f,
            "degree": self.degree,
            "coefficients": [c.to_json() for c in self.coefficients],
        }
        if self.coeff_domain is not None:
            out["coefficient_domain"] = self.coeff_domain.to_json()
        return out


def hecke_polynomial(datum: BasedRootDatum, mu: Coweight, twist="paper",
                     e_over_f: int = 1) -> HeckePolynomial:
    """Build the polynomial attached to a minuscule coweight.

    Rejects non-minuscule mu.  For every parameter s, evaluating the
    coefficients at s yields det(X - M) with M the Frobenius matrix,
    via det(X - M) = sum_i (-1)^i tr(wedge^i M) X^{d-i}.
    """
    mu = tuple(mu)
    weights = minuscule_weights(datum, mu)
    d = len(weights)
    t = resolve_twist(datum, mu, twist, e_over_f)
    coeffs = []
    for i in range(d + 1):
        c = ext_power_character(datum, weights, i)
        sign = 1 if i % 2 == 0 else -1
        coeffs.append(c.scale(LaurentHalf.v_power(i * t, sign)))
    return HeckePolynomial(
        datum=datum, mu=mu, degree=d, coefficients=coeffs, twist_exponent=t,
        twist_preset=twist if isinstance(twist, str) else None,
        e_over_f=e_over_f)


def evaluate_coefficients(h: HeckePolynomial, s: SatakeParameter) -> list:
    return [evaluate(c, s) for c in h.coefficients]


# -- excursion values ---------------------------------------------------------

@dataclass(frozen=True)
class ExcursionValue:
    """Trace of the i-th exterior power at the chosen group element."""

    index: int
    value: Any


def excursion_values(datum: BasedRootDatum, mu: Coweight,
                     s: SatakeParameter | None = None, twist="paper",
                     e_over_f: int = 1,
                     frobenius: bool = True) -> list[ExcursionValue]:
    """Excursion traces at a Frobenius lift or at an inertia element.

    Frobenius mode: value_i = tr(wedge^i M) at the twisted Frobenius
    matrix of s.  Inertia mode (unramified parameter): the element acts
    trivially, so value_i = dim wedge^i = C(d, i).
    """
    weights = minuscule_weights(datum, mu)
    d = len(weights)
    if not frobenius:
        return [ExcursionValue(i, comb(d, i)) for i in range(d + 1)]
    if s is None:
        raise ValidationError("frobenius mode needs a parameter")
    t = resolve_twist(datum, mu, twist, e_over_f)
    m = frobenius_matrix(datum, mu, s, twist_exponent=t)
    return [ExcursionValue(i, trace_of(m, i)) for i in range(d + 1)]


# -- reports ------------------------------------------------------------------

@dataclass
class RelationReport:
    """Outcome of one exact matrix identity check.

    ``passed`` is True exactly when the residual matrix is zero.  The
    elapsed time is kept on the object but never serialized, so that
    reports with a fixed seed are byte-identical.
    """

    check: str
    passed: bool
    residual: list[list[str]]
    group: dict | None = None
    mu: list | None = None
    twist: dict | None = None
    domain: dict | None = None
    parameter: list | None = None
    elapsed: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.check, "passed": self.passed,
               "residual": self.residual}
        if self.group is not None:
            out["group"] = self.group
        if self.mu is not None:
            out["mu"] = self.mu
        if self.twist is not None:
            out["twist"] = self.twist
        if self.domain is not None:
            out["domain"] = self.domain
        if self.parameter is not None:
            out["parameter"] = self.parameter
        out.update(self.extra)
        return out


def cayley_hamilton_check(h: HeckePolynomial, m, coeff_values: list,
                          domain: ScalarDomain,
                          parameter: SatakeParameter | None = None) -> RelationReport:
    """Exact residual of the evaluated polynomial at an invertible matrix.

    ``coeff_values[i]`` is the value of the coefficient of X^{d-i}; the
    residual is sum_i coeff_values[i] * M^{d-i}, computed by Horner.
    Up to the global sign (-1)^d this is the alternating excursion sum,
    so "residual zero" is the same relation either way.  Singular M is
    rejected: the element it models acts invertibly.
    """
    import time
    start = time.monotonic()
    if isinstance(m, FrobeniusMatrix):
        matrix = m.to_matrix()
    else:
        matrix = [list(row) for row in m]
    d = h.degree
    if len(coeff_values) != d + 1:
        raise ValidationError(f"need {d + 1} coefficient values")
    if len(matrix) != d or any(len(row) != d for row in matrix):
        raise ValidationError(f"matrix must be {d}x{d}")
    if domain.is_zero(mat_determinant(domain, matrix)):
        raise ValidationError("matrix is singular")
    residual = mat_scale(domain, coeff_values[0], mat_identity(domain, d))
    for i in range(1, d + 1):
        residual = mat_mul(domain, residual, matrix)
        residual = mat_add(
            domain, residual,
            mat_scale(domain, coeff_values[i], mat_identity(domain, d)))
    passed = mat_is_zero(domain, residual)
    return RelationReport(
        check="cayley-hamilton", passed=passed,
        residual=mat_strings(domain, residual),
        group={"family": h.datum.family, "rank": h.datum.rank},
        mu=list(h.mu),
        twist={"preset": h.twist_preset, "exponent": h.twist_exponent},
        domain=domain.to_json(),
        parameter=parameter.to_json()["entries"] if parameter else None,
        elapsed=time.monotonic() - start)


def inertia_relation_check(d: int, m, domain: ScalarDomain | None = None,
                           require_nilpotent: bool = False) -> RelationReport:
    """Degenerate relation at an inertia element.

    Verifies sum_i (-1)^i C(d,i) M^i = (I - M)^d exactly (the excursion
    values collapse to dimensions), and separately reports whether
    (M - I)^d = 0.  With ``require_nilpotent`` the report's residual is
    (M - I)^d, so pass means M is unipotent of the right depth.
    """
    import time
    start = time.monotonic()
    if d < 1:
        raise ValidationError("d must be >= 1")
    if domain is None:
        domain = RationalWithV(1)
        m = [[Fraction(x) for x in row] for row in m]
    matrix = [list(row) for row in m]
    if len(matrix) != d or any(len(row) != d for row in matrix):
        raise ValidationError(f"matrix must be {d}x{d}")
    ident = mat_identity(domain, d)
    lhs = mat_scale(domain, domain.from_int(comb(d, 0)), ident)
    power = ident
    for i in range(1, d + 1):
        power = mat_mul(domain, power, matrix)
        coeff = domain.from_int((-1) ** i * comb(d, i))
        lhs = mat_add(domain, lhs, mat_scale(domain, coeff, power))
    rhs = mat_pow(domain, mat_sub(domain, ident, matrix), d)
    binomial_residual = mat_sub(domain, lhs, rhs)
    binomial_ok = mat_is_zero(domain, binomial_residual)
    nilpotent_power = mat_pow(domain, mat_sub(domain, matrix, ident), d)
    nilpotent = mat_is_zero(domain, nilpotent_power)
    residual = nilpotent_power if require_nilpotent else binomial_residual
    passed = nilpotent if require_nilpotent else binomial_ok
    return RelationReport(
        check="inertia", passed=passed,
        residual=mat_strings(domain, residual),
        domain=domain.to_json(),
        elapsed=time.monotonic() - start,
        extra={"binomial_identity": binomial_ok, "unipotent_depth_d": nilpotent,
               "d": d})


def reduce_mod_ell(h: HeckePolynomial, dom: PrimeFieldWithV) -> HeckePolynomial:
    """Coefficientwise reduction; evaluation then commutes with it."""
    if not isinstance(dom, PrimeFieldWithV):
        raise ValidationError("reduction needs a prime-field domain")
    if h.coeff_domain is not None:
        raise ValidationError("polynomial is already reduced")
    reduced = []
    for c in h.coefficients:
        terms = {w: LaurentHalf.from_int(dom.reduce(coeff))
                 for w, coeff in c.weights.terms.items()}
        from .characters import WeightMultiset
        reduced.append(SymmetricFunction(h.datum, WeightMultiset(terms),
                                         check=False))
    return HeckePolynomial(
        datum=h.datum, mu=h.mu, degree=h.degree, coefficients=reduced,
        twist_exponent=h.twist_exponent, twist_preset=h.twist_preset,
        e_over_f=h.e_over_f, coeff_domain=dom)
