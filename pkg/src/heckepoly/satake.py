"""Satake parameters and evaluation of spherical elements.

The spherical Hecke algebra in Satake coordinates is the ring of
W-invariant Laurent polynomials on the dual torus; a SphericalElement
is therefore just a SymmetricFunction.  A SatakeParameter is a point of
the dual torus: one invertible scalar per lattice basis vector, in a
chosen scalar domain.  Evaluation sends sum c_lam e^lam to
sum c_lam s^lam with s^lam = prod s_j^{lam_j}.

The generic (symbolic) parameter lives in the FormalTorusDomain, whose
scalars are lattice group-algebra elements: the j-th generic entry is
the monomial e^{e_j}.  Evaluating at the generic parameter returns the
function itself, and all matrix identities can be checked symbolically.

A FrobeniusMatrix is the diagonal matrix of a minuscule representation
at a parameter, with entries v^twist * s^{lam_j} over the canonical
weight order.  The twist exponent is a configured integer power of v
with two named presets:

* ``paper``:     [E:F] * d      (so v^{[E:F] d} = q^{[E:F] d / 2});
* ``classical``: <2 rho, mu>    (so v^{<2 rho, mu>} = q^{<rho, mu>}).

The two conventions disagree in general; both are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import ValidationError
from .laurent import (LaurentHalf, PrimeFieldWithV, RationalWithV,
                      ScalarDomain)
from .characters import (SymmetricFunction, WeightMultiset,
                         minuscule_weights)
from .root_data import BasedRootDatum, Coweight

SphericalElement = SymmetricFunction

TWIST_PRESETS = ("paper", "classical")


class FormalTorusDomain(ScalarDomain):
    """Symbolic scalars: Laurent-coefficient functions on the torus.

    A scalar is a WeightMultiset over Z^rank; the coordinate monomial
    e^{e_j} plays the role of the j-th symbolic entry.
    """

    kind = "formal-laurent"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValidationError("rank must be positive")
        self.rank = rank

    def _zero_weight(self) -> Coweight:
        return tuple(0 for _ in range(self.rank))

    def reduce(self, x: LaurentHalf) -> WeightMultiset:
        if x.is_zero():
            return WeightMultiset.zero()
        return WeightMultiset({self._zero_weight(): x})

    def coordinate(self, j: int) -> WeightMultiset:
        w = tuple(1 if k == j else 0 for k in range(self.rank))
        return WeightMultiset.monomial(w)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(a.inverse(), -k)
        result = self.reduce(LaurentHalf.from_int(1))
        for _ in range(k):
            result = result * a
        return result

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def random_unit(self, rng) -> WeightMultiset:
        w = tuple(rng.randint(-1, 1) for _ in range(self.rank))
        return WeightMultiset.monomial(w, LaurentHalf.v_power(rng.randint(-2, 2)))

    def scalar_str(self, a) -> str:
        import json
        return json.dumps(a.to_json(), sort_keys=True)

    def parse_scalar(self, text: str) -> WeightMultiset:
        import json
        return WeightMultiset.from_json(json.loads(text))

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank}

    def __repr__(self):
        return f"FormalTorusDomain(rank={self.rank})"


def domain_from_json(obj: dict) -> ScalarDomain:
    kind = obj.get("kind")
    if kind == FormalTorusDomain.kind:
        return FormalTorusDomain(int(obj["rank"]))
    if kind == RationalWithV.kind:
        return RationalWithV(obj["v_value"])
    if kind == PrimeFieldWithV.kind:
        return PrimeFieldWithV(int(obj["ell"]), int(obj["v_image"]),
                               int(obj["q_residue"]) if "q_residue" in obj else None)
    raise ValidationError(f"unknown domain kind {kind!r}")


@dataclass(frozen=True)
class SatakeParameter:
    """Point of the dual torus: invertible entries in a scalar domain."""

    domain: ScalarDomain
    entries: tuple

    def __post_init__(self):
        for e in self.entries:
            if self.domain.is_zero(e):
                raise ValidationError("parameter entries must be invertible")
            if isinstance(self.domain, FormalTorusDomain) and not e.is_invertible():
                raise ValidationError(
                    "formal parameter entries must be unit monomials")

    @property
    def rank(self) -> int:
        return len(self.entries)

    @classmethod
    def generic(cls, rank: int) -> "SatakeParameter":
        dom = FormalTorusDomain(rank)
        return cls(dom, tuple(dom.coordinate(j) for j in range(rank)))

    @classmethod
    def random(cls, domain: ScalarDomain, rank: int, rng) -> "SatakeParameter":
        return cls(domain, tuple(domain.random_unit(rng) for _ in range(rank)))

    def power(self, lam: Coweight):
        """s^lam = prod s_j^{lam_j}."""
        if len(lam) != self.rank:
            raise ValidationError("coweight length does not match parameter rank")
        dom = self.domain
        factors = [dom.pow(self.entries[j], lam[j])
                   for j in range(self.rank) if lam[j]]
        return reduce(dom.mul, factors, dom.one())

    def permuted(self, perm: tuple[int, ...]) -> "SatakeParameter":
        return SatakeParameter(self.domain,
                               tuple(self.entries[j] for j in perm))

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(),
                "entries": [self.domain.scalar_str(e) for e in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "SatakeParameter":
        dom = domain_from_json(obj["domain"])
        return cls(dom, tuple(dom.parse_scalar(t) for t in obj["entries"]))


def evaluate(f, s: SatakeParameter):
    """Evaluate a spherical element (or bare WeightMultiset) at s."""
    weights = f.weights if isinstance(f, SymmetricFunction) else f
    dom = s.domain
    total = dom.zero()
    for w, c in weights.terms.items():
        total = dom.add(total, dom.mul(dom.reduce(c), s.power(w)))
    return total


def resolve_twist(datum: BasedRootDatum, mu: Coweight, twist,
                  e_over_f: int = 1) -> int:
    """Twist exponent (power of v) from a preset name or explicit int."""
    if isinstance(twist, int):
        return twist
    if twist == "paper":
        d = len(minuscule_weights(datum, mu))
        return e_over_f * d
    if twist == "classical":
        return datum.rho_pairing_exponent(datum.dominant_representative(mu))
    raise ValidationError(f"unknown twist {twist!r} "
                          f"(expected int or one of {TWIST_PRESETS})")


@dataclass(frozen=True)
class FrobeniusMatrix:
    """Diagonal matrix of a minuscule representation at a parameter."""

    weights: tuple[Coweight, ...]
    diagonal: tuple
    domain: ScalarDomain
    twist_exponent: int

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def to_matrix(self) -> list[list]:
        dom = self.domain
        n = self.size
        return [[self.diagonal[i] if i == j else dom.zero()
                 for j in range(n)] for i in range(n)]

    def to_json(self) -> dict:
        return {"weights": [list(w) for w in self.weights],
                "diagonal": [self.domain.scalar_str(a) for a in self.diagonal],
                "twist_exponent": self.twist_exponent,
                "domain": self.domain.to_json()}


def frobenius_matrix(datum: BasedRootDatum, mu: Coweight, s: SatakeParameter,
                     twist_exponent: int | None = None,
                     e_over_f: int = 1) -> FrobeniusMatrix:
    """Diagonal entries v^twist * s^{lam_j} over the canonical weight order.

    The default twist is [E:F] * d.
    """
    weights = minuscule_weights(datum, mu)
    if twist_exponent is None:
        twist_exponent = e_over_f * len(weights)
    if s.rank != datum.rank:
        raise ValidationError("parameter rank does not match the datum")
    dom = s.domain
    scale = dom.reduce(LaurentHalf.v_power(twist_exponent))
    diag = tuple(dom.mul(scale, s.power(w)) for w in weights)
    return FrobeniusMatrix(weights, diag, dom, twist_exponent)


def trace_of(m: FrobeniusMatrix, i: int):
    """Trace of the i-th exterior power: e_i of the diagonal entries."""
    d = m.size
    if not 0 <= i <= d:
        raise ValidationError(f"exterior power index {i} outside 0..{d}")
    dom = m.domain
    # elementary symmetric polynomials by the usual triangular recurrence
    e = [dom.one()] + [dom.zero()] * d
    for a in m.diagonal:
        for k in range(d, 0, -1):
            e[k] = dom.add(e[k], dom.mul(a, e[k - 1]))
    return e[i]
