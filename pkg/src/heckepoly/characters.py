"""Characters of the dual group in the coweight lattice.

Coweights of G are weights of the dual torus, so a virtual character of
the dual group is a finitely supported map coweight -> Laurent
coefficient (a WeightMultiset).  A SymmetricFunction is a Weyl-invariant
WeightMultiset; these are the Satake coordinates of spherical Hecke
elements.

Irreducible characters are computed by Freudenthal's multiplicity
recursion, run over exact integers using the averaged Weyl-invariant
form on the lattice.  Minuscule highest weights short-circuit to the
orbit sum (every weight has multiplicity one).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .errors import ConsistencyError, ValidationError
from .laurent import LaurentHalf, ONE
from .root_data import BasedRootDatum, Coweight

_DECOMPOSE_CAP = 10_000


class WeightMultiset:
    """Finitely supported map from lattice vectors to LaurentHalf."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Coweight, LaurentHalf] | None = None):
        clean: dict[Coweight, LaurentHalf] = {}
        if terms:
            for w, c in terms.items():
                if isinstance(c, int):
                    c = LaurentHalf.from_int(c)
                if not c.is_zero():
                    key = tuple(int(x) for x in w)
                    prev = clean.get(key)
                    c = c if prev is None else prev + c
                    if c.is_zero():
                        clean.pop(key, None)
                    else:
                        clean[key] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> "WeightMultiset":
        return cls()

    @classmethod
    def monomial(cls, weight: Coweight, coeff: LaurentHalf = ONE) -> "WeightMultiset":
        return cls({tuple(weight): coeff})

    @property
    def terms(self) -> dict[Coweight, LaurentHalf]:
        return self._terms

    def support(self) -> tuple[Coweight, ...]:
        return tuple(sorted(self._terms, reverse=True))

    def coeff(self, weight: Coweight) -> LaurentHalf:
        return self._terms.get(tuple(weight), LaurentHalf.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items(),
                                 key=lambda kv: kv[0])))

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, LaurentHalf.zero()) + c
        return WeightMultiset(out)

    def __neg__(self) -> "WeightMultiset":
        return WeightMultiset({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        return self + (-other)

    def __mul__(self, other) -> "WeightMultiset":
        """Convolution product; scalars (int/LaurentHalf) rescale."""
        if isinstance(other, (int, LaurentHalf)):
            return self.scale(other)
        out: dict[Coweight, LaurentHalf] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, LaurentHalf.zero()) + c1 * c2
        return WeightMultiset(out)

    __rmul__ = __mul__

    def scale(self, c) -> "WeightMultiset":
        if isinstance(c, int):
            c = LaurentHalf.from_int(c)
        return WeightMultiset({w: c0 * c for w, c0 in self._terms.items()})

    def is_invertible(self) -> bool:
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c.is_unit()

    def inverse(self) -> "WeightMultiset":
        if not self.is_invertible():
            raise ValidationError("only unit monomials are invertible")
        ((w, c),) = self._terms.items()
        return WeightMultiset({tuple(-x for x in w): c.monomial_inverse()})

    def __repr__(self):
        if not self._terms:
            return "WeightMultiset(0)"
        parts = [f"({c})*e{list(w)}" for w, c in sorted(self._terms.items(),
                                                        reverse=True)]
        return "WeightMultiset(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        return [{"weight": list(w), "coeff": c.serialize()}
                for w, c in sorted(self._terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, obj: list) -> "WeightMultiset":
        terms = {}
        for item in obj:
            w = tuple(int(x) for x in item["weight"])
            terms[w] = terms.get(w, LaurentHalf.zero()) + LaurentHalf.parse(item["coeff"])
        return cls(terms)


class SymmetricFunction:
    """Weyl-invariant WeightMultiset attached to a root datum."""

    __slots__ = ("datum", "weights")

    def __init__(self, datum: BasedRootDatum, weights: WeightMultiset,
                 check: bool = True):
        self.datum = datum
        self.weights = weights
        if check:
            self._check_invariance()

    def _check_invariance(self):
        for i in range(self.datum.num_simple):
            moved = {self.datum.reflect(i, w): c
                     for w, c in self.weights.terms.items()}
            if moved != self.weights.terms:
                raise ValidationError(
                    f"weight multiset is not invariant under s_{i}")

    @classmethod
    def constant(cls, datum: BasedRootDatum, c) -> "SymmetricFunction":
        if isinstance(c, int):
            c = LaurentHalf.from_int(c)
        zero = tuple(0 for _ in range(datum.rank))
        wm = WeightMultiset({zero: c}) if not c.is_zero() else WeightMultiset()
        return cls(datum, wm, check=False)

    def is_zero(self) -> bool:
        return self.weights.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __add__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        return SymmetricFunction(self.datum, self.weights + other.weights,
                                 check=False)

    def __sub__(self, other: "SymmetricFunction") -> "SymmetricFunction":
        return SymmetricFunction(self.datum, self.weights - other.weights,
                                 check=False)

    def __neg__(self) -> "SymmetricFunction":
        return SymmetricFunction(self.datum, -self.weights, check=False)

    def __mul__(self, other):
        if isinstance(other, SymmetricFunction):
            return SymmetricFunction(self.datum, self.weights * other.weights,
                                     check=False)
        return SymmetricFunction(self.datum, self.weights.scale(other),
                                 check=False)

    __rmul__ = __mul__

    def scale(self, c) -> "SymmetricFunction":
        return SymmetricFunction(self.datum, self.weights.scale(c), check=False)

    def __repr__(self):
        return f"SymmetricFunction({self.weights!r})"

    def to_json(self) -> list:
        return self.weights.to_json()

    @classmethod
    def from_json(cls, datum: BasedRootDatum, obj: list) -> "SymmetricFunction":
        return cls(datum, WeightMultiset.from_json(obj))


def orbit_character(datum: BasedRootDatum, lam: Coweight) -> SymmetricFunction:
    """Monomial symmetric function m_lam: orbit sum with coefficient 1."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise ValidationError(f"{lam} is not dominant")
    terms = {w: ONE for w in datum.weyl_orbit(lam)}
    return SymmetricFunction(datum, WeightMultiset(terms), check=False)


def minuscule_weights(datum: BasedRootDatum, mu: Coweight) -> tuple[Coweight, ...]:
    """Weights of the minuscule irreducible with highest weight mu.

    For minuscule mu this is exactly the Weyl orbit, in descending
    lexicographic order; the length is the dimension d.
    """
    if not datum.is_minuscule(mu):
        raise ValidationError(f"{tuple(mu)} is not minuscule")
    return datum.weyl_orbit(mu)


def ext_power_character(datum: BasedRootDatum, weights: tuple[Coweight, ...],
                        i: int) -> SymmetricFunction:
    """Character of the i-th exterior power: sum over i-subsets of weights."""
    d = len(weights)
    if not 0 <= i <= d:
        raise ValidationError(f"exterior power index {i} outside 0..{d}")
    terms: dict[Coweight, LaurentHalf] = {}
    for subset in itertools.combinations(range(d), i):
        w = tuple(sum(weights[j][k] for j in subset) for k in range(datum.rank))
        terms[w] = terms.get(w, LaurentHalf.zero()) + ONE
    return SymmetricFunction(datum, WeightMultiset(terms))


def _freudenthal_multiplicities(datum: BasedRootDatum,
                                lam: Coweight) -> dict[Coweight, int]:
    """Dominant weight multiplicities of the irreducible with h.w. lam.

    Freudenthal's recursion, on the dual side: the roles of roots are
    played by the coroots of the datum, and the invariant form is the
    W-averaged Gram form on the lattice.  All arithmetic is integral
    except one exact division per weight.
    """
    pos = datum.positive_coroots
    two_rho_hat = datum.two_rho_hat
    b = datum.gram_pairing

    lam_norm = b(lam, lam)
    # candidate weights: walk down simple coroots, prune by the norm bound
    seen = {lam}
    frontier = [lam]
    while frontier:
        mu = frontier.pop()
        for av in datum.simple_coroots:
            nu = tuple(x - y for x, y in zip(mu, av))
            if nu not in seen and b(nu, nu) <= lam_norm:
                seen.add(nu)
                frontier.append(nu)

    def height(mu: Coweight) -> int:
        # <2rho, lam - mu> drops by a positive even step per coroot
        return datum.rho_pairing_exponent(tuple(l - m for l, m in zip(lam, mu)))

    dominants = sorted((mu for mu in seen if datum.is_dominant(mu)),
                       key=height)
    mult: dict[Coweight, int] = {lam: 1}
    for mu in dominants:
        if mu == lam:
            continue
        numerator = 0
        for av in pos:
            av_norm = b(av, av)
            vertex = Fraction(-b(mu, av), av_norm)
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, av))
                nu_norm = b(nu, nu)
                if nu_norm > lam_norm and k > vertex:
                    break
                m_nu = mult.get(datum.dominant_representative(nu), 0)
                if m_nu:
                    numerator += 2 * m_nu * b(nu, av)
                k += 1
        denominator = b(tuple(l - m for l, m in zip(lam, mu)),
                        tuple(l + m + t for l, m, t in
                              zip(lam, mu, two_rho_hat)))
        if denominator <= 0:
            raise ConsistencyError("Freudenthal denominator must be positive")
        m_mu = Fraction(numerator, denominator)
        if m_mu.denominator != 1 or m_mu < 0:
            raise ConsistencyError(f"non-integral multiplicity at {mu}")
        if m_mu:
            mult[mu] = int(m_mu)
    return mult


def weyl_character(datum: BasedRootDatum, lam: Coweight) -> SymmetricFunction:
    """Character of the irreducible dual-group representation chi_lam."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise ValidationError(f"{lam} is not dominant")
    if datum.is_minuscule(lam):
        return orbit_character(datum, lam)
    mult = _freudenthal_multiplicities(datum, lam)
    total = WeightMultiset()
    for mu, m in mult.items():
        orbit = {w: LaurentHalf.from_int(m) for w in datum.weyl_orbit(mu)}
        total = total + WeightMultiset(orbit)
    return SymmetricFunction(datum, total)


def dimension(datum: BasedRootDatum, f: SymmetricFunction) -> LaurentHalf:
    """Evaluate at the all-ones parameter: sum of all coefficients."""
    total = LaurentHalf.zero()
    for c in f.weights.terms.values():
        total = total + c
    return total


def decompose(datum: BasedRootDatum,
              f: SymmetricFunction) -> dict[Coweight, LaurentHalf]:
    """Coefficients c_lam with f = sum c_lam chi_lam.

    Repeated highest-weight stripping along dominance order; exact, and
    guarded against non-termination on corrupted input.
    """
    work = f.weights
    out: dict[Coweight, LaurentHalf] = {}
    chi_cache: dict[Coweight, WeightMultiset] = {}
    for _ in range(_DECOMPOSE_CAP):
        if work.is_zero():
            return out
        doms = [w for w in work.terms if datum.is_dominant(w)]
        if not doms:
            raise ConsistencyError(
                "no dominant weight in support; input was not W-invariant")
        lam = max(doms, key=lambda w: (datum.rho_pairing_exponent(w), w))
        c = work.coeff(lam)
        if lam not in chi_cache:
            chi_cache[lam] = weyl_character(datum, lam).weights
        work = work - chi_cache[lam].scale(c)
        out[lam] = out.get(lam, LaurentHalf.zero()) + c
        if not work.coeff(lam).is_zero():
            raise ConsistencyError("highest-weight stripping failed to cancel")
    raise ConsistencyError("decomposition did not terminate")


def binomial_dimension(d: int, i: int) -> int:
    """dim of the i-th exterior power of a d-dimensional space."""
    return comb(d, i)
