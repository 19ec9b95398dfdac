"""Affine Hecke algebra in the T_w basis, Bernstein elements, and the
computed Satake transform.

Conventions (fixed once, then pinned by the minuscule calibration
identity S(1_{K mu K}) = v^{<2 rho, mu>} m_mu):

* extended affine Weyl group: pairs x = (lam, w) = t_lam w with the
  group law (lam1, w1)(lam2, w2) = (lam1 + w1 lam2, w1 w2);
* length: ell(t_lam w) = sum over positive roots alpha of
  |<alpha, lam>| when w^{-1} alpha > 0 and |<alpha, lam> - 1| when
  w^{-1} alpha < 0;
* quadratic relation: T_s^2 = (q - 1) T_s + q with q = v^2, hence
  T_s^{-1} = q^{-1} T_s - (1 - q^{-1});
* products in the T basis: T_x T_y = T_{xy} when lengths add, and the
  quadratic relation resolves the other case generator by generator
  along a reduced word (affine simple reflections plus the
  length-zero remainder group, which acts by relabeling);
* Bernstein elements: theta_lam = v^{-ell(t_lam)} T_{t_lam} for
  dominant lam, extended by theta_lam = v^{-ell(t_lam1) + ell(t_lam2)}
  T_{t_lam1} T_{t_lam2}^{-1} for any decomposition lam = lam1 - lam2
  into dominants (the result is decomposition independent);
* measure: each Iwahori double coset IxI has mass q^{ell(x)} relative
  to meas(I) = 1, so the averaging idempotent is
  e_K = (sum_w T_w) / P_W(q) with P_W(q) = sum_w q^{ell(w)};
* public spherical coordinates are renormalized so that the unit
  function 1_K has coordinate 1 at lam = 0.

Supports on intermediate elements grow quickly with |lam|; every
product is guarded by a configurable bound and raises
ResourceLimitError instead of thrashing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError, ResourceLimitError, ValidationError
from .laurent import LaurentHalf, ONE, Q
from .characters import SymmetricFunction, WeightMultiset, orbit_character
from .root_data import (BasedRootDatum, Coweight, Matrix,
                        solve_integer_combination, _mat_vec, _mat_mul)

DEFAULT_MAX_SUPPORT = 20_000

AffKey = tuple[Coweight, Matrix]


@dataclass
class AffineHeckeElement:
    """Finite T-basis expansion with an optional scalar denominator."""

    terms: dict[AffKey, LaurentHalf]
    denom: LaurentHalf = field(default_factory=lambda: ONE)

    def __post_init__(self):
        self.terms = {k: c for k, c in self.terms.items() if not c.is_zero()}
        if self.denom.is_zero():
            raise ValidationError("denominator must be nonzero")

    def is_zero(self) -> bool:
        return not self.terms

    def support_size(self) -> int:
        return len(self.terms)

    def scale(self, c: LaurentHalf) -> "AffineHeckeElement":
        return AffineHeckeElement({k: v * c for k, v in self.terms.items()},
                                  self.denom)

    def __add__(self, other: "AffineHeckeElement") -> "AffineHeckeElement":
        if self.denom == other.denom:
            out = dict(self.terms)
            for k, c in other.terms.items():
                out[k] = out.get(k, LaurentHalf.zero()) + c
            return AffineHeckeElement(out, self.denom)
        out = {k: c * other.denom for k, c in self.terms.items()}
        for k, c in other.terms.items():
            out[k] = out.get(k, LaurentHalf.zero()) + c * self.denom
        return AffineHeckeElement(out, self.denom * other.denom)

    def __neg__(self) -> "AffineHeckeElement":
        return AffineHeckeElement({k: -c for k, c in self.terms.items()},
                                  self.denom)

    def __sub__(self, other: "AffineHeckeElement") -> "AffineHeckeElement":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, AffineHeckeElement):
            return NotImplemented
        if self.denom == other.denom:
            return self.terms == other.terms
        left = {k: c * other.denom for k, c in self.terms.items()}
        right = {k: c * self.denom for k, c in other.terms.items()}
        return left == right

    def to_json(self, datum: BasedRootDatum):
        items = []
        for (lam, m), c in sorted(self.terms.items()):
            word = list(datum.weyl_element(m).word)
            items.append({"translation": list(lam), "finite_word": word,
                          "coeff": c.serialize()})
        if self.denom == ONE:
            return items
        return {"terms": items, "denominator": self.denom.serialize()}


@dataclass
class SphericalCosetVector:
    """Coordinates in the double-coset basis 1_{K lam K}, lam dominant."""

    coords: dict[Coweight, LaurentHalf]

    def __post_init__(self):
        self.coords = {tuple(k): c for k, c in self.coords.items()
                       if not c.is_zero()}

    def coeff(self, lam: Coweight) -> LaurentHalf:
        return self.coords.get(tuple(lam), LaurentHalf.zero())

    def support(self) -> tuple[Coweight, ...]:
        return tuple(sorted(self.coords, reverse=True))

    def __eq__(self, other):
        if not isinstance(other, SphericalCosetVector):
            return NotImplemented
        return self.coords == other.coords

    def to_json(self) -> list:
        return [{"lambda": list(k), "coeff": c.serialize()}
                for k, c in sorted(self.coords.items(), reverse=True)]

    @classmethod
    def from_json(cls, obj: list) -> "SphericalCosetVector":
        return cls({tuple(item["lambda"]): LaurentHalf.parse(item["coeff"])
                    for item in obj})


class AffineHeckeAlgebra:
    """Engine for one based root datum.

    All elements are plain data; products, Bernstein elements and the
    Satake transform are methods here so that datum-derived tables
    (lengths, reflection data) are shared.
    """

    def __init__(self, datum: BasedRootDatum,
                 max_support: int = DEFAULT_MAX_SUPPORT):
        if datum.num_simple > 0 and not datum.is_irreducible:
            raise ValidationError(
                "affine engine needs an irreducible root system")
        self.datum = datum
        self.max_support = max_support
        self._zero_vec = tuple(0 for _ in range(datum.rank))
        self._ident = datum.identity_matrix()
        self._length_memo: dict[AffKey, int] = {}
        self._theta_memo: dict[Coweight, AffineHeckeElement] = {}
        self._gens = self._build_generators()

    # -- extended affine Weyl group -------------------------------------

    def _build_generators(self) -> dict[int, AffKey]:
        datum = self.datum
        gens: dict[int, AffKey] = {}
        for i in range(datum.num_simple):
            gens[i + 1] = (self._zero_vec, datum.reflection_matrix(i))
        if datum.num_simple > 0:
            theta = datum.highest_root
            theta_v = datum.coroot_of(theta)
            cols = []
            for j in range(datum.rank):
                basis = tuple(1 if k == j else 0 for k in range(datum.rank))
                c = datum.pairing(theta, basis)
                cols.append(tuple(x - c * y for x, y in zip(basis, theta_v)))
            s_theta = tuple(zip(*cols))
            gens[0] = (theta_v, s_theta)
        return gens

    @property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self._gens))

    def generator(self, idx: int) -> AffKey:
        return self._gens[idx]

    def identity_key(self) -> AffKey:
        return (self._zero_vec, self._ident)

    def translation_key(self, lam: Coweight) -> AffKey:
        return (tuple(lam), self._ident)

    def mul_aff(self, x: AffKey, y: AffKey) -> AffKey:
        (l1, m1), (l2, m2) = x, y
        return (tuple(a + b for a, b in zip(l1, _mat_vec(m1, l2))),
                _mat_mul(m1, m2))

    def inv_aff(self, x: AffKey) -> AffKey:
        lam, m = x
        m_inv = self.datum.inverse_matrix(m)
        neg = tuple(-a for a in _mat_vec(m_inv, lam))
        return (neg, m_inv)

    def length(self, x: AffKey) -> int:
        memo = self._length_memo
        cached = memo.get(x)
        if cached is not None:
            return cached
        lam, m = x
        datum = self.datum
        total = 0
        for alpha in datum.positive_roots:
            pair = datum.pairing(alpha, lam)
            # w^{-1} alpha as a dual vector: components sum_k alpha_k m[k][j]
            winv = tuple(sum(alpha[k] * m[k][j] for k in range(datum.rank))
                         for j in range(datum.rank))
            if datum.is_positive_root(winv):
                total += abs(pair)
            else:
                total += abs(pair - 1)
        memo[x] = total
        return total

    def reduced_word(self, x: AffKey) -> tuple[AffKey, tuple[int, ...]]:
        """Write x = pi * s_{i_1} ... s_{i_m} with ell(pi) = 0, m = ell(x)."""
        word: list[int] = []
        cur = x
        length = self.length(cur)
        while length > 0:
            for idx in self.generator_indices:
                y = self.mul_aff(cur, self._gens[idx])
                if self.length(y) < length:
                    cur = y
                    length -= 1
                    word.append(idx)
                    break
            else:
                raise ConsistencyError("element of positive length has no descent")
        return cur, tuple(reversed(word))

    # -- T-basis products -------------------------------------------------

    def unit(self) -> AffineHeckeElement:
        return AffineHeckeElement({self.identity_key(): ONE})

    def t_basis(self, x: AffKey) -> AffineHeckeElement:
        return AffineHeckeElement({x: ONE})

    def gen_t(self, idx: int) -> AffineHeckeElement:
        return self.t_basis(self._gens[idx])

    def _guard(self, terms: dict):
        if len(terms) > self.max_support:
            raise ResourceLimitError(
                f"support {len(terms)} exceeds max_support={self.max_support}")

    @staticmethod
    def _acc(out: dict, key: AffKey, c: LaurentHalf):
        prev = out.get(key)
        c = c if prev is None else prev + c
        if c.is_zero():
            out.pop(key, None)
        else:
            out[key] = c

    def _left_mul_gen(self, idx: int, terms: dict) -> dict:
        q_minus_1 = Q - ONE
        g = self._gens[idx]
        out: dict[AffKey, LaurentHalf] = {}
        for z, c in terms.items():
            sz = self.mul_aff(g, z)
            if self.length(sz) > self.length(z):
                self._acc(out, sz, c)
            else:
                self._acc(out, z, c * q_minus_1)
                self._acc(out, sz, c * Q)
        self._guard(out)
        return out

    def _left_mul_gen_inv(self, idx: int, terms: dict) -> dict:
        # T_s^{-1} E = q^{-1} (T_s E) - (1 - q^{-1}) E
        q_inv = LaurentHalf.v_power(-2)
        correction = q_inv - ONE
        out: dict[AffKey, LaurentHalf] = {}
        for z, c in self._left_mul_gen(idx, terms).items():
            self._acc(out, z, c * q_inv)
        for z, c in terms.items():
            self._acc(out, z, c * correction)
        self._guard(out)
        return out

    def _left_mul_basis(self, x: AffKey, terms: dict) -> dict:
        pi, word = self.reduced_word(x)
        cur = terms
        for idx in reversed(word):
            cur = self._left_mul_gen(idx, cur)
        if pi != self.identity_key():
            cur = {self.mul_aff(pi, z): c for z, c in cur.items()}
        return cur

    def multiply(self, a: AffineHeckeElement,
                 b: AffineHeckeElement) -> AffineHeckeElement:
        out: dict[AffKey, LaurentHalf] = {}
        for x, cx in a.terms.items():
            for z, c in self._left_mul_basis(x, b.terms).items():
                self._acc(out, z, cx * c)
            self._guard(out)
        return AffineHeckeElement(out, a.denom * b.denom)

    # -- Bernstein elements ------------------------------------------------

    def translation_inverse(self, lam: Coweight) -> AffineHeckeElement:
        """T_{t_lam}^{-1} for dominant lam, expanded along a reduced word."""
        lam = tuple(lam)
        if not self.datum.is_dominant(lam):
            raise ValidationError("translation_inverse expects a dominant coweight")
        pi, word = self.reduced_word(self.translation_key(lam))
        cur = {self.inv_aff(pi): ONE}
        for idx in word:
            cur = self._left_mul_gen_inv(idx, cur)
        return AffineHeckeElement(cur)

    def _dominant_lifters(self) -> list[Coweight]:
        """One dominant sigma_i per simple root with <alpha_i, sigma_i> >= 1."""
        datum = self.datum
        out = []
        for i in range(datum.num_simple):
            target = tuple(1 if j == i else 0 for j in range(datum.num_simple))
            sol = self._solve_pairings(target)
            out.append(sol)
        return out

    def _solve_pairings(self, pairings: tuple[int, ...]) -> Coweight:
        """Integer lattice vector whose pairings with the simple roots are a
        positive multiple of the requested pattern (zeros stay zero)."""
        datum = self.datum
        rows = [list(a) for a in datum.simple_roots]
        # solve A x = pairings by treating x's coordinates as unknowns:
        # use solve_integer_combination on the transpose's columns
        cols = [tuple(rows[i][j] for i in range(len(rows)))
                for j in range(datum.rank)]
        sol = solve_integer_combination(cols, tuple(pairings))
        if sol is None:
            raise ConsistencyError("pairing pattern outside the root span")
        from math import lcm
        scale = lcm(*(c.denominator for c in sol)) if sol else 1
        return tuple(int(c * scale) for c in sol)

    def _dominant_decomposition(self, lam: Coweight) -> tuple[Coweight, Coweight]:
        """lam = lam1 - lam2 with both parts dominant, lam2 greedily small."""
        datum = self.datum
        lifters = self.__dict__.setdefault("_lifters", self._dominant_lifters())
        cur = tuple(lam)
        lam2 = self._zero_vec
        while True:
            for i in range(datum.num_simple):
                deficit = -datum.pairing(datum.simple_roots[i], cur)
                if deficit > 0:
                    sigma = lifters[i]
                    step = datum.pairing(datum.simple_roots[i], sigma)
                    k = -(-deficit // step)
                    cur = tuple(x + k * y for x, y in zip(cur, sigma))
                    lam2 = tuple(x + k * y for x, y in zip(lam2, sigma))
                    break
            else:
                return cur, lam2

    def theta(self, lam: Coweight) -> AffineHeckeElement:
        """Bernstein element theta_lam; theta_lam theta_nu = theta_{lam+nu}."""
        lam = tuple(lam)
        cached = self._theta_memo.get(lam)
        if cached is not None:
            return cached
        lam1, lam2 = self._dominant_decomposition(lam)
        e1 = self.length(self.translation_key(lam1))
        e2 = self.length(self.translation_key(lam2))
        if lam2 == self._zero_vec:
            elt = self.t_basis(self.translation_key(lam1))
        else:
            inv = self.translation_inverse(lam2)
            elt = AffineHeckeElement(
                self._left_mul_basis(self.translation_key(lam1), inv.terms))
        result = elt.scale(LaurentHalf.v_power(e2 - e1))
        self._theta_memo[lam] = result
        return result

    def central_element(self, f: SymmetricFunction) -> AffineHeckeElement:
        """z_f = f(theta); commutes with every T_s and theta_nu."""
        if not isinstance(f, SymmetricFunction):
            raise ValidationError("central_element needs a W-invariant function")
        total: dict[AffKey, LaurentHalf] = {}
        for w, c in f.weights.terms.items():
            for key, coeff in self.theta(w).terms.items():
                self._acc(total, key, c * coeff)
            self._guard(total)
        return AffineHeckeElement(total)

    # -- spherical side ------------------------------------------------------

    def poincare(self) -> LaurentHalf:
        """P_W(q) = sum over the finite Weyl group of q^{ell(w)}."""
        total = LaurentHalf.zero()
        for w in self.datum.weyl_elements:
            total = total + LaurentHalf.v_power(2 * w.length)
        return total

    def finite_sum(self) -> AffineHeckeElement:
        return AffineHeckeElement(
            {(self._zero_vec, w.matrix): ONE for w in self.datum.weyl_elements})

    def spherical_idempotent(self) -> AffineHeckeElement:
        """e_K = (sum_w T_w) / P_W(q); idempotent."""
        elt = self.finite_sum()
        return AffineHeckeElement(elt.terms, self.poincare())

    def satake_inverse(self, f: SymmetricFunction) -> SphericalCosetVector:
        """Double-coset coordinates of z_f * e_K.

        The T-coefficients of the product must be constant on each
        double coset W t_lam W; the constants are the public
        coordinates (normalized so that f = 1 maps to 1_K).
        """
        z = self.central_element(f)
        product = self.multiply(z, self.finite_sum())
        if product.denom != ONE:
            raise ConsistencyError("unexpected denominator in Satake product")
        by_coset: dict[Coweight, dict[AffKey, LaurentHalf]] = {}
        for (lam, m), c in product.terms.items():
            dom = self.datum.dominant_representative(lam)
            by_coset.setdefault(dom, {})[(lam, m)] = c
        coords: dict[Coweight, LaurentHalf] = {}
        for dom, present in by_coset.items():
            orbit = self.datum.weyl_orbit(dom)
            values = set()
            for lam in orbit:
                for w in self.datum.weyl_elements:
                    values.add(present.get((lam, w.matrix), LaurentHalf.zero()))
            if len(values) != 1:
                raise ConsistencyError(
                    f"coset W t_{dom} W has non-constant coefficients")
            coords[dom] = values.pop()
        return SphericalCosetVector(coords)

    def _ordered_labels(self, lam_list) -> list[Coweight]:
        labels = sorted({tuple(l) for l in lam_list},
                        key=lambda l: (self.datum.rho_pairing_exponent(l), l))
        for lam in labels:
            if not self.datum.is_dominant(lam):
                raise ValidationError(f"{lam} is not dominant")
            missing = [mu for mu in self.datum.dominants_below(lam)
                       if mu not in set(labels)]
            if missing:
                raise ValidationError(
                    f"list is not downward-closed: missing {missing}")
        return labels

    def satake_matrix(self, lam_list):
        """Matrix of satake_inverse from the m_nu basis to the coset basis.

        Entry [i][j] is the coordinate at labels[i] of the image of
        m_{labels[j]}; the matrix is upper triangular for the dominance
        order.
        """
        labels = self._ordered_labels(lam_list)
        index = {lam: i for i, lam in enumerate(labels)}
        n = len(labels)
        a = [[LaurentHalf.zero() for _ in range(n)] for _ in range(n)]
        for j, nu in enumerate(labels):
            vec = self.satake_inverse(orbit_character(self.datum, nu))
            for lam, c in vec.coords.items():
                i = index.get(lam)
                if i is None or i > j:
                    raise ConsistencyError(
                        f"image of m_{nu} is supported outside its lower set")
                a[i][j] = c
        return labels, a

    def satake_transform_matrix(self, lam_list):
        """Inverse of satake_matrix: the Satake transform, coset to m basis.

        Upper triangular with diagonal entry v^{<2 rho, lam>} at lam.
        """
        labels, a = self.satake_matrix(lam_list)
        n = len(labels)
        b = [[LaurentHalf.zero() for _ in range(n)] for _ in range(n)]
        for k in range(n):
            b[k][k] = a[k][k].monomial_inverse()
            for i in range(k - 1, -1, -1):
                acc = LaurentHalf.zero()
                for j in range(i + 1, k + 1):
                    acc = acc + a[i][j] * b[j][k]
                b[i][k] = -(a[i][i].monomial_inverse()) * acc
        return labels, b

    def satake_of_indicator(self, lam: Coweight) -> SymmetricFunction:
        """S(1_{K lam K}) expressed in monomial symmetric functions."""
        lam = tuple(lam)
        labels, b = self.satake_transform_matrix(self.datum.dominants_below(lam))
        k = labels.index(lam)
        total = WeightMultiset()
        for i, nu in enumerate(labels):
            if not b[i][k].is_zero():
                total = total + orbit_character(self.datum, nu).weights.scale(b[i][k])
        return SymmetricFunction(self.datum, total, check=False)

    def satake_transform(self, vec: SphericalCosetVector) -> SymmetricFunction:
        """Inverse of satake_inverse on the span of the vector's lower sets."""
        closure: set[Coweight] = set()
        for lam in vec.coords:
            closure.update(self.datum.dominants_below(lam))
        if not closure:
            return SymmetricFunction.constant(self.datum, 0)
        labels, b = self.satake_transform_matrix(sorted(closure))
        total = WeightMultiset()
        for lam, c in vec.coords.items():
            k = labels.index(lam)
            for i, nu in enumerate(labels):
                if not b[i][k].is_zero():
                    total = total + orbit_character(
                        self.datum, nu).weights.scale(b[i][k] * c)
        return SymmetricFunction(self.datum, total, check=False)
