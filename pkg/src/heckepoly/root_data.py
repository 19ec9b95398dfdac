"""Based root data of split reductive groups.

A BasedRootDatum fixes the cocharacter lattice Z^n of a split maximal
torus, simple roots (vectors in the dual lattice) and simple coroots
(vectors in the lattice); the pairing between the two sides is the
standard dot product.  The finite Weyl group acts on the lattice by
lam -> lam - <alpha_i, lam> alpha_i^vee and is enumerated by
breadth-first search, which also yields reduced words.

Builders cover GL_n (lattice Z^n, roots e_i - e_j), SL_n (lattice =
coroot lattice, coroots the standard basis), PGL_n (lattice = coweight
lattice, roots the standard dual basis) and Sp_n for even n (type
C_{n/2}).  Custom data can be loaded from JSON and are validated
against the Cartan and braid axioms.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property

from .errors import ValidationError

Coweight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

SUPPORTED_FAMILIES = ("GL", "SL", "PGL", "Sp")

_BRAID_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_vec(m: Matrix, x: Coweight) -> Coweight:
    return tuple(sum(m[i][j] * x[j] for j in range(len(x))) for i in range(len(m)))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def solve_integer_combination(columns: list[Coweight], target) -> tuple | None:
    """Solve sum_i c_i * columns[i] = target exactly over Q.

    Returns the coefficient tuple (Fractions) or None when the system
    is inconsistent.  The columns are assumed linearly independent,
    which holds for simple roots and simple coroots.
    """
    if not columns:
        return () if all(t == 0 for t in target) else None
    nrows = len(target)
    ncols = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    # inconsistency: zero row with nonzero rhs
    for r in range(row, nrows):
        if aug[r][ncols] != 0 and all(aug[r][c] == 0 for c in range(ncols)):
            return None
    coeffs = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        coeffs[col] = aug[r][ncols]
    # columns independent => every column is a pivot unless ncols > rank
    residual = [sum(coeffs[j] * columns[j][i] for j in range(ncols)) - target[i]
                for i in range(nrows)]
    if any(residual):
        return None
    return tuple(coeffs)


class WeylElement:
    """Finite Weyl group element: reduced word plus lattice matrix.

    Equality and hashing go through the matrix; the word is one fixed
    reduced expression found by the BFS enumeration.
    """

    __slots__ = ("word", "matrix")

    def __init__(self, word: tuple[int, ...], matrix: Matrix):
        self.word = word
        self.matrix = matrix

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement(word={self.word})"


class BasedRootDatum:
    """Lattice Z^rank with simple roots/coroots and their Weyl group."""

    def __init__(self, family: str, rank: int,
                 simple_roots: list[Coweight], simple_coroots: list[Coweight],
                 validate: bool = True):
        self.family = family
        self.rank = int(rank)
        self.simple_roots = tuple(tuple(int(x) for x in a) for a in simple_roots)
        self.simple_coroots = tuple(tuple(int(x) for x in a) for a in simple_coroots)
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ValidationError("roots and coroots must come in pairs")
        for vec in self.simple_roots + self.simple_coroots:
            if len(vec) != self.rank:
                raise ValidationError("root/coroot length must equal the rank")
        if validate:
            self._validate()

    # -- setup and validation ------------------------------------------

    @property
    def num_simple(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan(self) -> Matrix:
        """<alpha_i, alpha_j^vee> with rows indexed by roots."""
        return tuple(tuple(_dot(a, av) for av in self.simple_coroots)
                     for a in self.simple_roots)

    def _validate(self):
        cartan = self.cartan
        r = self.num_simple
        for i in range(r):
            if cartan[i][i] != 2:
                raise ValidationError(f"<alpha_{i}, alpha_{i}^vee> must be 2")
            for j in range(r):
                if i != j and cartan[i][j] > 0:
                    raise ValidationError("off-diagonal Cartan entries must be <= 0")
        for i in range(r):
            m = self.reflection_matrix(i)
            if _mat_mul(m, m) != _identity(self.rank):
                raise ValidationError(f"s_{i} is not an involution")
        for i in range(r):
            for j in range(i + 1, r):
                prod = cartan[i][j] * cartan[j][i]
                if prod not in _BRAID_ORDER:
                    raise ValidationError(
                        f"Cartan product {prod} at ({i},{j}) generates an "
                        "infinite group")
                m_ij = _BRAID_ORDER[prod]
                prod_mat = _mat_mul(self.reflection_matrix(i),
                                    self.reflection_matrix(j))
                power = _identity(self.rank)
                for _ in range(m_ij):
                    power = _mat_mul(power, prod_mat)
                if power != _identity(self.rank):
                    raise ValidationError(f"braid relation fails at ({i},{j})")

    # -- actions --------------------------------------------------------

    def pairing(self, root: Coweight, cowt: Coweight) -> int:
        return _dot(root, cowt)

    def reflect(self, i: int, lam: Coweight) -> Coweight:
        c = _dot(self.simple_roots[i], lam)
        av = self.simple_coroots[i]
        return tuple(x - c * y for x, y in zip(lam, av))

    def reflection_matrix(self, i: int) -> Matrix:
        basis = _identity(self.rank)
        return tuple(zip(*(self.reflect(i, col) for col in basis)))

    def dual_reflect(self, i: int, chi: Coweight) -> Coweight:
        c = _dot(chi, self.simple_coroots[i])
        a = self.simple_roots[i]
        return tuple(x - c * y for x, y in zip(chi, a))

    def act(self, w, lam: Coweight) -> Coweight:
        m = w.matrix if isinstance(w, WeylElement) else w
        return _mat_vec(m, lam)

    # -- Weyl group -------------------------------------------------------

    @cached_property
    def weyl_elements(self) -> tuple[WeylElement, ...]:
        ident = WeylElement((), _identity(self.rank))
        seen = {ident.matrix: ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(self.num_simple):
                    m = _mat_mul(w.matrix, self.reflection_matrix(i))
                    if m not in seen:
                        elt = WeylElement(w.word + (i,), m)
                        seen[m] = elt
                        nxt.append(elt)
            frontier = nxt
        return tuple(sorted(seen.values(), key=lambda w: (w.length, w.word)))

    @cached_property
    def weyl_order(self) -> int:
        return len(self.weyl_elements)

    @cached_property
    def _by_matrix(self) -> dict[Matrix, WeylElement]:
        return {w.matrix: w for w in self.weyl_elements}

    def weyl_element(self, matrix: Matrix) -> WeylElement:
        return self._by_matrix[matrix]

    @cached_property
    def _inverse_matrix(self) -> dict[Matrix, Matrix]:
        out = {}
        for w in self.weyl_elements:
            m = _identity(self.rank)
            for i in reversed(w.word):
                m = _mat_mul(m, self.reflection_matrix(i))
            out[w.matrix] = m
        return out

    def inverse_matrix(self, matrix: Matrix) -> Matrix:
        return self._inverse_matrix[matrix]

    def identity_matrix(self) -> Matrix:
        return _identity(self.rank)

    # -- roots ------------------------------------------------------------

    @cached_property
    def _root_table(self) -> dict[Coweight, Coweight]:
        """All roots (dual side) mapped to their coroots (lattice side)."""
        table: dict[Coweight, Coweight] = {}
        frontier = list(zip(self.simple_roots, self.simple_coroots))
        while frontier:
            alpha, alpha_v = frontier.pop()
            if alpha in table:
                continue
            table[alpha] = alpha_v
            for i in range(self.num_simple):
                beta = self.dual_reflect(i, alpha)
                if beta not in table:
                    c = _dot(self.simple_roots[i], alpha_v)
                    av = self.simple_coroots[i]
                    beta_v = tuple(x - c * y for x, y in zip(alpha_v, av))
                    frontier.append((beta, beta_v))
        return table

    @cached_property
    def roots(self) -> tuple[Coweight, ...]:
        return tuple(sorted(self._root_table))

    def coroot_of(self, root: Coweight) -> Coweight:
        return self._root_table[root]

    @cached_property
    def _root_expansions(self) -> dict[Coweight, tuple[Fraction, ...]]:
        cols = list(self.simple_roots)
        out = {}
        for alpha in self.roots:
            coeffs = solve_integer_combination(cols, alpha)
            if coeffs is None:
                raise ValidationError("root outside the span of simple roots")
            out[alpha] = coeffs
        return out

    @cached_property
    def positive_roots(self) -> tuple[Coweight, ...]:
        pos = [a for a, cs in self._root_expansions.items()
               if all(c >= 0 for c in cs)]
        return tuple(sorted(pos))

    @cached_property
    def _positive_root_set(self) -> frozenset[Coweight]:
        return frozenset(self.positive_roots)

    def is_positive_root(self, alpha: Coweight) -> bool:
        return alpha in self._positive_root_set

    @cached_property
    def two_rho(self) -> Coweight:
        """Sum of the positive roots (a dual-lattice vector)."""
        if not self.positive_roots:
            return tuple(0 for _ in range(self.rank))
        return tuple(sum(col) for col in zip(*self.positive_roots))

    @cached_property
    def positive_coroots(self) -> tuple[Coweight, ...]:
        return tuple(sorted(self._root_table[a] for a in self.positive_roots))

    @cached_property
    def two_rho_hat(self) -> Coweight:
        """Sum of the positive coroots (a lattice vector)."""
        if not self.positive_coroots:
            return tuple(0 for _ in range(self.rank))
        return tuple(sum(col) for col in zip(*self.positive_coroots))

    @cached_property
    def highest_root(self) -> Coweight:
        """The dominant root of maximal height; requires irreducibility."""
        if not self.roots:
            raise ValidationError("datum has no roots")
        if not self.is_irreducible:
            raise ValidationError("highest root needs an irreducible system")
        return max(self.roots, key=lambda a: sum(self._root_expansions[a]))

    @cached_property
    def is_irreducible(self) -> bool:
        r = self.num_simple
        if r == 0:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(r):
                if j not in seen and self.cartan[i][j] != 0:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == r

    @cached_property
    def gram(self) -> Matrix:
        """Weyl-invariant positive form on the lattice, averaged over W."""
        n = self.rank
        total = [[0] * n for _ in range(n)]
        for w in self.weyl_elements:
            m = w.matrix
            for i in range(n):
                for j in range(n):
                    total[i][j] += sum(m[k][i] * m[k][j] for k in range(n))
        return tuple(tuple(row) for row in total)

    def gram_pairing(self, x: Coweight, y: Coweight) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))

    # -- orbits, dominance, minuscule ----------------------------------

    def weyl_orbit(self, lam: Coweight) -> tuple[Coweight, ...]:
        lam = tuple(lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            mu = frontier.pop()
            for i in range(self.num_simple):
                nu = self.reflect(i, mu)
                if nu not in seen:
                    seen.add(nu)
                    frontier.append(nu)
        return tuple(sorted(seen, reverse=True))

    def is_dominant(self, lam: Coweight) -> bool:
        return all(_dot(a, lam) >= 0 for a in self.simple_roots)

    def dominant_representative(self, lam: Coweight) -> Coweight:
        lam = tuple(lam)
        while True:
            for i in range(self.num_simple):
                if _dot(self.simple_roots[i], lam) < 0:
                    lam = self.reflect(i, lam)
                    break
            else:
                return lam

    def dominance_leq(self, mu: Coweight, lam: Coweight) -> bool:
        """mu <= lam: lam - mu is a nonnegative integer sum of simple coroots."""
        diff = tuple(l - m for l, m in zip(lam, mu))
        coeffs = solve_integer_combination(list(self.simple_coroots), diff)
        if coeffs is None:
            return False
        return all(c >= 0 and c.denominator == 1 for c in coeffs)

    def is_minuscule(self, lam: Coweight) -> bool:
        dom = self.dominant_representative(lam)
        return all(_dot(a, dom) in (-1, 0, 1) for a in self.roots)

    def rho_pairing_exponent(self, lam: Coweight) -> int:
        """<2 rho, lam>, so q**<rho,lam> = v**<2rho,lam>."""
        return _dot(self.two_rho, lam)

    def dominants_below(self, lam: Coweight) -> tuple[Coweight, ...]:
        """All dominant mu <= lam, found by walking down simple coroots."""
        if not self.is_dominant(lam):
            raise ValidationError("dominants_below expects a dominant coweight")
        seen = {tuple(lam)}
        frontier = [tuple(lam)]
        while frontier:
            mu = frontier.pop()
            for av in self.simple_coroots:
                nu = tuple(x - y for x, y in zip(mu, av))
                if nu not in seen and self.rho_pairing_exponent(nu) >= 0:
                    seen.add(nu)
                    frontier.append(nu)
        doms = [mu for mu in seen if self.is_dominant(mu) and self.dominance_leq(mu, lam)]
        return tuple(sorted(doms, reverse=True))

    def small_minuscule_dominants(self) -> tuple[Coweight, ...]:
        """Representative minuscule dominant coweights with small entries.

        For families with a central torus the list is a window, not
        exhaustive (central shifts of a minuscule coweight stay
        minuscule).
        """
        window = (0, 1) if self.family in ("GL", "Sp") else (-1, 0, 1)
        out = []
        for cand in itertools.product(window, repeat=self.rank):
            if self.is_dominant(cand) and self.is_minuscule(cand):
                out.append(cand)
        return tuple(sorted(out, reverse=True))

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BasedRootDatum":
        try:
            return cls(str(obj["family"]), int(obj["rank"]),
                       [tuple(a) for a in obj["simple_roots"]],
                       [tuple(a) for a in obj["simple_coroots"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed datum JSON: {exc}") from exc

    def __repr__(self):
        return f"BasedRootDatum({self.family}, rank={self.rank})"


def build_standard(family: str, n: int) -> BasedRootDatum:
    """Standard datum for GL_n, SL_n, PGL_n or Sp_n (n even)."""
    if family == "GL":
        if n < 1:
            raise ValidationError("GL needs n >= 1")
        roots = []
        coroots = []
        for i in range(n - 1):
            vec = tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(n))
            roots.append(vec)
            coroots.append(vec)
        return BasedRootDatum("GL", n, roots, coroots)
    if family in ("SL", "PGL"):
        if n < 2:
            raise ValidationError(f"{family} needs n >= 2")
        r = n - 1
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                   for j in range(r)] for i in range(r)]
        basis = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        if family == "SL":
            # lattice = coroot lattice: coroots are the basis, roots are
            # Cartan rows
            return BasedRootDatum("SL", r, [tuple(row) for row in cartan], basis)
        # PGL: lattice = coweight lattice: roots are the dual basis,
        # coroots are Cartan columns (= rows in type A)
        return BasedRootDatum("PGL", r, basis, [tuple(row) for row in cartan])
    if family == "Sp":
        # Sp_n for even n, type C_{n/2} on the lattice Z^{n/2}
        if n < 2 or n % 2 != 0:
            raise ValidationError("Sp needs even n >= 2")
        m = n // 2
        roots = []
        coroots = []
        for i in range(m - 1):
            vec = tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(m))
            roots.append(vec)
            coroots.append(vec)
        last = tuple(1 if j == m - 1 else 0 for j in range(m))
        roots.append(tuple(2 * x for x in last))
        coroots.append(last)
        return BasedRootDatum("Sp", m, roots, coroots)
    raise ValidationError(f"unsupported family {family!r} "
                          f"(expected one of {SUPPORTED_FAMILIES})")
