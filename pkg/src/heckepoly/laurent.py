"""Exact coefficient arithmetic in the half-power variable v (v**2 = q).

Coefficients throughout the package live in the Laurent polynomial ring
Z[v, v**-1].  Working with the half power v instead of q keeps every
exponent integral: q**(1/2) is v, and a twist like q**<rho,mu> is
v**<2*rho,mu>.  A LaurentHalf is a mapping {exponent: coefficient} with
no stored zero coefficients; coefficients are Python ints, so all
arithmetic is arbitrary precision and exact.  There is no floating
point anywhere in this package.

Scalar domains fix a numeric meaning for v:

* ``RationalWithV``   -- v maps to a nonzero rational, values are Fractions;
* ``PrimeFieldWithV`` -- v maps to a chosen square root of q modulo a
  prime ell, values are residues in range(ell).

The generic (symbolic) torus domain lives in ``heckepoly.satake``
because its scalars are lattice group-algebra elements rather than
plain numbers.

The canonical string form of a LaurentHalf is ``"c*v^e"`` terms joined
by ``"+"``, exponents ascending, e.g. ``"-1*v^-2+3*v^0+1*v^2"``; the
zero polynomial prints as ``"0"``.  ``LaurentHalf.parse`` inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Any

from .errors import ValidationError


class LaurentHalf:
    """Laurent polynomial in v with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = clean.get(int(e), 0) + int(c)
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentHalf":
        return cls()

    @classmethod
    def from_int(cls, n: int) -> "LaurentHalf":
        return cls({0: n})

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "LaurentHalf":
        return cls({e: coeff})

    @classmethod
    def parse(cls, text: str) -> "LaurentHalf":
        """Parse the canonical ``c*v^e`` serialization."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        terms: dict[int, int] = {}
        for tok in text.split("+"):
            tok = tok.strip()
            try:
                c_str, e_str = tok.split("*v^")
                e = int(e_str)
                c = int(c_str)
            except ValueError as exc:
                raise ValidationError(f"bad Laurent term {tok!r}") from exc
            terms[e] = terms.get(e, 0) + c
        return cls(terms)

    # -- views -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Exponent -> coefficient mapping.  Treat as read-only."""
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = LaurentHalf.from_int(other)
        if not isinstance(other, LaurentHalf):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentHalf({self.serialize()!r})"

    def __str__(self) -> str:
        return self.serialize()

    def serialize(self) -> str:
        if not self._terms:
            return "0"
        return "+".join(f"{c}*v^{e}" for e, c in sorted(self._terms.items()))

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(x: Any) -> "LaurentHalf":
        if isinstance(x, LaurentHalf):
            return x
        if isinstance(x, int):
            return LaurentHalf.from_int(x)
        return NotImplemented

    def __add__(self, other: Any) -> "LaurentHalf":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentHalf(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentHalf":
        return LaurentHalf({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "LaurentHalf":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "LaurentHalf":
        return (-self) + other

    def __mul__(self, other: Any) -> "LaurentHalf":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentHalf(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentHalf":
        if k < 0:
            return self.monomial_inverse() ** (-k)
        result = LaurentHalf.from_int(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, e: int) -> "LaurentHalf":
        """Multiply by v**e."""
        return LaurentHalf({e0 + e: c for e0, c in self._terms.items()})

    def is_unit(self) -> bool:
        """Units of Z[v, v^-1] are +-v^e."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_inverse(self) -> "LaurentHalf":
        if not self.is_unit():
            raise ValidationError(f"{self} is not invertible in Z[v,v^-1]")
        ((e, c),) = self._terms.items()
        return LaurentHalf({-e: c})

    # -- specialization -----------------------------------------------

    def eval_fraction(self, v_value: Fraction) -> Fraction:
        return sum((Fraction(c) * v_value**e for e, c in self._terms.items()),
                   Fraction(0))

    def eval_mod(self, v_image: int, ell: int) -> int:
        total = 0
        for e, c in self._terms.items():
            total = (total + c * pow(v_image, e, ell)) % ell
        return total % ell


ZERO = LaurentHalf.zero()
ONE = LaurentHalf.from_int(1)
V = LaurentHalf.v_power(1)
Q = LaurentHalf.v_power(2)


@dataclass(frozen=True)
class FracScaled:
    """A ring element divided by a single nonzero Laurent scalar.

    The only denominators the package ever needs are Poincare
    polynomials, so a full fraction field would be overkill.
    """

    numerator: Any
    denominator: LaurentHalf = ONE

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ValidationError("FracScaled denominator must be nonzero")

    def is_trivial(self) -> bool:
        return self.denominator == ONE

    def reduce(self) -> Any:
        """Return the bare numerator when the denominator is 1."""
        if not self.is_trivial():
            raise ValidationError("denominator is not 1")
        return self.numerator


# ---------------------------------------------------------------------------
# scalar domains


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def validate_sqrt(ell: int, q_residue: int, v_image: int) -> bool:
    """True iff v_image is a nonzero square root of q_residue mod ell."""
    if not is_prime(ell):
        raise ValidationError(f"{ell} is not prime")
    v_image %= ell
    return v_image != 0 and (v_image * v_image - q_residue) % ell == 0


class ScalarDomain:
    """Common interface of the coefficient specializations.

    A domain interprets v as a concrete invertible scalar and provides
    exact ring operations on its scalar type.  All concrete domains are
    immutable; scalar values are plain Python objects.
    """

    kind: str = "abstract"

    def reduce(self, x: LaurentHalf):
        raise NotImplementedError

    def from_int(self, n: int):
        return self.reduce(LaurentHalf.from_int(n))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one()
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def random_unit(self, rng):
        raise NotImplementedError

    def scalar_str(self, a) -> str:
        raise NotImplementedError

    def parse_scalar(self, text: str):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, ScalarDomain) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(tuple(sorted(self.to_json().items())))


class RationalWithV(ScalarDomain):
    """Exact rationals with a fixed nonzero rational value of v."""

    kind = "rational-with-v"

    def __init__(self, v_value):
        v_value = Fraction(v_value)
        if v_value == 0:
            raise ValidationError("v must be nonzero")
        self.v_value = v_value

    def reduce(self, x: LaurentHalf) -> Fraction:
        return x.eval_fraction(self.v_value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ValidationError("division by zero")
        return 1 / Fraction(a)

    def pow(self, a, k: int):
        if a == 0 and k < 0:
            raise ValidationError("division by zero")
        return Fraction(a) ** k

    def is_zero(self, a) -> bool:
        return a == 0

    def random_unit(self, rng) -> Fraction:
        num = rng.choice([n for n in range(-9, 10) if n != 0])
        den = rng.randint(1, 9)
        return Fraction(num, den)

    def scalar_str(self, a) -> str:
        return str(Fraction(a))

    def parse_scalar(self, text: str) -> Fraction:
        return Fraction(text)

    def to_json(self) -> dict:
        return {"kind": self.kind, "v_value": str(self.v_value)}

    def __repr__(self):
        return f"RationalWithV({self.v_value})"


class PrimeFieldWithV(ScalarDomain):
    """F_ell with a chosen square root v_image of the residue of q."""

    kind = "prime-field-with-v"

    def __init__(self, ell: int, v_image: int, q_residue: int | None = None):
        if not is_prime(ell):
            raise ValidationError(f"{ell} is not prime")
        v_image %= ell
        if v_image == 0:
            raise ValidationError("v_image must be nonzero")
        if q_residue is None:
            q_residue = (v_image * v_image) % ell
        if not validate_sqrt(ell, q_residue, v_image):
            raise ValidationError(
                f"v_image={v_image} squares to {(v_image * v_image) % ell}, "
                f"not to q={q_residue % ell} (mod {ell})")
        self.ell = ell
        self.v_image = v_image
        self.q_residue = q_residue % ell

    def reduce(self, x: LaurentHalf) -> int:
        return x.eval_mod(self.v_image, self.ell)

    def add(self, a, b):
        return (a + b) % self.ell

    def neg(self, a):
        return (-a) % self.ell

    def mul(self, a, b):
        return (a * b) % self.ell

    def inv(self, a):
        if a % self.ell == 0:
            raise ValidationError("division by zero")
        return pow(a, -1, self.ell)

    def pow(self, a, k: int):
        if a % self.ell == 0 and k < 0:
            raise ValidationError("division by zero")
        return pow(a, k, self.ell)

    def is_zero(self, a) -> bool:
        return a % self.ell == 0

    def random_unit(self, rng) -> int:
        return rng.randrange(1, self.ell)

    def scalar_str(self, a) -> str:
        return str(a % self.ell)

    def parse_scalar(self, text: str) -> int:
        return int(text) % self.ell

    def to_json(self) -> dict:
        return {"kind": self.kind, "ell": self.ell, "v_image": self.v_image,
                "q_residue": self.q_residue}

    def __repr__(self):
        return f"PrimeFieldWithV(ell={self.ell}, v_image={self.v_image})"
