"""Exact scalar arithmetic: the rational field and prime fields GF(p).

Scalars are plain Python values: ``fractions.Fraction`` for the rationals and
canonical ``int`` residues in ``range(p)`` for GF(p).  A field object supplies
the arithmetic, so the matrix and algebra code downstream is field-generic.
No operation ever rounds; division by zero raises ``ZeroDivisionError``.

Field objects are stateless and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; exact for every modulus below 3.3e24.
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field of arbitrary-precision rationals."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    @staticmethod
    def div(a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    # Row kernels used by the elimination loops in linalg.
    @staticmethod
    def row_scale(row, c):
        return [x * c for x in row]

    @staticmethod
    def row_submul(row, f, pivot_row):
        return [a - f * b for a, b in zip(row, pivot_row)]

    @staticmethod
    def format_scalar(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash(Rationals)


class PrimeField:
    """GF(p) with residues stored as canonical ints in ``range(p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.modulus = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n: int) -> int:
        return n % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inv(self, a):
        if a % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return a * self.inv(b) % self.modulus

    def row_scale(self, row, c):
        p = self.modulus
        return [x * c % p for x in row]

    def row_submul(self, row, f, pivot_row):
        p = self.modulus
        return [(a - f * b) % p for a, b in zip(row, pivot_row)]

    @staticmethod
    def format_scalar(x: int) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"GF({self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash((PrimeField, self.modulus))


QQ = Rationals()

#: GF(p) used by the verification harness; large enough that desk-scale
#: rational results reduce mod p without collisions.
DEFAULT_PRIME = 1000003

Field = Rationals | PrimeField


def parse_field_spec(spec: str) -> Field:
    """Parse a field selector: ``q`` for the rationals, ``gf:<p>`` for GF(p)."""
    if spec == "q":
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad field spec {spec!r}: modulus is not an integer") from None
        return PrimeField(p)
    raise ValueError(f"bad field spec {spec!r}: expected 'q' or 'gf:<prime>'")


def field_spec(field: Field) -> str:
    """Inverse of :func:`parse_field_spec`."""
    if isinstance(field, Rationals):
        return "q"
    return f"gf:{field.modulus}"
