import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

RATIONALS = "Rationals"
PRIME_FIELD = "PrimeField"


class FieldError(ValueError):
    """Raised for invalid field descriptors and malformed scalar literals."""


class FieldMismatchError(ValueError):
    """Raised when an operation mixes scalars of different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _mod_inverse(a: int, p: int) -> int:
    """Extended Euclid: returns x with a*x = 1 (mod p)."""
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroDivisionError(f"{a} is not invertible modulo {p}")
    return old_s % p


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == PRIME_FIELD:
            if self.modulus is None or not is_prime(self.modulus):
                raise FieldError(f"modulus {self.modulus} is not prime")
        else:
            raise FieldError(f"unknown field kind: {self.kind}")

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldDescriptor":
        return cls(PRIME_FIELD, int(p))

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_prime_field else 0

    def zero(self) -> "Scalar":
        return Scalar(0, self)

    def one(self) -> "Scalar":
        return Scalar(1, self)

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, literal string or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value} belongs to {value.field}, not {self}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, (int, Fraction)):
            return Scalar(value, self)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def label(self) -> str:
        return "rational" if not self.is_prime_field else f"gf:{self.modulus}"

    def __str__(self):
        return "Q" if not self.is_prime_field else f"GF({self.modulus})"


def parse_field(text: str) -> FieldDescriptor:
    """
    Parse a field name.

    Accepts "rational", "gf:<p>" and "gf <p>".
    """
    cleaned = text.strip().lower()
    if cleaned in ("rational", "rationals", "q"):
        return FieldDescriptor.rationals()
    for sep in (":", " "):
        if cleaned.startswith("gf" + sep):
            modulus = cleaned[3:].strip()
            if not modulus.isdigit():
                raise FieldError(f"malformed modulus in field '{text}'")
            return FieldDescriptor.prime(int(modulus))
    raise FieldError(f"unknown field '{text}'")


@total_ordering
class Scalar:
    """
    Exact field element: a reduced Fraction over Q, or a residue in [0, p) over GF(p).

    Immutable. Equality compares canonical representations and fields.
    """

    __slots__ = ("_value", "_field")

    def __init__(self, value, field: FieldDescriptor):
        if field.is_prime_field:
            if isinstance(value, Fraction):
                if value.denominator % field.modulus == 0:
                    raise ZeroDivisionError(f"denominator of {value} vanishes in {field}")
                value = value.numerator * _mod_inverse(value.denominator, field.modulus)
            value = int(value) % field.modulus
        else:
            value = Fraction(value)
        object.__setattr__(self, "_value", value)
        object.__setattr__(self, "_field", field)

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    @property
    def value(self) -> Fraction | int:
        return self._value

    @property
    def field(self) -> FieldDescriptor:
        return self._field

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other._field != self._field:
                raise FieldMismatchError(f"cannot combine {self._field} with {other._field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, self._field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self._field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            base = mul(base, base)
            exponent >>= 1
        return result

    def __bool__(self):
        return not is_zero(self)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._field == other._field and self._value == other._value
        if isinstance(other, int):
            return self == Scalar(other, self._field)
        return NotImplemented

    def __lt__(self, other):
        # Only used for deterministic sorting; residues order by canonical value.
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._value < other._value

    def __hash__(self):
        return hash((self._field, self._value))

    def __str__(self):
        if self._field.is_prime_field:
            return str(self._value)
        if self._value.denominator == 1:
            return str(self._value.numerator)
        return f"{self._value.numerator}/{self._value.denominator}"

    def __repr__(self):
        return f"Scalar({self}, {self._field})"

    def is_integral(self) -> bool:
        return self._field.is_prime_field or self._value.denominator == 1


def _check_same_field(a: Scalar, b: Scalar):
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} with {b.field}")


def add(a: Scalar, b: Scalar) -> Scalar:
    _check_same_field(a, b)
    return Scalar(a.value + b.value, a.field)


def sub(a: Scalar, b: Scalar) -> Scalar:
    _check_same_field(a, b)
    return Scalar(a.value - b.value, a.field)


def mul(a: Scalar, b: Scalar) -> Scalar:
    _check_same_field(a, b)
    return Scalar(a.value * b.value, a.field)


def neg(a: Scalar) -> Scalar:
    return Scalar(-a.value, a.field)


def inv(a: Scalar) -> Scalar:
    if is_zero(a):
        raise ZeroDivisionError(f"inverse of zero in {a.field}")
    if a.field.is_prime_field:
        return Scalar(_mod_inverse(a.value, a.field.modulus), a.field)
    return Scalar(1 / a.value, a.field)


def div(a: Scalar, b: Scalar) -> Scalar:
    _check_same_field(a, b)
    return mul(a, inv(b))


def is_zero(a: Scalar) -> bool:
    return a.value == 0


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    """
    Parse a literal scalar such as "3", "-5/6" or "+2".

    Raises:
        FieldError: for malformed literals or a zero denominator.
    """
    literal = text.strip().replace(" ", "")
    sign = 1
    if literal[:1] in ("+", "-"):
        sign = -1 if literal[0] == "-" else 1
        literal = literal[1:]
    numerator, slash, denominator = literal.partition("/")
    if not numerator.isdigit() or (slash and not denominator.isdigit()):
        raise FieldError(f"malformed scalar '{text}'")
    den = int(denominator) if slash else 1
    if den == 0:
        raise FieldError(f"zero denominator in scalar '{text}'")
    try:
        return Scalar(Fraction(sign * int(numerator), den), field)
    except ZeroDivisionError as e:
        raise FieldError(f"scalar '{text}' is undefined in {field}: {e}") from e


def reinterpret(a: Scalar, field: FieldDescriptor) -> Scalar:
    """Move an integer-valued scalar into another field (used for field overrides)."""
    if a.field == field:
        return a
    if not a.is_integral():
        raise FieldError(f"non-integer coefficient {a} cannot be reinterpreted in {field}")
    integer = a.value if a.field.is_prime_field else a.value.numerator
    logging.debug(f"Reinterpreting {a} from {a.field} into {field}")
    return Scalar(integer, field)
