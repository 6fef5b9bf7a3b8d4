"""Exact arithmetic in Q and in the two number fields Q(a), a^2+a-1=0, and
Q(g), g^4-g^3+g^2-g+1=0.

Elements are coefficient vectors over :class:`fractions.Fraction` in the power
basis 1, x, ..., x^(d-1), always reduced modulo the defining polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldError",
    "FieldMismatchError",
    "ElementSyntaxError",
    "FieldDescriptor",
    "FieldElement",
    "QQ",
    "QA",
    "QG",
    "FIELDS",
    "field_from_name",
    "arith",
    "inv",
    "galois",
    "parse_element",
    "format_element",
]


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


class ElementSyntaxError(FieldError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at column {pos + 1} in {text!r}"
        super().__init__(message)


Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class FieldDescriptor:
    """One of the three preset fields.

    ``modulus`` holds the monic defining polynomial in ascending order
    (``None`` for Q).
    """

    kind: str
    modulus: tuple[int, ...] | None
    generator: str | None
    has_real_embedding: bool
    name: str

    @property
    def degree(self) -> int:
        return 1 if self.modulus is None else len(self.modulus) - 1

    @property
    def galois_exponents(self) -> tuple[int, ...]:
        return {"rationals": (1,), "quadratic": (1, 2), "cyclotomic10": (1, 3, 7, 9)}[self.kind]

    def element(self, coeffs: Iterable[Scalar]) -> FieldElement:
        """Build an element from (possibly unreduced) ascending coefficients."""
        return FieldElement(self, _reduce(self, [Fraction(c) for c in coeffs]))

    def __call__(self, value: Union[Scalar, str, "FieldElement"]) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field.name} used in {self.name}")
            return value
        if isinstance(value, str):
            return parse_element(value, self)
        return self.element([value])

    @property
    def zero(self) -> FieldElement:
        return self.element([0])

    @property
    def one(self) -> FieldElement:
        return self.element([1])

    @property
    def gen(self) -> FieldElement:
        if self.modulus is None:
            raise FieldError("Q has no generator")
        return self.element([0, 1])

    def __repr__(self) -> str:
        return f"FieldDescriptor({self.name})"


QQ = FieldDescriptor("rationals", None, None, True, "Q")
QA = FieldDescriptor("quadratic", (-1, 1, 1), "a", True, "Q[a]/(a^2+a-1)")
QG = FieldDescriptor("cyclotomic10", (1, -1, 1, -1, 1), "g", False, "Q[g]/(g^4-g^3+g^2-g+1)")

FIELDS = {f.name: f for f in (QQ, QA, QG)}


def field_from_name(name: str) -> FieldDescriptor:
    key = re.sub(r"\s+", "", name)
    try:
        return FIELDS[key]
    except KeyError:
        raise FieldError(f"unknown field {name!r}; expected one of {', '.join(FIELDS)}") from None


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _reduce(field: FieldDescriptor, poly: list[Fraction]) -> tuple[Fraction, ...]:
    d = field.degree
    mod = field.modulus
    if mod is not None:
        for top in range(len(poly) - 1, d - 1, -1):
            c = poly[top]
            if c:
                shift = top - d
                for i in range(d):
                    if mod[i]:
                        poly[shift + i] -= c * mod[i]
                poly[top] = _ZERO
    out = list(poly[:d])
    out.extend([_ZERO] * (d - len(out)))
    return tuple(out)


class FieldElement:
    """Immutable element of a preset field."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != field.degree:
            raise FieldError(f"expected {field.degree} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.coeffs))

    # coercion

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.coeffs[0]) if self.is_rational() else hash((self.field.kind, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        d = len(a)
        if d == 1:
            return FieldElement(self.field, (a[0] * b[0],))
        prod = [_ZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, _reduce(self.field, prod))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.modulus is None:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        if self.is_rational():
            return self.field.element([1 / self.coeffs[0]])
        return self.field.element(_poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in self.field.modulus]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> FieldElement:
        return galois(self, k)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.name}, {format_element(self)!r})"


# polynomial helpers over Q, ascending coefficient lists


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        _trim(a)
    return _trim(q), a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _trim(out)


def _poly_inverse_mod(p: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of p modulo the irreducible m by the extended Euclidean algorithm."""
    r0, r1 = _trim(list(m)), _trim(list(p))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise FieldError("element is not invertible modulo the defining polynomial")
    c = r1[0]
    return [x / c for x in s1]


# operation-style API


def arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "neg":
        return -x
    if y is None:
        raise FieldError(f"{op} needs two operands")
    if x.field != y.field:
        raise FieldMismatchError(f"{x.field.name} vs {y.field.name}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise FieldError(f"unknown operation {op!r}")


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def galois(x: FieldElement, k: int) -> FieldElement:
    """Apply the field automorphism indexed by ``k``.

    For Q(g) this is g -> g^k with k a unit mod 10; for Q(a), k=2 is the
    conjugation a -> -1-a; k=1 is the identity everywhere.
    """
    field = x.field
    if k not in field.galois_exponents:
        raise FieldError(f"invalid Galois index {k} for {field.name}; expected one of {field.galois_exponents}")
    if k == 1:
        return x
    if field.kind == "quadratic":
        c0, c1 = x.coeffs
        return FieldElement(field, (c0 - c1, -c1))
    image = field.gen ** k
    result = field.zero
    power = field.one
    for c in x.coeffs:
        if c:
            result = result + power * c
        power = power * image
    return result


# text format

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ElementSyntaxError(f"unexpected character {m.group(kind)!r}", text, m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: FieldDescriptor):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str, tok=None):
        pos = tok[2] if tok is not None else len(self.text.rstrip())
        raise ElementSyntaxError(message, self.text, pos)

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            self.error(f"expected {value or kind}", tok)
        self.i += 1
        return tok

    def accept_op(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def parse(self) -> list[Fraction]:
        if not self.tokens:
            self.error("empty expression")
        coeffs: dict[int, Fraction] = {}
        sign = -1 if self.accept_op("-") else 1
        while True:
            c, k = self.term()
            coeffs[k] = coeffs.get(k, _ZERO) + sign * c
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                sign = 1 if tok[1] == "+" else -1
                continue
            self.error(f"unexpected {tok[1]!r}", tok)
        top = max(coeffs)
        return [coeffs.get(i, _ZERO) for i in range(top + 1)]

    def generator_power(self) -> int:
        tok = self.take("name")
        name = tok[1]
        if name != self.field.generator:
            if name in ("a", "g"):
                self.error(f"wrong generator {name!r} for field {self.field.name}", tok)
            self.error(f"unknown symbol {name!r}", tok)
        if self.accept_op("^"):
            return int(self.take("int")[1])
        return 1

    def term(self) -> tuple[Fraction, int]:
        sign = -1 if self.accept_op("-") else 1
        tok = self.peek()
        if tok is None:
            self.error("expected term")
        if tok[0] == "name":
            return Fraction(sign), self.generator_power()
        if tok[0] != "int":
            self.error(f"unexpected {tok[1]!r}", tok)
        self.i += 1
        value = Fraction(int(tok[1]))
        if self.accept_op("/"):
            den = self.take("int")
            if int(den[1]) == 0:
                self.error("zero denominator", den)
            value /= int(den[1])
        if self.accept_op("*"):
            return sign * value, self.generator_power()
        return sign * value, 0


def parse_element(text: str, field: FieldDescriptor) -> FieldElement:
    """Parse a rational-coefficient polynomial in the field's generator.

    >>> parse_element("-3/2*g^2 + g - 1", QG).coeffs
    (Fraction(-1, 1), Fraction(1, 1), Fraction(-3, 2), Fraction(0, 1))
    """
    return field.element(_Parser(text, field).parse())


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(x: FieldElement) -> str:
    """Canonical text form, highest degree first, e.g. ``-3/2*g^2 + g - 1``."""
    gen = x.field.generator
    parts: list[tuple[bool, str]] = []
    for k in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[k]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _format_rational(mag)
        else:
            mono = gen if k == 1 else f"{gen}^{k}"
            body = mono if mag == 1 else f"{_format_rational(mag)}*{mono}"
        parts.append((neg, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def coerce_all(field: FieldDescriptor, values: Sequence[Union[Scalar, str, FieldElement]]) -> tuple[FieldElement, ...]:
    return tuple(field(v) for v in values)
