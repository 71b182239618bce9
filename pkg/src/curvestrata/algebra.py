"""Exact scalars and homogeneous binary forms in k[u, v].

Two ground fields are supported: the rationals (arbitrary precision, via
:class:`fractions.Fraction`) and prime fields F_p.  Raw field elements are
kept in canonical form throughout: a reduced ``Fraction`` over Q, an ``int``
in ``[0, p)`` over F_p.  :class:`Scalar` wraps a raw value together with its
field for callers that want checked operator arithmetic.

A binary form of degree d is stored as the tuple of its d+1 coefficients in
u-descending order, so index j holds the coefficient of u^(d-j) v^j::

    u^2 - 2*u*v + v^2   ->  (1, -2, 1)
    v^2                 ->  (0, 0, 1)

The zero form is a distinct value with an empty coefficient tuple and no
degree; it is compatible with every degree in sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    BothZero,
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroForm,
    ZeroPoint,
)

Raw = Union[int, Fraction]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    """A ground field: Q when ``characteristic == 0``, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> int | None:
        return self.characteristic or None

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __repr__(self) -> str:
        return f"Field({self.name})"

    # raw element arithmetic -------------------------------------------------

    def reduce(self, x: Raw) -> Raw:
        """Canonical representative of an int or Fraction in this field."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise DivisionByZero("scalar_arith", f"denominator {x.denominator} is 0 mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a: Raw, b: Raw) -> Raw:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a: Raw) -> Raw:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise DivisionByZero("scalar_arith", "zero has no inverse")
        p = self.characteristic
        return 1 / a if p == 0 else pow(a, -1, p)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        if self.characteristic == 0:
            raise ValueError("Q is infinite")
        return range(self.characteristic)

    def render(self, a: Raw) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def __call__(self, value: Raw) -> "Scalar":
        return Scalar(self, self.reduce(value))


QQ = Field(0)


@dataclass(frozen=True)
class Scalar:
    """An element of a :class:`Field` with checked operator arithmetic."""

    field: Field
    value: Raw

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.field.reduce(self.value))

    def _other(self, other: object) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch("scalar_arith", f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.reduce(other)
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, raw: Raw) -> "Scalar":
        return Scalar(self.field, raw)

    def __add__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other: object) -> "Scalar":
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self) -> "Scalar":
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch("scalar_arith", f"{self.field.name} vs {other.field.name}")
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.reduce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.render(self.value)


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar | bool:
    """Dispatch one of add, sub, mul, div, inv, neg, eq on scalars."""
    if b is not None and a.field != b.field:
        raise FieldMismatch("scalar_arith", f"{a.field.name} vs {b.field.name}")
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# univariate helpers on high-to-low coefficient lists -------------------------


def _strip_high(field: Field, p: list) -> list:
    i = 0
    while i < len(p) and not p[i]:
        i += 1
    return p[i:]


def _poly_divmod(field: Field, a: list, b: list) -> tuple[list, list]:
    """Long division of high-to-low lists; ``b`` must have a nonzero lead."""
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], _strip_high(field, a)
    inv_lead = field.inv(b[0])
    q = []
    for i in range(len(a) - db):
        c = field.mul(a[i], inv_lead)
        q.append(c)
        if c:
            for k in range(1, db + 1):
                a[i + k] = field.sub(a[i + k], field.mul(c, b[k]))
        a[i] = field.zero
    return q, _strip_high(field, a[len(a) - db:])


def _poly_gcd(field: Field, a: list, b: list) -> list:
    a = _strip_high(field, a)
    b = _strip_high(field, b)
    while b:
        _, r = _poly_divmod(field, a, b)
        a, b = b, r
    if not a:
        return a
    inv_lead = field.inv(a[0])
    return [field.mul(c, inv_lead) for c in a]


# binary forms -----------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in u, v; see the module docstring for layout."""

    field: Field
    coeffs: tuple

    @classmethod
    def zero(cls, field: Field) -> "BinaryForm":
        return cls(field, ())

    @classmethod
    def from_coeffs(cls, field: Field, coeffs: Iterable[Raw]) -> "BinaryForm":
        """Build a degree ``len(coeffs) - 1`` form; all-zero input gives Zero."""
        cs = tuple(field.reduce(c) for c in coeffs)
        if not any(cs):
            return cls(field, ())
        return cls(field, cs)

    @classmethod
    def constant(cls, field: Field, c: Raw) -> "BinaryForm":
        return cls.from_coeffs(field, (c,))

    @classmethod
    def monomial(cls, field: Field, a: int, b: int, c: Raw = 1) -> "BinaryForm":
        """``c * u^a * v^b``."""
        cs = [0] * (a + b + 1)
        cs[b] = c
        return cls.from_coeffs(field, cs)

    @classmethod
    def u(cls, field: Field) -> "BinaryForm":
        return cls.monomial(field, 1, 0)

    @classmethod
    def v(cls, field: Field) -> "BinaryForm":
        return cls.monomial(field, 0, 1)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def coefficients(self) -> tuple[Scalar, ...]:
        return tuple(Scalar(self.field, c) for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"BinaryForm({self.field.name}, {render_form(self)!r})"

    def __str__(self) -> str:
        return render_form(self)

    def _check(self, other: "BinaryForm", op: str) -> None:
        if self.field != other.field:
            raise FieldMismatch(op, f"{self.field.name} vs {other.field.name}")

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        return bf_add(self, other)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return bf_sub(self, other)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        return bf_mul(self, other)

    def __neg__(self) -> "BinaryForm":
        return bf_scale(self, self.field.neg(self.field.one))

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm.constant(self.field, 1)
        for _ in range(k):
            out = bf_mul(out, self)
        return out

    def pure_powers(self) -> tuple[int, int]:
        """Exponents (a, b) of the largest u^a v^b dividing a nonzero form."""
        cs = self.coeffs
        b = 0
        while not cs[b]:
            b += 1
        a = 0
        while not cs[-1 - a]:
            a += 1
        return a, b


def _addsub(F: BinaryForm, G: BinaryForm, sign: int, op: str) -> BinaryForm:
    F._check(G, op)
    field = F.field
    if G.is_zero:
        return F
    if F.is_zero:
        return G if sign > 0 else -G
    if len(F.coeffs) != len(G.coeffs):
        raise DegreeMismatch(op, f"degrees {F.degree} and {G.degree}")
    f = field.add if sign > 0 else field.sub
    return BinaryForm.from_coeffs(field, (f(a, b) for a, b in zip(F.coeffs, G.coeffs)))


def bf_add(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    return _addsub(F, G, 1, "bf_add")


def bf_sub(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    return _addsub(F, G, -1, "bf_sub")


def bf_mul(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    F._check(G, "bf_mul")
    if F.is_zero or G.is_zero:
        return BinaryForm.zero(F.field)
    field = F.field
    out = [field.zero] * (len(F.coeffs) + len(G.coeffs) - 1)
    for i, a in enumerate(F.coeffs):
        if a:
            for j, b in enumerate(G.coeffs):
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return BinaryForm.from_coeffs(field, out)


def bf_scale(F: BinaryForm, c: Raw | Scalar) -> BinaryForm:
    field = F.field
    if isinstance(c, Scalar):
        if c.field != field:
            raise FieldMismatch("bf_scale", f"{field.name} vs {c.field.name}")
        c = c.value
    c = field.reduce(c)
    if not c:
        return BinaryForm.zero(field)
    return BinaryForm(field, tuple(field.mul(a, c) for a in F.coeffs))


def bf_ring_op(F: BinaryForm, G: BinaryForm | Raw | Scalar, op: str) -> BinaryForm:
    """Dispatch add, sub, mul or scale (``G`` is then a scalar)."""
    if op == "scale":
        return bf_scale(F, G)  # type: ignore[arg-type]
    ops = {"add": bf_add, "sub": bf_sub, "mul": bf_mul}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](F, G)  # type: ignore[arg-type]


def bf_div_exact(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Return Q with ``F == G * Q``, or raise :class:`NotDivisible`."""
    F._check(G, "bf_div_exact")
    field = F.field
    if G.is_zero:
        raise DivisionByZero("bf_div_exact", "division by the zero form")
    if F.is_zero:
        return F
    dq = len(F.coeffs) - len(G.coeffs)
    if dq < 0:
        raise NotDivisible("bf_div_exact", f"degree {F.degree} < {G.degree}")
    # Dehomogenize at v = 1: the coefficient tuple is then the high-to-low list.
    a = _strip_high(field, list(F.coeffs))
    b = _strip_high(field, list(G.coeffs))
    q, r = _poly_divmod(field, a, b)
    if r:
        raise NotDivisible("bf_div_exact", f"{render_form(G)} does not divide {render_form(F)}")
    q = _strip_high(field, q)
    # Leading zeros of the tuple are powers of v lost by dehomogenizing.
    if len(q) > dq + 1:
        raise NotDivisible("bf_div_exact", f"{render_form(G)} does not divide {render_form(F)}")
    return BinaryForm.from_coeffs(field, [field.zero] * (dq + 1 - len(q)) + q)


def bf_normalize_monic(F: BinaryForm) -> BinaryForm:
    if F.is_zero:
        raise ZeroForm("bf_normalize_monic", "cannot normalize the zero form")
    field = F.field
    lead = next(c for c in F.coeffs if c)
    if lead == field.one:
        return F
    inv = field.inv(lead)
    return BinaryForm(field, tuple(field.mul(c, inv) for c in F.coeffs))


def bf_gcd(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Monic greatest common divisor of two binary forms."""
    F._check(G, "bf_gcd")
    field = F.field
    if F.is_zero and G.is_zero:
        raise BothZero("bf_gcd", "gcd(0, 0) is undefined")
    if G.is_zero:
        return bf_normalize_monic(F)
    if F.is_zero:
        return bf_normalize_monic(G)
    fa, fb = F.pure_powers()
    ga, gb = G.pure_powers()
    # Stripped of u and v factors, both tuples have nonzero first and last
    # entries: the v = 1 dehomogenization keeps full degree and no root at 0.
    f = list(F.coeffs[fb:len(F.coeffs) - fa])
    g = list(G.coeffs[gb:len(G.coeffs) - ga])
    h = _poly_gcd(field, f, g)
    a, b = min(fa, ga), min(fb, gb)
    return BinaryForm.from_coeffs(field, [field.zero] * b + h + [field.zero] * a)


def bf_gcd_many(forms: Iterable[BinaryForm], field: Field | None = None) -> BinaryForm:
    """Fold :func:`bf_gcd` over the nonzero forms; zero when all are zero."""
    nonzero = [F for F in forms if not F.is_zero]
    if not nonzero:
        if field is None:
            raise BothZero("bf_gcd", "all forms are zero")
        return BinaryForm.zero(field)
    out = bf_normalize_monic(nonzero[0])
    for F in nonzero[1:]:
        if out.degree == 0:
            break
        out = bf_gcd(out, F)
    return out


def bf_eval(F: BinaryForm, point: Sequence[Raw | Scalar]) -> Scalar:
    """Evaluate at ``(u0, v0) != (0, 0)`` by Horner in the dominant variable."""
    field = F.field
    if len(point) != 2:
        raise ZeroPoint("bf_eval", "expected a pair (u0, v0)")
    u0, v0 = (field.reduce(x.value if isinstance(x, Scalar) else x) for x in point)
    if not u0 and not v0:
        raise ZeroPoint("bf_eval", "(0, 0) is not a point of P^1")
    return Scalar(field, _eval_raw(F, u0, v0))


def _eval_raw(F: BinaryForm, u0: Raw, v0: Raw) -> Raw:
    field = F.field
    cs = F.coeffs
    if not cs:
        return field.zero
    if u0:
        # u0^d * f(v0/u0), Horner on the ratio t = v0/u0, low-to-high in j
        t = field.div(v0, u0)
        acc = field.zero
        for c in reversed(cs):
            acc = field.add(field.mul(acc, t), c)
        return field.mul(acc, _pow(field, u0, len(cs) - 1))
    # only the pure v^d term survives
    return field.mul(cs[-1], _pow(field, v0, len(cs) - 1))


def _pow(field: Field, a: Raw, k: int) -> Raw:
    if field.characteristic == 0:
        return a**k
    return pow(a, k, field.characteristic)


def bf_substitute(F: BinaryForm, G0: BinaryForm, G1: BinaryForm) -> BinaryForm:
    """Return F(G0, G1); G0 and G1 must have a common degree."""
    field = F.field
    if F.is_zero:
        return F
    d = len(F.coeffs) - 1
    e = G0.degree if not G0.is_zero else G1.degree
    if e is None:
        raise DegreeMismatch("reparametrize", "both substituted forms are zero")
    one = BinaryForm.constant(field, 1)
    pow0 = [one]
    pow1 = [one]
    for _ in range(d):
        pow0.append(bf_mul(pow0[-1], G0))
        pow1.append(bf_mul(pow1[-1], G1))
    out = BinaryForm.zero(field)
    for j, c in enumerate(F.coeffs):
        if c:
            term = bf_scale(bf_mul(pow0[d - j], pow1[j]), c)
            if not term.is_zero:
                out = bf_add(out, term)
    return out


def iter_forms(field: Field, degree: int, *, monic: bool = False) -> Iterator[BinaryForm]:
    """All nonzero forms of one degree over a prime field (optionally monic)."""
    from itertools import product

    p = field.characteristic
    n = degree + 1
    for lead in range(n):
        leads = [1] if monic else range(1, p)
        for c in leads:
            for tail in product(range(p), repeat=n - lead - 1):
                yield BinaryForm(field, (0,) * lead + (c,) + tail)


def _mono(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("u" if a == 1 else f"u^{a}")
    if b:
        parts.append("v" if b == 1 else f"v^{b}")
    return "*".join(parts)


def render_form(F: BinaryForm) -> str:
    """Canonical text, u-descending: ``u^2 - 2*u*v + v^2``."""
    if F.is_zero:
        return "0"
    field = F.field
    d = len(F.coeffs) - 1
    out = []
    for j, c in enumerate(F.coeffs):
        if not c:
            continue
        negative = field.characteristic == 0 and c < 0
        mag = -c if negative else c
        mono = _mono(d - j, j)
        if not mono:
            body = field.render(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{field.render(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)
