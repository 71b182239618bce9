"""Text syntax for scalars, binary forms, points and morphisms.

Grammar (whitespace-insensitive)::

    form  := sign? term (("+" | "-") term)*
    term  := coeff ("*" mono)? | mono
    mono  := var ("^" nat)? ("*" var ("^" nat)?)*
    var   := "u" | "v"
    coeff := int | int "/" int

Homogeneity is checked after parsing.  Points are written ``(a:b:c)`` and
morphisms ``(F_0 : F_1 : ... : F_n)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .algebra import BinaryForm, Field, Raw
from .errors import (
    BadScalarLiteral,
    DimensionMismatch,
    FormSyntaxError,
    NotHomogeneous,
)
from .morphism import MorphismP1, mor_normalize, normalize_forms
from .projective import ProjectivePoint, pt_normalize

_TOKEN = re.compile(r"\s*(?:(\d+)|([uv])|([-+*/^:(),]))")


class _Token(NamedTuple):
    kind: str  # "int", "var", "op", "end"
    text: str
    pos: int


def _tokenize(text: str, offset: int, op: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while text[j].isspace():
                j += 1
            raise FormSyntaxError(op, f"unexpected character {text[j]!r}", offset + j)
        start = offset + m.start(m.lastindex)
        if m.group(1):
            tokens.append(_Token("int", m.group(1), start))
        elif m.group(2):
            tokens.append(_Token("var", m.group(2), start))
        else:
            tokens.append(_Token("op", m.group(3), start))
        pos = m.end()
    tokens.append(_Token("end", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, field: Field, text: str, offset: int = 0, op: str = "parse_form"):
        self.field = field
        self.op = op
        self.tokens = _tokenize(text, offset, op)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, msg: str) -> FormSyntaxError:
        return FormSyntaxError(self.op, msg, self.tok.pos)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect_end(self) -> None:
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    def nat(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected a natural number")
        value = int(self.tok.text)
        self.i += 1
        return value

    def coeff(self) -> Raw:
        pos = self.tok.pos
        num = self.nat()
        if self.accept("/"):
            den = self.nat()
            if den == 0:
                raise BadScalarLiteral(self.op, f"zero denominator at position {pos}")
            p = self.field.characteristic
            if p and den % p == 0:
                raise BadScalarLiteral(self.op, f"denominator {den} vanishes in F_{p} at position {pos}")
            return self.field.reduce(Fraction(num, den))
        return self.field.reduce(num)

    def mono(self) -> tuple[int, int]:
        a = b = 0
        while True:
            if self.tok.kind != "var":
                raise self.error("expected 'u' or 'v'")
            var = self.tok.text
            self.i += 1
            k = self.nat() if self.accept("^") else 1
            if var == "u":
                a += k
            else:
                b += k
            if not (self.accept("*")):
                return a, b

    def term(self) -> tuple[Raw, int, int]:
        if self.tok.kind == "int":
            c = self.coeff()
            if self.accept("*"):
                a, b = self.mono()
            else:
                a = b = 0
            return c, a, b
        if self.tok.kind == "var":
            a, b = self.mono()
            return self.field.one, a, b
        raise self.error("expected a term")

    def form(self) -> list[tuple[Raw, int, int, int]]:
        terms = []
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            pos = self.tok.pos
            c, a, b = self.term()
            terms.append((c if sign > 0 else self.field.neg(c), a, b, pos))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return terms


def _build_form(field: Field, terms: list, op: str) -> BinaryForm:
    degrees = {a + b for _, a, b, _ in terms}
    if len(degrees) > 1:
        raise NotHomogeneous(op, f"terms of degrees {sorted(degrees)}")
    d = degrees.pop()
    coeffs = [field.zero] * (d + 1)
    for c, _, b, _ in terms:
        coeffs[b] = field.add(coeffs[b], c)
    return BinaryForm.from_coeffs(field, coeffs)


def parse_form(text: str, field: Field, *, _offset: int = 0, _op: str = "parse_form") -> BinaryForm:
    parser = _Parser(field, text, _offset, _op)
    terms = parser.form()
    parser.expect_end()
    return _build_form(field, terms, _op)


def parse_scalar(text: str, field: Field) -> Raw:
    parser = _Parser(field, text, op="parse_scalar")
    negative = parser.accept("-")
    c = parser.coeff()
    parser.expect_end()
    return field.neg(c) if negative else c


def _split_tuple(text: str, op: str, sep: str = ":") -> list[tuple[str, int]]:
    """Split ``(a:b:...)`` into component texts with their offsets."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if not stripped.startswith("("):
        raise FormSyntaxError(op, "expected '('", lead)
    if not stripped.endswith(")"):
        raise FormSyntaxError(op, "expected ')'", lead + len(stripped))
    inner = stripped[1:-1]
    base = lead + 1
    parts = []
    start = 0
    for j, ch in enumerate(inner + sep):
        if ch == sep:
            parts.append((inner[start:j], base + start))
            start = j + 1
        elif ch in "()":
            raise FormSyntaxError(op, f"unexpected {ch!r}", base + j)
    return parts


def parse_point(text: str, field: Field) -> ProjectivePoint:
    parts = _split_tuple(text, "parse_point")
    if len(parts) < 2:
        raise FormSyntaxError("parse_point", "a point needs at least two coordinates", len(text))
    coords = []
    for part, offset in parts:
        parser = _Parser(field, part, offset, "parse_point")
        negative = parser.accept("-")
        if parser.tok.kind == "end":
            raise parser.error("empty coordinate")
        c = parser.coeff()
        parser.expect_end()
        coords.append(field.neg(c) if negative else c)
    return pt_normalize(field, coords)


def parse_points(text: str, field: Field) -> list[ProjectivePoint]:
    """One or more points, e.g. ``(1:0:0),(0:1:0)``."""
    out = []
    for m in re.finditer(r"\([^()]*\)", text):
        out.append(parse_point(m.group(0), field))
    leftover = re.sub(r"\([^()]*\)", "", text).replace(",", "").replace(";", "").strip()
    if not out or leftover:
        raise FormSyntaxError("parse_point", "expected points like (1:0:0),(0:1:0)", 0)
    return out


class ParsedMorphism(NamedTuple):
    morphism: MorphismP1
    # nonconstant common factor removed by normalization, if any
    stripped: BinaryForm | None


def parse_forms(text: str, field: Field, op: str = "parse_morphism") -> list[BinaryForm]:
    parts = _split_tuple(text, op)
    forms = []
    for part, offset in parts:
        if not part.strip():
            raise FormSyntaxError(op, "empty component", offset)
        forms.append(parse_form(part, field, _offset=offset, _op=op))
    return forms


def parse_morphism(text: str, field: Field) -> ParsedMorphism:
    forms = parse_forms(text, field)
    if len(forms) < 2:
        raise FormSyntaxError("parse_morphism", "a morphism needs at least two components", len(text))
    _, H = normalize_forms(forms, "parse_morphism")
    f = mor_normalize(forms)
    return ParsedMorphism(f, H if H.degree else None)


def parse_field(text: str) -> Field:
    """``Q`` or ``F<p>`` with p prime."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return Field(0)
    m = re.fullmatch(r"F_?(\d+)", t)
    if not m:
        raise FormSyntaxError("parse_field", f"unknown field {text!r}; use Q or F<p>", 0)
    p = int(m.group(1))
    try:
        return Field(p)
    except ValueError:
        raise BadScalarLiteral("parse_field", f"{p} is not prime") from None


def parse_tuple_of_forms(text: str, field: Field, n_forms: int | None = None) -> list[BinaryForm]:
    forms = parse_forms(text, field)
    if n_forms is not None and len(forms) != n_forms:
        raise DimensionMismatch("parse_morphism", f"expected {n_forms} components, got {len(forms)}")
    return forms
