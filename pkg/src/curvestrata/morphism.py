"""Morphisms P^1 -> P^n given by tuples of binary forms.

A :class:`MorphismP1` stores forms ``(F_0 : ... : F_n)`` of one common degree
with constant collective gcd, scaled so that the first nonzero coefficient of
the first nonzero form is 1.  Degree-0 values are the constant morphisms.

Multiplicity-type operations work over Q and F_p but answer geometric
questions: a nonconstant gcd means the point lies on the image after base
change to an algebraic closure, whether or not a rational parameter hits it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .algebra import (
    BinaryForm,
    Field,
    Raw,
    _eval_raw,
    bf_div_exact,
    bf_gcd_many,
    bf_scale,
    bf_sub,
    bf_substitute,
    render_form,
)
from .errors import (
    AllZero,
    ConstantMorphism,
    ConstantReparametrization,
    DegreeMismatch,
    DimensionMismatch,
    FieldMismatch,
    InconclusiveOverSmallField,
    IndeterminateAtPoint,
    NonIntegralRatio,
)
from .projective import (
    ProjectivePoint,
    ProjLinearMap,
    move_to_e0,
    pt_normalize,
)


@dataclass(frozen=True)
class MorphismP1:
    """A point of Mor_d(P^1, P^n); build through :func:`mor_normalize`."""

    field: Field
    forms: tuple

    @property
    def n(self) -> int:
        return len(self.forms) - 1

    @property
    def degree(self) -> int:
        return next(F.degree for F in self.forms if not F.is_zero)

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def __str__(self) -> str:
        return render_morphism(self)

    def __repr__(self) -> str:
        return f"MorphismP1({self.field.name}, {render_morphism(self)})"


def render_morphism(f: MorphismP1) -> str:
    return render_forms(f.forms)


def render_forms(forms: Sequence[BinaryForm]) -> str:
    return "(" + " : ".join(render_form(F) for F in forms) + ")"


def _common_field(forms: Sequence[BinaryForm], op: str) -> Field:
    field = forms[0].field
    for F in forms[1:]:
        if F.field != field:
            raise FieldMismatch(op, f"{field.name} vs {F.field.name}")
    return field


def normalize_forms(forms: Sequence[BinaryForm], op: str = "mor_normalize") -> tuple[tuple, BinaryForm]:
    """Divide a form tuple by its collective gcd and rescale canonically.

    Returns the normalized tuple together with the stripped gcd.
    """
    if not forms:
        raise AllZero(op, "empty form tuple")
    field = _common_field(forms, op)
    degrees = {F.degree for F in forms if not F.is_zero}
    if not degrees:
        raise AllZero(op, "all forms are zero")
    if len(degrees) > 1:
        raise DegreeMismatch(op, f"forms have degrees {sorted(degrees)}")
    H = bf_gcd_many(forms)
    if H.degree:
        forms = [F if F.is_zero else bf_div_exact(F, H) for F in forms]
    lead = next(c for F in forms if not F.is_zero for c in F.coeffs if c)
    if lead != field.one:
        inv = field.inv(lead)
        forms = [bf_scale(F, inv) for F in forms]
    return tuple(forms), H


def mor_normalize(raw: Sequence[BinaryForm]) -> MorphismP1:
    forms, _ = normalize_forms(raw)
    if len(forms) < 2:
        raise DimensionMismatch("mor_normalize", "a morphism to P^n needs at least two forms")
    return MorphismP1(forms[0].field, forms)


def mor_degree(f: MorphismP1) -> int:
    return f.degree


def constant_morphism(p: ProjectivePoint) -> MorphismP1:
    return MorphismP1(p.field, tuple(BinaryForm.constant(p.field, c) for c in p.coords))


def _require_nonconstant(f: MorphismP1, op: str) -> None:
    if f.is_constant:
        raise ConstantMorphism(op, "operation needs a non-constant morphism")


def eval_forms_raw(forms: Sequence[BinaryForm], u0: Raw, v0: Raw) -> list:
    return [_eval_raw(F, u0, v0) for F in forms]


def mor_eval(f: MorphismP1, a: ProjectivePoint | Sequence[Raw]) -> ProjectivePoint:
    field = f.field
    if isinstance(a, ProjectivePoint):
        if a.n != 1:
            raise DimensionMismatch("mor_eval", "parameter must be a point of P^1")
        a = a.coords
    u0, v0 = (field.reduce(x) for x in a)
    values = eval_forms_raw(f.forms, u0, v0)
    if not any(values):
        # a rational common root would be a common linear factor
        raise IndeterminateAtPoint("mor_eval", f"all forms vanish at ({u0}:{v0})")
    return pt_normalize(field, values)


def transform(f: MorphismP1, A: ProjLinearMap) -> MorphismP1:
    """Change target coordinates: the new forms are the rows of A applied to f."""
    return mor_normalize(transform_forms(f, A))


def transform_forms(f: MorphismP1, A: ProjLinearMap) -> list[BinaryForm]:
    if A.field != f.field or A.n != f.n:
        raise DimensionMismatch("transform", f"map on P^{A.n} applied to a morphism into P^{f.n}")
    field = f.field
    out = []
    for row in A.matrix:
        acc = BinaryForm.zero(field)
        for a, F in zip(row, f.forms):
            if a and not F.is_zero:
                acc = acc + bf_scale(F, a)
        out.append(acc)
    return out


def moved_gcd(f: MorphismP1, p: ProjectivePoint) -> tuple[list[BinaryForm], BinaryForm]:
    """Forms of f after moving p to (1:0:...:0), and the gcd of F'_1..F'_n."""
    if p.field != f.field or p.n != f.n:
        raise DimensionMismatch("parametric_multiplicity", "point and morphism live in different spaces")
    moved = transform_forms(f, move_to_e0(p))
    return moved, bf_gcd_many(moved[1:], f.field)


def parametric_multiplicity(f: MorphismP1, p: ProjectivePoint) -> int:
    """Degree of the largest form dividing F'_1, ..., F'_n in moved coordinates."""
    _require_nonconstant(f, "parametric_multiplicity")
    _, H = moved_gcd(f, p)
    return H.degree


class ImageMembership(NamedTuple):
    contains: bool
    multiplicity: int
    # True: membership refers to points over the algebraic closure
    geometric: bool = True


def image_contains(f: MorphismP1, p: ProjectivePoint) -> bool:
    """Whether p lies on the (geometric) image of f."""
    _require_nonconstant(f, "image_contains")
    return parametric_multiplicity(f, p) >= 1


def image_report(f: MorphismP1, p: ProjectivePoint) -> ImageMembership:
    _require_nonconstant(f, "image_contains")
    m = parametric_multiplicity(f, p)
    return ImageMembership(m >= 1, m)


def reparametrize(f: MorphismP1, g: MorphismP1) -> MorphismP1:
    """The composite f o g for a non-constant g: P^1 -> P^1."""
    if g.n != 1:
        raise DimensionMismatch("reparametrize", "the reparametrization must map to P^1")
    if g.is_constant:
        raise ConstantReparametrization("reparametrize", "reparametrization is constant")
    if g.field != f.field:
        raise FieldMismatch("reparametrize", f"{f.field.name} vs {g.field.name}")
    G0, G1 = g.forms
    return mor_normalize([bf_substitute(F, G0, G1) for F in f.forms])


def fiber_forms(f: MorphismP1, q: ProjectivePoint) -> list[BinaryForm]:
    j = next(i for i, c in enumerate(q.coords) if c)
    qj = q.coords[j]
    Fj = f.forms[j]
    return [
        bf_sub(bf_scale(f.forms[i], qj), bf_scale(Fj, q.coords[i]))
        for i in range(len(f.forms))
        if i != j
    ]


def fiber_degree(f: MorphismP1, q: ProjectivePoint) -> int:
    """Length of the scheme-theoretic preimage of q."""
    _require_nonconstant(f, "fiber_degree")
    if q.field != f.field or q.n != f.n:
        raise DimensionMismatch("fiber_degree", "point and morphism live in different spaces")
    H = bf_gcd_many(fiber_forms(f, q), f.field)
    if H.is_zero:
        # every cross form vanishes: f would be constant at q
        raise ConstantMorphism("fiber_degree", "morphism is constant")
    return H.degree


class GeometricDegree(NamedTuple):
    deg_g: int
    deg_image: int
    conclusive: bool = True


def sample_parameters(field: Field, d: int) -> list[tuple]:
    """Parameters used to probe fibers: 2d^2+1 over Q, all of P^1(F_p) otherwise."""
    if field.characteristic == 0:
        return [(field.reduce(t), field.one) for t in range(2 * d * d + 1)]
    p = field.characteristic
    return [(1, 0)] + [(t, 1) for t in range(p)]


def geometric_degree(f: MorphismP1, *, strict: bool = True) -> GeometricDegree:
    """Split deg f as deg(g) * deg(image) by minimizing sampled fiber lengths.

    Every fiber has length at least deg(g), with equality over smooth points of
    the image.  At most d^2 parameters map to singular points, so 2d^2+1
    rational samples always include a smooth one.  Over F_p only the p+1
    rational parameters exist; when p+1 <= d^2 the answer is certain only if
    the minimum is 1.  With ``strict=False`` an uncertain answer is returned
    flagged ``conclusive=False`` instead of raising.
    """
    _require_nonconstant(f, "geometric_degree")
    d = f.degree
    field = f.field
    best = d
    for u0, v0 in sample_parameters(field, d):
        q = pt_normalize(field, eval_forms_raw(f.forms, u0, v0))
        best = min(best, fiber_degree(f, q))
        if best == 1:
            break
    conclusive = (
        best == 1 or field.characteristic == 0 or field.characteristic + 1 > d * d
    ) and d % best == 0
    if not conclusive:
        if strict:
            raise InconclusiveOverSmallField(
                "geometric_degree",
                f"F_{field.characteristic} too small to certify a smooth sample for degree {d}",
            )
        return GeometricDegree(best, d // best if d % best == 0 else 0, False)
    return GeometricDegree(best, d // best)


def image_multiplicity(f: MorphismP1, p: ProjectivePoint) -> int:
    """Multiplicity of p on the image curve: m_p(f) / deg(g)."""
    deg_g = geometric_degree(f).deg_g
    m = parametric_multiplicity(f, p)
    if m % deg_g:
        raise NonIntegralRatio("image_multiplicity", f"m_p = {m} is not a multiple of deg g = {deg_g}")
    return m // deg_g


def squaring(field: Field) -> MorphismP1:
    """The degree-2 self-map (u^2 : v^2) of P^1."""
    return MorphismP1(field, (BinaryForm.monomial(field, 2, 0), BinaryForm.monomial(field, 0, 2)))


def identity_p1(field: Field) -> MorphismP1:
    return MorphismP1(field, (BinaryForm.u(field), BinaryForm.v(field)))


def linear_reparametrization(A: ProjLinearMap) -> MorphismP1:
    """The degree-1 self-map of P^1 given by a 2x2 invertible matrix."""
    if A.n != 1:
        raise DimensionMismatch("reparametrize", "need a 2x2 matrix")
    field = A.field
    forms = [BinaryForm.from_coeffs(field, row) for row in A.matrix]
    return mor_normalize(forms)


__all__ = [
    "GeometricDegree",
    "ImageMembership",
    "MorphismP1",
    "constant_morphism",
    "fiber_degree",
    "geometric_degree",
    "identity_p1",
    "image_contains",
    "image_multiplicity",
    "image_report",
    "linear_reparametrization",
    "mor_degree",
    "mor_eval",
    "mor_normalize",
    "normalize_forms",
    "parametric_multiplicity",
    "render_morphism",
    "reparametrize",
    "squaring",
    "transform",
]