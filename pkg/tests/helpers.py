"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from curvestrata.algebra import BinaryForm, Field
from curvestrata.errors import SingularMatrix
from curvestrata.morphism import MorphismP1, mor_normalize
from curvestrata.projective import ProjectivePoint, ProjLinearMap, pt_normalize

QQ = Field(0)
F2, F3, F5 = Field(2), Field(3), Field(5)


def rand_scalar(rng: random.Random, field: Field, *, fractions: bool = True):
    if field.characteristic:
        return rng.randrange(field.characteristic)
    num = rng.randint(-5, 5)
    den = rng.randint(1, 4) if fractions else 1
    return Fraction(num, den)


def rand_form(rng: random.Random, field: Field, degree: int, *, nonzero: bool = True) -> BinaryForm:
    while True:
        F = BinaryForm.from_coeffs(field, [rand_scalar(rng, field) for _ in range(degree + 1)])
        if F or not nonzero:
            return F


def rand_morphism(rng: random.Random, field: Field, n: int, d: int) -> MorphismP1:
    """A random non-constant morphism of degree <= d (normalization may drop it)."""
    while True:
        forms = [rand_form(rng, field, d, nonzero=False) for _ in range(n + 1)]
        if not any(forms):
            continue
        f = mor_normalize(forms)
        if not f.is_constant:
            return f


def rand_point(rng: random.Random, field: Field, n: int) -> ProjectivePoint:
    while True:
        cs = [rand_scalar(rng, field) for _ in range(n + 1)]
        if any(cs):
            return pt_normalize(field, cs)


def rand_matrix(rng: random.Random, field: Field, n: int) -> ProjLinearMap:
    while True:
        rows = [[rand_scalar(rng, field, fractions=False) for _ in range(n + 1)] for _ in range(n + 1)]
        try:
            return ProjLinearMap.from_rows(field, rows)
        except SingularMatrix:
            continue
