"""Points of P^n and projective-linear coordinate changes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

from .algebra import Field, Raw, Scalar
from .errors import AllZero, DimensionMismatch, SingularMatrix


def _raw(field: Field, x: Raw | Scalar) -> Raw:
    return field.reduce(x.value if isinstance(x, Scalar) else x)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n whose first nonzero coordinate is 1."""

    field: Field
    coords: tuple

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return render_point(self)

    def __repr__(self) -> str:
        return f"ProjectivePoint({self.field.name}, {render_point(self)})"


def pt_normalize(field: Field, raw: Sequence[Raw | Scalar]) -> ProjectivePoint:
    cs = [_raw(field, x) for x in raw]
    lead = next((c for c in cs if c), None)
    if lead is None:
        raise AllZero("pt_normalize", "all coordinates are zero")
    inv = field.inv(lead)
    return ProjectivePoint(field, tuple(field.mul(c, inv) for c in cs))


def standard_point(field: Field, n: int, i: int) -> ProjectivePoint:
    """The i-th coordinate point of P^n (0-based)."""
    cs = [field.zero] * (n + 1)
    cs[i] = field.one
    return ProjectivePoint(field, tuple(cs))


def iter_points(field: Field, n: int) -> Iterator[ProjectivePoint]:
    """Every F_p-rational point of P^n, in canonical form."""
    from itertools import product

    p = field.characteristic
    for lead in range(n + 1):
        for tail in product(range(p), repeat=n - lead):
            yield ProjectivePoint(field, (0,) * lead + (1,) + tail)


def render_point(x: ProjectivePoint) -> str:
    return "(" + ":".join(x.field.render(c) for c in x.coords) + ")"


def determinant(field: Field, rows: Sequence[Sequence[Raw]]) -> Raw:
    """Determinant by elimination; fraction-free (Bareiss) over Q."""
    m = len(rows)
    if field.characteristic == 0:
        scales = [lcm(*(Fraction(c).denominator for c in row)) for row in rows]
        a = [[int(Fraction(c) * s) for c in row] for row, s in zip(rows, scales)]
        sign = 1
        prev = 1
        for k in range(m - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, m) if a[i][k]), None)
                if swap is None:
                    return Fraction(0)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, m):
                for j in range(k + 1, m):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        denom = 1
        for s in scales:
            denom *= s
        return Fraction(sign * a[m - 1][m - 1], denom)
    a = [list(row) for row in rows]
    det = field.one
    for k in range(m):
        piv = next((i for i in range(k, m) if a[i][k]), None)
        if piv is None:
            return field.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = field.neg(det)
        det = field.mul(det, a[k][k])
        inv = field.inv(a[k][k])
        for i in range(k + 1, m):
            f = field.mul(a[i][k], inv)
            if f:
                for j in range(k, m):
                    a[i][j] = field.sub(a[i][j], field.mul(f, a[k][j]))
    return det


@dataclass(frozen=True)
class ProjLinearMap:
    """An invertible (n+1)x(n+1) matrix acting on column vectors."""

    field: Field
    matrix: tuple

    def __post_init__(self) -> None:
        m = len(self.matrix)
        if any(len(row) != m for row in self.matrix):
            raise DimensionMismatch("ProjLinearMap", "matrix must be square")
        if not determinant(self.field, self.matrix):
            raise SingularMatrix("ProjLinearMap", "matrix is not invertible")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Raw | Scalar]]) -> "ProjLinearMap":
        return cls(field, tuple(tuple(_raw(field, c) for c in row) for row in rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> "ProjLinearMap":
        return cls(field, _identity(field, n + 1))

    @classmethod
    def swap(cls, field: Field, n: int, i: int, j: int) -> "ProjLinearMap":
        rows = [list(r) for r in _identity(field, n + 1)]
        rows[i], rows[j] = rows[j], rows[i]
        return cls(field, tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    def __matmul__(self, other: "ProjLinearMap") -> "ProjLinearMap":
        return compose(self, other)

    def inverse(self) -> "ProjLinearMap":
        return ProjLinearMap(self.field, _inverse(self.field, self.matrix))


def _identity(field: Field, m: int) -> tuple:
    return tuple(tuple(field.one if i == j else field.zero for j in range(m)) for i in range(m))


def _inverse(field: Field, rows: tuple) -> tuple:
    m = len(rows)
    a = [list(row) + list(e) for row, e in zip(rows, _identity(field, m))]
    for k in range(m):
        piv = next(i for i in range(k, m) if a[i][k])
        a[k], a[piv] = a[piv], a[k]
        inv = field.inv(a[k][k])
        a[k] = [field.mul(c, inv) for c in a[k]]
        for i in range(m):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[m:]) for row in a)


def compose(A: ProjLinearMap, B: ProjLinearMap) -> ProjLinearMap:
    """Matrix product A*B, i.e. apply B first."""
    if A.field != B.field or A.n != B.n:
        raise DimensionMismatch("compose", "incompatible maps")
    f = A.field
    m = len(A.matrix)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = f.zero
            for k in range(m):
                acc = f.add(acc, f.mul(A.matrix[i][k], B.matrix[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return ProjLinearMap(f, tuple(rows))


def apply_raw(A: ProjLinearMap, coords: Sequence[Raw]) -> list:
    f = A.field
    out = []
    for row in A.matrix:
        acc = f.zero
        for a, x in zip(row, coords):
            if a and x:
                acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return out


def map_apply(A: ProjLinearMap, x: ProjectivePoint) -> ProjectivePoint:
    if A.field != x.field or A.n != x.n:
        raise DimensionMismatch("map_apply", f"map on P^{A.n} applied to a point of P^{x.n}")
    return pt_normalize(A.field, apply_raw(A, x.coords))


def move_to_e0(p: ProjectivePoint) -> ProjLinearMap:
    """Deterministic A with A*p = (1:0:...:0).

    Swap the pivot (first nonzero coordinate) into position 0, then subtract
    multiples of row 0 to clear the remaining entries.
    """
    f = p.field
    m = len(p.coords)
    k = next(i for i, c in enumerate(p.coords) if c)
    q = list(p.coords)
    q[0], q[k] = q[k], q[0]
    inv = f.inv(q[0])
    rows = [list(r) for r in _identity(f, m)]
    rows[0], rows[k] = rows[k], rows[0]
    # Row i of the clearing step is e_i - (q_i / q_0) e_0, composed with the swap.
    for i in range(1, m):
        c = f.mul(q[i], inv)
        if c:
            rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(rows[i], rows[0])]
    return ProjLinearMap(f, tuple(tuple(r) for r in rows))
