"""Curves on the blow-up of P^n at finitely many points.

The blow-up at a single point p, moved to (1:0:...:0), is the subvariety of
P^n x P^(n-1) cut out by x_j y_k = x_k y_j (1 <= j, k <= n).  A curve on it
is a pair of form tuples ((F_0:...:F_n), (G_1:...:G_n)) with F_j G_k = F_k G_j.
For several points the blow-up embeds in the fibered product of the single
point blow-ups, so a lifted curve is kept as its base morphism plus one
G-tuple per point, each written in that point's moved coordinates.

Point indices in labels and exceptional bases are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence, Union

from .algebra import BinaryForm, Field, _eval_raw, bf_div_exact, bf_mul
from .errors import (
    AmbiguousLift,
    ConstantExceptional,
    ConstantLabel,
    DimensionMismatch,
    DuplicatePoints,
    ExceptionalCurve,
    FieldMismatch,
    IncidenceViolation,
    NoExceptionalCurves,
)
from .morphism import (
    MorphismP1,
    constant_morphism,
    mor_eval,
    moved_gcd,
    normalize_forms,
    render_forms,
    transform_forms,
)
from .projective import (
    ProjectivePoint,
    apply_raw,
    move_to_e0,
    pt_normalize,
)


@dataclass(frozen=True)
class BlowupConfig:
    field: Field
    n: int
    points: tuple
    moves: tuple = dc_field(compare=False)

    @classmethod
    def create(cls, points: Sequence[ProjectivePoint]) -> "BlowupConfig":
        if not points:
            raise DimensionMismatch("BlowupConfig", "need at least one point")
        field, n = points[0].field, points[0].n
        for p in points:
            if p.field != field:
                raise FieldMismatch("BlowupConfig", f"{field.name} vs {p.field.name}")
            if p.n != n:
                raise DimensionMismatch("BlowupConfig", "points live in different projective spaces")
        if len(set(points)) != len(points):
            raise DuplicatePoints("BlowupConfig", "blown-up points must be distinct")
        return cls(field, n, tuple(points), tuple(move_to_e0(p) for p in points))

    @property
    def r(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ExceptionalBase:
    """Marks a curve lying inside the exceptional divisor E_i."""

    index: int


@dataclass(frozen=True)
class LiftedMorphism:
    config: BlowupConfig
    base: Union[MorphismP1, ExceptionalBase]
    components: tuple

    @property
    def is_exceptional(self) -> bool:
        return isinstance(self.base, ExceptionalBase)

    def component_degrees(self) -> tuple[int, ...]:
        return tuple(_tuple_degree(G) for G in self.components)

    def key(self) -> tuple:
        """Hashable summary used to compare lifts for equality."""
        base = ("E", self.base.index) if self.is_exceptional else self.base.forms
        return (base, tuple(tuple(F.coeffs for F in G) for G in self.components))

    def __str__(self) -> str:
        base = f"E_{self.base.index}" if self.is_exceptional else render_forms(self.base.forms)
        comps = ", ".join(render_forms(G) for G in self.components)
        return f"{base} ; [{comps}]"


def _tuple_degree(forms: Sequence[BinaryForm]) -> int:
    return next(F.degree for F in forms if not F.is_zero)


def lift(f: MorphismP1, config: BlowupConfig) -> LiftedMorphism:
    """The strict transform: for each point, strip H_i = gcd(F'_1..F'_n)."""
    if f.field != config.field:
        raise FieldMismatch("lift", f"{f.field.name} vs {config.field.name}")
    if f.n != config.n:
        raise DimensionMismatch("lift", f"morphism into P^{f.n}, blow-up of P^{config.n}")
    components = []
    for i, p in enumerate(config.points, start=1):
        moved, H = moved_gcd(f, p)
        if H.is_zero:
            raise AmbiguousLift(
                "lift", f"constant morphism at blown-up point p_{i}; its lifts fill a P^{config.n - 1}"
            )
        G = [F if F.is_zero else bf_div_exact(F, H) for F in moved[1:]]
        components.append(normalize_forms(G, "lift")[0])
    return LiftedMorphism(config, f, tuple(components))


def project(g: LiftedMorphism) -> MorphismP1:
    if g.is_exceptional:
        i = g.base.index
        raise ExceptionalCurve("project", f"curve lies in E_{i} and projects to the constant map at p_{i}")
    return g.base


class Projection(NamedTuple):
    morphism: MorphismP1
    exceptional: bool


def project_flagged(g: LiftedMorphism) -> Projection:
    """Like :func:`project`, but exceptional curves map to their constant."""
    if g.is_exceptional:
        return Projection(constant_morphism(g.config.points[g.base.index - 1]), True)
    return Projection(g.base, False)


def exceptional_lift(i: int, G: Sequence[BinaryForm], config: BlowupConfig) -> LiftedMorphism:
    """A curve inside E_i ~ P^(n-1), given by the form tuple G."""
    if config.n < 2:
        raise NoExceptionalCurves("exceptional_lift", "E_i is a single point when n = 1")
    if not 1 <= i <= config.r:
        raise DimensionMismatch("exceptional_lift", f"no blown-up point p_{i}")
    if len(G) != config.n:
        raise DimensionMismatch("exceptional_lift", f"expected {config.n} forms, got {len(G)}")
    forms, _ = normalize_forms(G, "exceptional_lift")
    if _tuple_degree(forms) == 0:
        raise ConstantExceptional("exceptional_lift", "constant curves are not in Mor_{>0}(P^1, E)")
    field = config.field
    p_i = config.points[i - 1]
    components = []
    for j, A in enumerate(config.moves, start=1):
        if j == i:
            components.append(forms)
        else:
            # p_i is off p_j, so its direction from p_j is a fixed point of P^(n-1)
            moved = apply_raw(A, p_i.coords)[1:]
            y = pt_normalize(field, moved)
            components.append(tuple(BinaryForm.constant(field, c) for c in y.coords))
    return LiftedMorphism(config, ExceptionalBase(i), tuple(components))


# stratum labels -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Interior:
    """The stratum M_{d,m}: base of degree d with multiplicities m at the points."""

    d: int
    m: tuple

    def to_record(self) -> dict:
        return {"kind": "interior", "d": self.d, "m": list(self.m)}


@dataclass(frozen=True, order=True)
class Exceptional:
    """A degree-e curve inside E_i."""

    index: int
    e: int

    def to_record(self) -> dict:
        return {"kind": "exceptional", "i": self.index, "e": self.e}


@dataclass(frozen=True)
class Constant:
    def to_record(self) -> dict:
        return {"kind": "constant"}


StratumLabel = Union[Interior, Exceptional, Constant]


def label_sort_key(label: StratumLabel) -> tuple:
    if isinstance(label, Interior):
        return (0, label.d, label.m)
    if isinstance(label, Exceptional):
        return (1, label.index, label.e)
    return (2,)


def stratum(g: LiftedMorphism) -> StratumLabel:
    if g.is_exceptional:
        i = g.base.index
        return Exceptional(i, _tuple_degree(g.components[i - 1]))
    f = g.base
    if f.is_constant:
        return Constant()
    return Interior(f.degree, tuple(moved_gcd(f, p)[1].degree for p in g.config.points))


def stratum_from_components(g: LiftedMorphism) -> StratumLabel:
    """Label read off the tau side: m_i = d - deg G^(i)."""
    if g.is_exceptional or g.base.is_constant:
        return stratum(g)
    d = g.base.degree
    return Interior(d, tuple(d - e for e in g.component_degrees()))


class DimensionBound(NamedTuple):
    kind: str  # "exact" or "upper_bound"
    value: int


def stratum_dimension(label: StratumLabel, n: int) -> DimensionBound:
    if isinstance(label, Interior):
        full = (n + 1) * (label.d + 1) - 1
        if any(label.m):
            return DimensionBound("upper_bound", full - 1)
        return DimensionBound("exact", full)
    if isinstance(label, Exceptional):
        return DimensionBound("exact", n * (label.e + 1) - 1)
    raise ConstantLabel("stratum_dimension", "constant curves lie outside the partition")


# evaluation and invariants ----------------------------------------------------


class LiftedPoint(NamedTuple):
    base_point: ProjectivePoint
    fiber_points: tuple


def evaluate_lifted(g: LiftedMorphism, a: ProjectivePoint | Sequence) -> LiftedPoint:
    """Evaluate base and components at a parameter, checking incidence."""
    config = g.config
    field = config.field
    coords = a.coords if isinstance(a, ProjectivePoint) else a
    u0, v0 = (field.reduce(c) for c in coords)
    if g.is_exceptional:
        base_point = config.points[g.base.index - 1]
    else:
        base_point = mor_eval(g.base, (u0, v0))
    fibers = []
    for i, (A, G) in enumerate(zip(config.moves, g.components), start=1):
        y = [_eval_raw(F, u0, v0) for F in G]
        y_point = pt_normalize(field, y)
        x = apply_raw(A, base_point.coords)[1:]
        _check_incidence(field, x, y_point.coords, i)
        fibers.append(y_point)
    return LiftedPoint(base_point, tuple(fibers))


def _check_incidence(field: Field, x: Sequence, y: Sequence, i: int) -> None:
    n = len(x)
    for j in range(n):
        for k in range(j + 1, n):
            if field.mul(x[j], y[k]) != field.mul(x[k], y[j]):
                raise IncidenceViolation(
                    "evaluate_lifted", f"x_{j + 1} y_{k + 1} != x_{k + 1} y_{j + 1} on component {i}"
                )


def compatibility_holds(g: LiftedMorphism) -> bool:
    """F'_j G_k == F'_k G_j as forms, for every point and all j, k."""
    if g.is_exceptional:
        return True
    f = g.base
    for A, G in zip(g.config.moves, g.components):
        F = transform_forms(f, A)[1:]
        for j in range(len(G)):
            for k in range(j + 1, len(G)):
                if bf_mul(F[j], G[k]) != bf_mul(F[k], G[j]):
                    return False
    return True


def degree_law_holds(g: LiftedMorphism) -> bool:
    """deg G^(i) == d - m_i for every point."""
    label = stratum(g)
    if not isinstance(label, Interior):
        return True
    return all(e == label.d - m for e, m in zip(g.component_degrees(), label.m))
