"""Exhaustive census of Mor_d(P^1, P^n)(F_q) and its blow-up strata.

Canonical coefficient tuples are indexed by integers: a tuple of N = (n+1)(d+1)
coefficients whose first nonzero entry (at position k) is 1 occupies the block
of q^(N-k-1) indices after all blocks with smaller k.  Shards are contiguous
index ranges, so they partition the canonical space and can be tallied
independently; the per-shard tallies merge by addition.
"""

from __future__ import annotations

import logging
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator, Mapping, Sequence

from .algebra import BinaryForm, Field, bf_gcd_many, is_prime
from .blowup import (
    BlowupConfig,
    Exceptional,
    Interior,
    StratumLabel,
    compatibility_holds,
    evaluate_lifted,
    exceptional_lift,
    label_sort_key,
    lift,
    project,
    stratum,
    stratum_from_components,
)
from .errors import (
    BudgetExceeded,
    CurveStrataError,
    DimensionMismatch,
    InsufficientData,
    NonPrimeField,
    ZeroCount,
)
from .morphism import MorphismP1, parametric_multiplicity, reparametrize, squaring
from .projective import ProjectivePoint

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
DEFAULT_MAX_EXCEPTIONAL_DEGREE = 3
MULTIPLICATIVITY_SAMPLE = 100


def _check_field(q: int, op: str) -> Field:
    if not is_prime(q):
        raise NonPrimeField(op, f"q = {q} is not prime")
    return Field(q)


def _check_budget(n: int, d: int, q: int, budget: int, op: str) -> None:
    raw = q ** ((n + 1) * (d + 1))
    if raw > budget:
        raise BudgetExceeded(op, f"{raw} raw tuples exceed the budget of {budget}")


def canonical_count(n: int, d: int, q: int) -> int:
    """Number of canonical (first nonzero entry 1) coefficient tuples."""
    N = (n + 1) * (d + 1)
    return (q**N - 1) // (q - 1)


def _iter_canonical(N: int, q: int, start: int, stop: int) -> Iterator[tuple]:
    """Canonical tuples with indices in [start, stop), in index order."""
    pos = 0
    for k in range(N):
        size = q ** (N - k - 1)
        lo, hi = max(start, pos), min(stop, pos + size)
        if lo < hi:
            head = (0,) * k + (1,)
            for offset in range(lo - pos, hi - pos):
                tail = []
                rest = offset
                for _ in range(N - k - 1):
                    rest, digit = divmod(rest, q)
                    tail.append(digit)
                yield head + tuple(reversed(tail))
        pos += size
        if pos >= stop:
            return


def _split_forms(field: Field, coeffs: tuple, n: int, d: int) -> list[BinaryForm]:
    w = d + 1
    return [BinaryForm.from_coeffs(field, coeffs[i * w:(i + 1) * w]) for i in range(n + 1)]


def _morphism_from_tuple(field: Field, coeffs: tuple, n: int, d: int) -> MorphismP1 | None:
    """The morphism of an already-canonical tuple, or None when it is not one."""
    forms = _split_forms(field, coeffs, n, d)
    if d == 0:
        return MorphismP1(field, tuple(forms))
    H = bf_gcd_many(forms)
    if H.degree:
        return None
    return MorphismP1(field, tuple(forms))


def _iter_range(n: int, d: int, q: int, start: int, stop: int) -> Iterator[MorphismP1]:
    field = Field(q)
    for coeffs in _iter_canonical((n + 1) * (d + 1), q, start, stop):
        f = _morphism_from_tuple(field, coeffs, n, d)
        if f is not None:
            yield f


def enumerate_morphisms(
    n: int, d: int, q: int, *, budget: int = DEFAULT_BUDGET, constants: bool = False
) -> Iterator[MorphismP1]:
    """Each morphism P^1 -> P^n of degree exactly d over F_q, once, canonically.

    Degree 0 (the constants, i.e. P^n(F_q)) is only produced with
    ``constants=True``.
    """
    _check_field(q, "enumerate_morphisms")
    if d == 0 and not constants:
        raise ValueError("degree-0 enumeration requires constants=True")
    _check_budget(n, d, q, budget, "enumerate_morphisms")
    return _iter_range(n, d, q, 0, canonical_count(n, d, q))


def raw_filter_count(n: int, d: int, q: int) -> int:
    """Independent count of Mor_d(P^1, P^n)(F_q) from all raw coefficient tuples.

    Uses plain integer lists and its own Euclid, none of the form machinery:
    a tuple counts when not all forms vanish, they are not all divisible by v
    (root at infinity) and their dehomogenizations at v = 1 are coprime.  The
    total is divided by the q - 1 nonzero scalings.
    """
    w = d + 1
    total = 0
    for coeffs in product(range(q), repeat=(n + 1) * w):
        forms = [coeffs[i * w:(i + 1) * w] for i in range(n + 1)]
        nonzero = [F for F in forms if any(F)]
        if not nonzero:
            continue
        if d > 0:
            if all(F[0] == 0 for F in nonzero):
                continue
            g: list = []
            for F in nonzero:
                g = _euclid_mod(q, g, list(reversed(F)))
                if len(g) == 1:
                    break
            if len(g) > 1:
                continue
        total += 1
    return total // (q - 1)


def _euclid_mod(q: int, a: list, b: list) -> list:
    """gcd of low-to-high coefficient lists mod q, up to scaling."""

    def trim(p: list) -> list:
        p = [c % q for c in p]
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % q
            a = trim(a)
        a, b = b, a
    return a


# census ---------------------------------------------------------------------


VERDICT_NAMES = (
    "disjoint",
    "exhaustive",
    "lift_unique",
    "round_trip",
    "degree_law",
    "incidence",
    "multiplicativity",
)


@dataclass
class Verdicts:
    """Conjunction of checks; the first counterexample per check is kept."""

    disjoint: bool = True
    exhaustive: bool = True
    lift_unique: bool = True
    round_trip: bool = True
    degree_law: bool = True
    incidence: bool = True
    multiplicativity: bool = True
    counterexamples: dict = dc_field(default_factory=dict)

    def fail(self, name: str, witness: str) -> None:
        if getattr(self, name):
            setattr(self, name, False)
            self.counterexamples[name] = witness

    def merge(self, other: "Verdicts") -> "Verdicts":
        out = Verdicts()
        for name in VERDICT_NAMES:
            setattr(out, name, getattr(self, name) and getattr(other, name))
        out.counterexamples = {**other.counterexamples, **self.counterexamples}
        return out

    @property
    def all_true(self) -> bool:
        return all(getattr(self, name) for name in VERDICT_NAMES)

    def to_record(self) -> dict:
        rec = {name: getattr(self, name) for name in VERDICT_NAMES}
        if self.counterexamples:
            rec["counterexamples"] = dict(sorted(self.counterexamples.items()))
        return rec


@dataclass
class CensusReport:
    n: int
    d: int
    q: int
    points: tuple
    total_count: int = 0
    strata: dict = dc_field(default_factory=dict)
    exceptional: dict = dc_field(default_factory=dict)
    verdicts: Verdicts = dc_field(default_factory=Verdicts)
    elapsed: float = 0.0

    def interior_counts(self) -> dict:
        return {label.m: c for label, c in self.strata.items()}

    def to_record(self) -> dict:
        """Deterministic JSON-compatible record (timing excluded)."""
        return {
            "parameters": {
                "n": self.n,
                "d": self.d,
                "q": self.q,
                "points": [_render_coords(p) for p in self.points],
            },
            "total": self.total_count,
            "strata": [
                {"d": label.d, "m": list(label.m), "count": count}
                for label, count in sorted(self.strata.items(), key=lambda kv: label_sort_key(kv[0]))
            ],
            "exceptional": [
                {"i": label.index, "e": label.e, "count": count}
                for label, count in sorted(self.exceptional.items(), key=lambda kv: label_sort_key(kv[0]))
            ],
            "verdicts": self.verdicts.to_record(),
        }

    def to_csv(self) -> str:
        r = len(self.points)
        header = ["d"] + [f"m_{i}" for i in range(1, r + 1)] + ["count"]
        lines = [",".join(header)]
        for label, count in sorted(self.strata.items(), key=lambda kv: label_sort_key(kv[0])):
            lines.append(",".join(str(x) for x in (label.d, *label.m, count)))
        return "\n".join(lines) + "\n"


def _render_coords(p: ProjectivePoint) -> str:
    return "(" + ":".join(str(c) for c in p.coords) + ")"


@dataclass
class _ShardResult:
    total: int = 0
    tally: Counter = dc_field(default_factory=Counter)
    lift_keys: set = dc_field(default_factory=set)
    verdicts: Verdicts = dc_field(default_factory=Verdicts)

    def merge(self, other: "_ShardResult") -> "_ShardResult":
        return _ShardResult(
            self.total + other.total,
            self.tally + other.tally,
            self.lift_keys | other.lift_keys,
            self.verdicts.merge(other.verdicts),
        )


def _parameters(field: Field) -> list[tuple]:
    return [(1, 0)] + [(t, 1) for t in range(field.characteristic)]


def _check_morphism(
    f: MorphismP1, config: BlowupConfig, params: list, out: _ShardResult, check_square: bool
) -> None:
    d = f.degree
    v = out.verdicts
    out.total += 1
    try:
        g = lift(f, config)
    except CurveStrataError as exc:
        v.fail("lift_unique", f"{f}: {exc}")
        v.fail("exhaustive", f"{f}: no lift")
        return
    label = stratum(g)
    if not isinstance(label, Interior) or label.d != d:
        v.fail("exhaustive", f"{f}: label {label}")
        return
    if any(m > d for m in label.m):
        v.fail("exhaustive", f"{f}: multiplicities {label.m} exceed d = {d}")
    # The base-side and tau-side readings of the stratum must agree.
    if stratum_from_components(g) != label:
        v.fail("disjoint", f"{f}: {label} vs {stratum_from_components(g)}")
    if project(g) != f:
        v.fail("round_trip", f"{f}: projects to {project(g)}")
    key = g.key()
    if key in out.lift_keys:
        v.fail("lift_unique", f"{f}: duplicate lift")
    out.lift_keys.add(key)
    if not compatibility_holds(g):
        v.fail("degree_law", f"{f}: F'_j G_k != F'_k G_j")
    for e, m in zip(g.component_degrees(), label.m):
        if e != d - m:
            v.fail("degree_law", f"{f}: deg G = {e}, d - m = {d - m}")
    for a in params:
        try:
            evaluate_lifted(g, a)
        except CurveStrataError as exc:
            v.fail("incidence", f"{f} at {a}: {exc}")
            break
    if check_square:
        f2 = reparametrize(f, squaring(f.field))
        ms = [parametric_multiplicity(f2, p) for p in config.points]
        if f2.degree != 2 * d or ms != [2 * m for m in label.m]:
            v.fail("multiplicativity", f"{f}: squared degree {f2.degree}, multiplicities {ms}")
    out.tally[label] += 1


def _run_shard(args: tuple) -> _ShardResult:
    n, d, q, point_coords, start, stop, sample_every = args
    field = Field(q)
    config = BlowupConfig.create([ProjectivePoint(field, c) for c in point_coords])
    params = _parameters(field)
    out = _ShardResult()
    for f in _iter_range(n, d, q, start, stop):
        _check_morphism(f, config, params, out, out.total % sample_every == 0)
    return out


def _exceptional_tally(config: BlowupConfig, q: int, max_e: int, budget: int, v: Verdicts) -> dict:
    tally: dict = {}
    n = config.n
    if n < 2:
        return tally
    for e in range(1, max_e + 1):
        if q ** (n * (e + 1)) > budget:
            log.info("skipping exceptional degree %d: over budget", e)
            break
        curves = list(enumerate_morphisms(n - 1, e, q, budget=budget))
        for i in range(1, config.r + 1):
            count = 0
            for G in curves:
                g = exceptional_lift(i, G.forms, config)
                label = stratum(g)
                if label != Exceptional(i, e):
                    v.fail("exhaustive", f"E_{i} curve {G}: label {label}")
                try:
                    evaluate_lifted(g, (1, 0))
                except CurveStrataError as exc:
                    v.fail("incidence", f"E_{i} curve {G}: {exc}")
                count += 1
            tally[Exceptional(i, e)] = count
    return tally


def census_strata(
    n: int,
    d: int,
    q: int,
    points: Sequence[ProjectivePoint],
    *,
    shards: int = 1,
    budget: int = DEFAULT_BUDGET,
    max_exceptional_degree: int = DEFAULT_MAX_EXCEPTIONAL_DEGREE,
) -> CensusReport:
    """Lift, classify and tally every degree-d morphism over F_q."""
    field = _check_field(q, "census_strata")
    if d < 1:
        raise ValueError("census covers non-constant morphisms (d >= 1)")
    _check_budget(n, d, q, budget, "census_strata")
    config = BlowupConfig.create(points)
    if config.field != field or config.n != n:
        raise DimensionMismatch("census_strata", f"points must be F_{q}-points of P^{n}")
    started = time.perf_counter()
    total = canonical_count(n, d, q)
    shards = max(1, min(shards, total))
    bounds = [total * s // shards for s in range(shards + 1)]
    # Spread the multiplicativity spot check so about 100 morphisms are sampled.
    expected = max(1, raw_estimate(n, d, q))
    sample_every = max(1, math.ceil(expected / MULTIPLICATIVITY_SAMPLE))
    coords = tuple(p.coords for p in config.points)
    jobs = [(n, d, q, coords, bounds[s], bounds[s + 1], sample_every) for s in range(shards)]
    if shards == 1:
        results = [_run_shard(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            results = list(pool.map(_run_shard, jobs))
    merged = results[0]
    for res in results[1:]:
        merged = merged.merge(res)
    verdicts = merged.verdicts
    if len(merged.lift_keys) != merged.total:
        verdicts.fail("lift_unique", f"{merged.total} morphisms but {len(merged.lift_keys)} distinct lifts")
    if sum(merged.tally.values()) != merged.total:
        verdicts.fail("exhaustive", "stratum counts do not sum to the total")
    exceptional = _exceptional_tally(config, q, max_exceptional_degree, budget, verdicts)
    return CensusReport(
        n,
        d,
        q,
        config.points,
        merged.total,
        dict(sorted(merged.tally.items(), key=lambda kv: label_sort_key(kv[0]))),
        exceptional,
        verdicts,
        time.perf_counter() - started,
    )


def raw_estimate(n: int, d: int, q: int) -> int:
    """Leading-order size of Mor_d(P^1, P^n)(F_q), used only for sampling."""
    return q ** ((n + 1) * (d + 1) - 1)


def verify_partition(
    n: int, d: int, q: int, points: Sequence[ProjectivePoint], **kwargs
) -> Verdicts:
    """Run the census and check the counts against the raw-filter count of |Mor_d(F_q)|."""
    return check_partition(census_strata(n, d, q, points, **kwargs))


def check_partition(report: CensusReport) -> Verdicts:
    verdicts = report.verdicts
    expected = raw_filter_count(report.n, report.d, report.q)
    found = sum(report.strata.values())
    if report.total_count != expected or found != expected:
        verdicts.fail("exhaustive", f"strata sum {found} != |Mor_d| = {expected}")
    return verdicts


def strict_drop_holds(report: CensusReport) -> bool:
    """|M_{d,0}| exceeds every |M_{d,m}| with m != 0 (vacuous when M_{d,0} is empty)."""
    zero = Interior(report.d, (0,) * len(report.points))
    base = report.strata.get(zero, 0)
    if base == 0:
        return True
    return all(c < base for label, c in report.strata.items() if label != zero)


def estimate_dimension(counts: Mapping[int, int]) -> int:
    """Slope of log N(q) against log q over the two largest primes."""
    if len(counts) < 2:
        raise InsufficientData("estimate_dimension", "need counts at two or more primes")
    q1, q2 = sorted(counts)[-2:]
    n1, n2 = counts[q1], counts[q2]
    if n1 == 0 or n2 == 0:
        raise ZeroCount("estimate_dimension", "counts must be nonzero")
    return round(math.log(n2 / n1) / math.log(q2 / q1))


def label_counts(report: CensusReport) -> dict[StratumLabel, int]:
    return {**report.strata, **report.exceptional}
