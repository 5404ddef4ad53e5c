"""Additive curves in the discrete phase space GF(2^n) x GF(2^n).

A curve is parametrized by linearized polynomials

    alpha(k) = sum_m mu[m] * k**(2**m),    beta(k) = sum_m eta[m] * k**(2**m)

and is identified by its point set. Valid curves are nonsingular (the
parametrization is injective) and commutative (the displacement operators
on their points pairwise commute), i.e. Lagrangian subspaces of the
symplectic space Z_2^(2n).
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .gf import GF2n, rank_gf2

Point = tuple[int, int]

MAX_EXHAUSTIVE_DEGREE = 3
MAX_SAMPLED_DEGREE = 4
WORKERS_ENV = "MUBCURVES_MAX_WORKERS"


class CurveError(ValueError):
    """A coefficient vector does not define a valid curve."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class CapabilityError(ValueError):
    pass


class CurveKind(enum.Enum):
    RAY = "ray"
    REGULAR_ALPHA = "regular-alpha"
    REGULAR_BETA = "regular-beta"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class Classification:
    kind: CurveKind
    alpha_degenerate: bool
    beta_degenerate: bool
    # point set invariant under (alpha, beta) -> (beta, alpha)
    symmetric: bool


# -- evaluation ---------------------------------------------------------------


def evaluate(field: GF2n, coeffs: Sequence[int], kappa: int) -> int:
    value, power = 0, kappa
    for c in coeffs:
        value ^= field.mul(c, power)
        power = field.mul(power, power)
    return value


def parametrize(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> list[Point]:
    """Points ``(alpha(k), beta(k))`` listed in order of ``k``."""
    return [(evaluate(field, mu, k), evaluate(field, eta, k)) for k in field.elements()]


def is_additive(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> bool:
    pts = parametrize(field, mu, eta)
    return all(
        pts[k ^ k2] == (pts[k][0] ^ pts[k2][0], pts[k][1] ^ pts[k2][1])
        for k in field.elements()
        for k2 in field.elements()
    )


def _twisted_sums(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> list[int]:
    # c[j] = sum_m (mu[m] * eta[m+j]) ** (2 ** -m)
    n = field.n
    return [
        _xor_all(field.frobenius(field.mul(mu[m], eta[(m + j) % n]), n - m) for m in range(n))
        for j in range(n)
    ]


def _xor_all(values: Iterable[int]) -> int:
    r = 0
    for v in values:
        r ^= v
    return r


def commutativity_condition(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> bool:
    """Coefficient-level test that all displacements on the curve commute.

    The form ``tr(alpha(k) beta(k'))`` equals ``tr(k * L(k'))`` for the
    linearized map ``L(y) = sum_j c[j] y**(2**j)``; it is symmetric exactly
    when ``L`` is self-adjoint under the trace form, i.e.
    ``c[j] == c[-j] ** (2**j)`` for every j. For n = 2 this reduces to
    ``tr(mu1 eta0) == tr(mu0 eta1)``.
    """
    n = field.n
    c = _twisted_sums(field, mu, eta)
    return all(c[j] == field.frobenius(c[(n - j) % n], j) for j in range(1, n))


def trace_sum_condition(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> bool:
    """``sum_{m != k} tr(mu[m] eta[k]) == 0``.

    Equivalent to :func:`commutativity_condition` for n <= 2; for larger n it
    is only a necessary condition.
    """
    n = field.n
    total = 0
    for m in range(n):
        for k in range(n):
            if m != k:
                total ^= field.trace(field.mul(mu[m], eta[k]))
    return total == 0


def commutes_pairwise(field: GF2n, points: Iterable[Point]) -> bool:
    """Brute-force oracle: every pair of points passes the symplectic trace test."""
    pts = list(points)
    tr, mul = field.trace, field.mul
    return all(
        tr(mul(a1, b2)) == tr(mul(a2, b1))
        for i, (a1, b1) in enumerate(pts)
        for (a2, b2) in pts[i + 1:]
    )


# -- curves ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Curve:
    field: GF2n
    mu: tuple[int, ...]
    eta: tuple[int, ...]
    points: frozenset[Point]
    classification: Classification = dc_field(repr=False)

    @property
    def kind(self) -> CurveKind:
        return self.classification.kind

    @cached_property
    def sorted_points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @property
    def nonzero_points(self) -> tuple[Point, ...]:
        return tuple(p for p in self.sorted_points if p != (0, 0))

    def alpha(self, kappa: int) -> int:
        return evaluate(self.field, self.mu, kappa)

    def beta(self, kappa: int) -> int:
        return evaluate(self.field, self.eta, kappa)

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.field == other.field and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __lt__(self, other: "Curve") -> bool:
        return self.sorted_points < other.sorted_points

    def equation(self) -> str:
        return curve_equation(self)

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "eta": list(self.eta),
            "points": [list(p) for p in self.sorted_points],
            "kind": self.kind.value,
        }

    @classmethod
    def from_json(cls, field: GF2n, obj: dict) -> "Curve":
        curve = curve_from_coeffs(field, obj["mu"], obj["eta"])
        if "points" in obj and {tuple(p) for p in obj["points"]} != set(curve.points):
            raise ValueError("serialized points do not match the coefficients")
        return curve


def _is_scalar_closed(field: GF2n, points: frozenset[Point]) -> bool:
    return all((field.mul(c, a), field.mul(c, b)) in points for a, b in points for c in field.elements())


def classify(curve: Curve) -> Classification:
    return _classify(curve.field, curve.points)


def _classify(field: GF2n, points: frozenset[Point]) -> Classification:
    d = field.order
    alpha_deg = len({a for a, _ in points}) < d
    beta_deg = len({b for _, b in points}) < d
    symmetric = {(b, a) for a, b in points} == points
    if _is_scalar_closed(field, points):
        kind = CurveKind.RAY
    elif alpha_deg and beta_deg:
        kind = CurveKind.EXCEPTIONAL
    elif not alpha_deg:
        kind = CurveKind.REGULAR_ALPHA
    else:
        kind = CurveKind.REGULAR_BETA
    return Classification(kind, alpha_deg, beta_deg, symmetric)


def _normalize_coeffs(field: GF2n, coeffs: Sequence[int], name: str) -> tuple[int, ...]:
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != field.n:
        raise ValueError(f"{name} needs {field.n} coefficients, got {len(coeffs)}")
    for c in coeffs:
        field.check(c)
    return coeffs


def curve_from_coeffs(field: GF2n, mu: Sequence[int], eta: Sequence[int]) -> Curve:
    """Build and validate a curve, raising :class:`CurveError` on failure."""
    mu = _normalize_coeffs(field, mu, "mu")
    eta = _normalize_coeffs(field, eta, "eta")
    pts = parametrize(field, mu, eta)
    if not is_additive(field, mu, eta):
        raise CurveError("nonadditive", f"mu={mu}, eta={eta}")
    points = frozenset(pts)
    if len(points) != field.order:
        raise CurveError("singular", f"only {len(points)} distinct points for mu={mu}, eta={eta}")
    if not commutativity_condition(field, mu, eta):
        raise CurveError("noncommuting", f"mu={mu}, eta={eta}")
    return Curve(field, mu, eta, points, _classify(field, points))


def ray(field: GF2n, eta: int, zeta: int) -> Curve:
    """The line ``{(eta k, zeta k)}``, returned in canonical parametrization."""
    field.check(eta)
    field.check(zeta)
    if eta == 0 and zeta == 0:
        raise ValueError("ray direction must be nonzero")
    points = frozenset((field.mul(eta, k), field.mul(zeta, k)) for k in field.elements())
    return canonical_curve(field, points)


def check_commutativity_condition(curve: Curve) -> bool:
    return commutativity_condition(curve.field, curve.mu, curve.eta)


def intersect_only_at_origin(c1: Curve, c2: Curve) -> bool:
    if c1.field != c2.field:
        raise ValueError("curves live in different fields")
    return c1.points & c2.points == {(0, 0)}


def reparametrize(curve: Curve, c: int) -> Curve:
    """Substitute ``k -> c k``; the point set is unchanged for ``c != 0``."""
    f = curve.field
    if c == 0:
        raise ValueError("scale must be nonzero")
    mu = tuple(f.mul(m, f.frobenius(c, i)) for i, m in enumerate(curve.mu))
    eta = tuple(f.mul(e, f.frobenius(c, i)) for i, e in enumerate(curve.eta))
    return curve_from_coeffs(f, mu, eta)


# -- canonical parametrization ----------------------------------------------------


def coeff_key(mu: Sequence[int], eta: Sequence[int]) -> tuple[int, ...]:
    """Ordering key for coefficient vectors: highest Frobenius power first,
    so that linear parametrizations of rays are always the least."""
    return tuple(reversed(mu)) + tuple(reversed(eta))


def linear_map_coeffs(field: GF2n, images: Sequence[int]) -> tuple[int, ...]:
    """Linearized-polynomial coefficients of the Z_2-linear map sending the
    self-dual basis element ``t_i`` to ``images[i]``.

    With a self-dual basis ``k = sum_i tr(k t_i) t_i``, hence
    ``coeff[m] = sum_i t_i**(2**m) * images[i]``.
    """
    return tuple(
        _xor_all(field.mul(field.frobenius(t, m), v) for t, v in zip(field.basis, images))
        for m in range(field.n)
    )


def _point_code(field: GF2n, p: Point) -> int:
    return p[0] << field.n | p[1]


def canonical_curve(field: GF2n, points: Iterable[Point]) -> Curve:
    """The curve through ``points`` with the least coefficient key."""
    points = frozenset(points)
    if (0, 0) not in points or len(points) != field.order:
        raise CurveError("singular", f"{len(points)} points do not form a curve")
    nonzero = sorted(p for p in points if p != (0, 0))
    best = None
    for images in itertools.permutations(nonzero, field.n):
        if rank_gf2(_point_code(field, p) for p in images) != field.n:
            continue
        mu = linear_map_coeffs(field, [p[0] for p in images])
        eta = linear_map_coeffs(field, [p[1] for p in images])
        key = coeff_key(mu, eta)
        if best is None or key < best[0]:
            best = (key, mu, eta)
    if best is None:
        raise CurveError("nonadditive", "points are not closed under addition")
    curve = curve_from_coeffs(field, best[1], best[2])
    if curve.points != points:
        raise CurveError("nonadditive", "points are not closed under addition")
    return curve


# -- census -----------------------------------------------------------------------


class CurveCensus(list):
    """List of curves tagged with whether the search was exhaustive."""

    def __init__(self, curves: Iterable[Curve] = (), exhaustive: bool = True):
        super().__init__(curves)
        self.exhaustive = exhaustive

    def counts(self) -> dict[str, int]:
        out = {k.value: 0 for k in CurveKind}
        for c in self:
            out[c.kind.value] += 1
        return out


def _coeff_vectors(field: GF2n) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """All coefficient vectors in key order with their value tables and zero masks."""
    d, n = field.order, field.n
    out = []
    for rev in itertools.product(range(d), repeat=n):
        coeffs = rev[::-1]
        values = tuple(evaluate(field, coeffs, k) for k in range(d))
        zero_mask = sum(1 << k for k, v in enumerate(values) if v == 0)
        out.append((coeffs, values, zero_mask))
    return out


def _scan_chunk(args) -> dict[frozenset, tuple[tuple[int, ...], tuple[int, ...]]]:
    field_json, mu_slice = args
    field = GF2n.from_json(field_json)
    vectors = _coeff_vectors(field)
    found: dict[frozenset, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for mu, avals, amask in vectors[mu_slice[0]:mu_slice[1]]:
        for eta, bvals, bmask in vectors:
            if amask & bmask != 1:
                continue  # a nonzero k maps to the origin
            if not commutativity_condition(field, mu, eta):
                continue
            pts = frozenset(zip(avals, bvals))
            if pts not in found:
                found[pts] = (mu, eta)
    return found


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def enumerate_structures(
    field: GF2n,
    *,
    sample: int | None = None,
    seed: int = 0,
    workers: int | None = None,
) -> CurveCensus:
    """All distinct valid curves, sorted by their sorted point lists.

    Exhaustive for n <= 3. For n = 4 the coefficient space is too large to
    scan; pass ``sample`` to draw that many random coefficient vectors
    instead, and the result is marked non-exhaustive.
    """
    n = field.n
    if sample is not None:
        if n > MAX_SAMPLED_DEGREE:
            raise CapabilityError(f"sampled census supports n <= {MAX_SAMPLED_DEGREE}")
        return _sampled_census(field, sample, seed)
    if n > MAX_EXHAUSTIVE_DEGREE:
        raise CapabilityError(
            f"exhaustive census supports n <= {MAX_EXHAUSTIVE_DEGREE}; "
            f"n = {MAX_SAMPLED_DEGREE} needs an explicit sample size"
        )
    cap = _max_workers()
    workers = min(workers, cap) if workers else cap
    total = field.order ** n
    if workers > 1 and total >= 64:
        step = -(-total // workers)
        chunks = [(field.to_json(), (i, min(i + step, total))) for i in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, chunks))
    else:
        parts = [_scan_chunk((field.to_json(), (0, total)))]
    best: dict[frozenset, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for part in parts:
        for pts, (mu, eta) in part.items():
            if pts not in best or coeff_key(mu, eta) < coeff_key(*best[pts]):
                best[pts] = (mu, eta)
    curves = [curve_from_coeffs(field, mu, eta) for mu, eta in best.values()]
    return CurveCensus(sorted(curves), exhaustive=True)


def _sampled_census(field: GF2n, samples: int, seed: int) -> CurveCensus:
    import random

    rng = random.Random(seed)
    d, n = field.order, field.n
    seen = set()
    for _ in range(samples):
        mu = [rng.randrange(d) for _ in range(n)]
        eta = [rng.randrange(d) for _ in range(n)]
        pts = frozenset(parametrize(field, mu, eta))
        if len(pts) == d and pts not in seen and commutativity_condition(field, mu, eta):
            seen.add(pts)
    curves = [canonical_curve(field, pts) for pts in seen]
    return CurveCensus(sorted(curves), exhaustive=False)


# -- bundles ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Bundle:
    curves: tuple[Curve, ...]
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        if not self.curves:
            raise ValueError("empty bundle")
        problems = bundle_problems(self.curves)
        if problems:
            raise ValueError("invalid bundle: " + "; ".join(problems))

    @property
    def field(self) -> GF2n:
        return self.curves[0].field

    @property
    def point_sets(self) -> frozenset[frozenset[Point]]:
        return frozenset(c.points for c in self.curves)

    def __eq__(self, other):
        if not isinstance(other, Bundle):
            return NotImplemented
        return self.point_sets == other.point_sets

    def __hash__(self):
        return hash(self.point_sets)

    def to_json(self) -> dict:
        return {"curves": [c.to_json() for c in self.curves], "table_label": self.label}

    @classmethod
    def from_json(cls, field: GF2n, obj: dict) -> "Bundle":
        return cls(tuple(Curve.from_json(field, c) for c in obj["curves"]), obj.get("table_label"))


def bundle_problems(curves: Sequence[Curve]) -> list[str]:
    """Reasons why ``curves`` fail to partition the nonzero phase-space points."""
    problems = []
    field = curves[0].field
    d = field.order
    if len(curves) != d + 1:
        problems.append(f"expected {d + 1} curves, got {len(curves)}")
    for i, c1 in enumerate(curves):
        for j in range(i + 1, len(curves)):
            if not intersect_only_at_origin(c1, curves[j]):
                problems.append(f"curves {i} and {j} meet away from the origin")
    covered = set().union(*(c.points for c in curves)) - {(0, 0)}
    if len(covered) != d * d - 1:
        problems.append(f"covers {len(covered)} of {d * d - 1} nonzero points")
    return problems


def enumerate_bundles(field: GF2n, structures: Sequence[Curve] | None = None) -> list[Bundle]:
    """Every set of d + 1 curves partitioning the nonzero points (exact cover)."""
    if structures is None:
        structures = enumerate_structures(field)
    structures = sorted(structures)
    d = field.order
    by_point: dict[Point, list[int]] = {}
    for idx, c in enumerate(structures):
        for p in c.nonzero_points:
            by_point.setdefault(p, []).append(idx)
    all_points = sorted(by_point)
    if len(all_points) != d * d - 1:
        return []

    found: list[tuple[int, ...]] = []

    def search(chosen: list[int], covered: set[Point]) -> None:
        if len(covered) == d * d - 1:
            found.append(tuple(sorted(chosen)))
            return
        # branch on the uncovered point with the fewest candidate curves
        best_point, best_opts = None, None
        for p in all_points:
            if p in covered:
                continue
            opts = [i for i in by_point[p] if not covered.intersection(structures[i].nonzero_points)]
            if best_opts is None or len(opts) < len(best_opts):
                best_point, best_opts = p, opts
                if not opts:
                    return
        for i in best_opts:
            pts = structures[i].nonzero_points
            chosen.append(i)
            covered.update(pts)
            search(chosen, covered)
            covered.difference_update(pts)
            chosen.pop()

    search([], set())
    bundles = [Bundle(tuple(structures[i] for i in idxs)) for idxs in sorted(set(found))]
    if field.n == 2:
        from .reference import label_bundles

        bundles = label_bundles(bundles)
    return bundles


# -- striations ------------------------------------------------------------------------


def striation_direction(curve: Curve) -> Point:
    """A direction whose multiples meet the curve only at the origin.

    Shifting beta is the default; curves meeting the vertical axis shift alpha
    instead, and curves meeting both axes shift along the first
    complementary ray.
    """
    f = curve.field
    for v in [(0, 1), (1, 0)] + [(1, z) for z in f.elements() if z not in (0, 1)] + [(1, 1)]:
        line = {(f.mul(v[0], k), f.mul(v[1], k)) for k in f.elements()}
        if line & curve.points == {(0, 0)}:
            return v
    raise AssertionError("no complementary direction; curve is not Lagrangian")


def striation(curve: Curve, lam: int, direction: Point | None = None) -> frozenset[Point]:
    """The translate of ``curve`` by ``lam`` times the striation direction."""
    f = curve.field
    f.check(lam)
    va, vb = direction if direction is not None else striation_direction(curve)
    sa, sb = f.mul(va, lam), f.mul(vb, lam)
    return frozenset((a ^ sa, b ^ sb) for a, b in curve.points)


def striations(curve: Curve) -> list[frozenset[Point]]:
    v = striation_direction(curve)
    return [striation(curve, lam, v) for lam in curve.field.elements()]


# -- display ---------------------------------------------------------------------------


def _poly_string(field: GF2n, coeffs: Sequence[int], var: str) -> str:
    terms = []
    for m, c in enumerate(coeffs):
        if c == 0:
            continue
        power = var if m == 0 else f"{var}^{1 << m}"
        terms.append(power if c == 1 else f"{field.label(c)}*{power}")
    return " + ".join(terms) if terms else "0"


def curve_equation(curve: Curve) -> str:
    """Explicit equation when one coordinate is nondegenerate, else the parametric form."""
    f = curve.field
    cls = curve.classification
    if not cls.alpha_degenerate:
        table = dict(curve.points)
        coeffs = linear_map_coeffs(f, [table[t] for t in f.basis])
        return f"beta = {_poly_string(f, coeffs, 'alpha')}"
    if not cls.beta_degenerate:
        table = {b: a for a, b in curve.points}
        coeffs = linear_map_coeffs(f, [table[t] for t in f.basis])
        return f"alpha = {_poly_string(f, coeffs, 'beta')}"
    return f"alpha = {_poly_string(f, curve.mu, 'k')}, beta = {_poly_string(f, curve.eta, 'k')}"
