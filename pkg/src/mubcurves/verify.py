"""End-to-end invariant checks behind the ``verify`` command."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import mub, phasespace as ps, transforms as tf
from .gf import GF2n
from .reference import curves_from_rays, reference_tables, transformations_from_rays

# Regression values from exhaustive enumeration.
CENSUS_COUNTS = {1: 3, 2: 15, 3: 135}
BUNDLE_COUNTS = {1: 1, 2: 6, 3: 960}
KIND_COUNTS_GF4 = {"ray": 5, "regular": 7, "exceptional": 3}
MAX_VERIFY_DEGREE = 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


class _Context:
    """Lazily computed shared objects so each check reuses earlier work."""

    def __init__(self, n: int):
        self.field = GF2n(n)
        self._census = None
        self._bundles = None
        self._classes = {}
        self._bases = {}

    @property
    def census(self):
        if self._census is None:
            self._census = ps.enumerate_structures(self.field)
        return self._census

    @property
    def bundles(self):
        if self._bundles is None:
            self._bundles = ps.enumerate_bundles(self.field, self.census)
        return self._bundles

    def cls(self, curve):
        if curve.points not in self._classes:
            self._classes[curve.points] = mub.class_from_curve(curve)
        return self._classes[curve.points]

    def basis(self, curve):
        if curve.points not in self._bases:
            self._bases[curve.points] = mub.eigenbasis(self.cls(curve))
        return self._bases[curve.points]


def _check_field(ctx: _Context) -> CheckResult:
    f = ctx.field
    zeros = sum(1 for x in f.elements() if f.trace(x) == 0)
    ok = f.is_self_dual and zeros == f.order // 2
    return CheckResult("field: self-dual basis and balanced trace", ok, f"basis={f.basis}, trace-0 count={zeros}")


def _check_census(ctx: _Context) -> CheckResult:
    f, census = ctx.field, ctx.census
    bad = [
        c.equation()
        for c in census
        if not (
            ps.is_additive(f, c.mu, c.eta)
            and len(c.points) == f.order
            and ps.commutes_pairwise(f, c.points) == ps.check_commutativity_condition(c)
        )
    ]
    expected = CENSUS_COUNTS.get(f.n)
    counts = census.counts()
    ok = not bad and (expected is None or len(census) == expected)
    if f.n == 2:
        summary = {
            "ray": counts["ray"],
            "regular": counts["regular-alpha"] + counts["regular-beta"],
            "exceptional": counts["exceptional"],
        }
        ok = ok and summary == KIND_COUNTS_GF4
    return CheckResult("census: count and per-curve validity", ok, f"{len(census)} curves {counts}; invalid={bad}")


def _check_bundles(ctx: _Context) -> CheckResult:
    bundles = ctx.bundles
    expected = BUNDLE_COUNTS.get(ctx.field.n)
    bad = [i for i, b in enumerate(bundles) if ps.bundle_problems(b.curves)]
    ok = not bad and (expected is None or len(bundles) == expected)
    return CheckResult("bundles: count and partition of nonzero points", ok, f"{len(bundles)} bundles; invalid={bad}")


def _check_unbiased(ctx: _Context) -> CheckResult:
    checked = {}
    disagreements = 0
    failures = 0
    for b in ctx.bundles:
        for c1, c2 in itertools.combinations(b.curves, 2):
            key = frozenset((c1.points, c2.points))
            if key in checked:
                continue
            exact = mub.verify_unbiased_exact(ctx.cls(c1), ctx.cls(c2))
            vec = mub.verify_unbiased_vectors(ctx.basis(c1), ctx.basis(c2))
            checked[key] = exact
            failures += not exact
            disagreements += exact != vec
    ok = failures == 0 and disagreements == 0
    return CheckResult(
        "unbiasedness: class disjointness and exact overlaps agree",
        ok,
        f"{len(checked)} distinct pairs, {failures} failures, {disagreements} disagreements",
    )


def _check_orthonormal(ctx: _Context) -> CheckResult:
    from fractions import Fraction

    bad = 0
    for c in ctx.census:
        g = ctx.basis(c).gram()
        bad += any(g[i][j] != Fraction(int(i == j)) for i in range(len(g)) for j in range(len(g)))
    return CheckResult("eigenbases: exact orthonormality", bad == 0, f"{bad} non-orthonormal bases")


def _check_separability(ctx: _Context) -> CheckResult:
    if ctx.field.n != 2:
        structures = {}
        for c in ctx.census:
            lab = mub.separability_structure(ctx.cls(c)).label
            structures[lab] = structures.get(lab, 0) + 1
        return CheckResult("separability: structure census (descriptive)", True, str(dict(sorted(structures.items()))))
    bad = []
    for b in ctx.bundles:
        labels = [mub.separability_structure(ctx.cls(c)).label for c in b.curves]
        if labels.count(mub.FACTORABLE) != 3 or labels.count(mub.MAX_ENTANGLED) != 2:
            bad.append(b.label)
        for i, c in enumerate(b.curves):
            basis = ctx.basis(c)
            purity = {mub.reduced_purity(basis, k, [0]) for k in range(basis.dim)}
            expected = {1} if labels[i] == mub.FACTORABLE else {mub.Fraction(1, 2)}
            if purity != expected:
                bad.append(f"{b.label} row {i + 1} purity {purity}")
    return CheckResult("separability: 3 factorable + 2 maximally entangled per bundle", not bad, f"bad={bad}")


def _check_tables(ctx: _Context) -> CheckResult:
    labels = {b.label: b for b in ctx.bundles}
    problems = []
    for table in reference_tables():
        b = labels.get(table.label)
        if b is None:
            problems.append(f"{table.label} missing")
            continue
        report = mub.bundle_report(b)
        problems += [f"{table.label}: {f}" for f in report["flags"]]
    return CheckResult("tables: operator and factorized columns match reference", not problems, "; ".join(problems))


def _check_transformations(ctx: _Context) -> CheckResult:
    f = ctx.field
    labels = {b.label: b for b in ctx.bundles}
    rays = labels["table1"]
    problems = []
    for label, word in transformations_from_rays().items():
        target = labels[label]
        found = tf.find_transformation(rays, target)
        if found is None or tf.apply_to_bundle(found, rays) != target:
            problems.append(f"{label}: search failed")
        if tf.apply_to_bundle(tf.LocalClifford.parse(word), rays) != target:
            problems.append(f"{label}: {word} does not map rays onto it")
    for group in curves_from_rays():
        src = ps.curve_from_coeffs(f, group["source"]["mu"], group["source"]["eta"])
        for entry in group["entries"]:
            target = ps.curve_from_coeffs(f, entry["mu"], entry["eta"])
            image = tf.apply_to_curve(tf.LocalClifford.parse(entry["transformation"]), src)
            if image != target:
                problems.append(f"{entry['transformation']} on {group['source']['curve']} != {entry['curve']}")
    unconnected = [
        (s.label, d.label) for s in ctx.bundles for d in ctx.bundles if tf.find_transformation(s, d) is None
    ]
    if unconnected:
        problems.append(f"unconnected pairs {unconnected}")
    return CheckResult("transformations: reference maps and full connectivity", not problems, "; ".join(problems))


def _check_nonlocal(ctx: _Context) -> CheckResult:
    rays = next(b for b in ctx.bundles if all(c.kind is ps.CurveKind.RAY for c in b.curves))
    reachable = tf.orbit(rays)
    outside = [b for b in ctx.bundles if b.point_sets not in reachable]
    witnesses = [b for b in outside[:2] if tf.find_transformation(rays, b) is None]
    ok = len(witnesses) == 2
    return CheckResult(
        "transformations: some bundles unreachable from the rays by local maps",
        ok,
        f"{len(reachable)} reachable, {len(outside)} unreachable of {len(ctx.bundles)}",
    )


def _check_striations(ctx: _Context) -> CheckResult:
    f = ctx.field
    grid = {(a, b) for a in f.elements() for b in f.elements()}
    bad = []
    for c in ctx.census:
        shifts = ps.striations(c)
        union = set().union(*shifts)
        if union != grid or sum(len(s) for s in shifts) != len(grid):
            bad.append(c.equation())
    return CheckResult("striations: parallel shifts tile the grid", not bad, f"bad={bad}")


def run_checks(n: int) -> list[CheckResult]:
    if not 1 <= n <= MAX_VERIFY_DEGREE:
        raise ps.CapabilityError(f"verify supports 1 <= n <= {MAX_VERIFY_DEGREE}")
    ctx = _Context(n)
    checks: list[Callable[[_Context], CheckResult]] = [
        _check_field,
        _check_census,
        _check_bundles,
        _check_unbiased,
        _check_orthonormal,
        _check_separability,
        _check_striations,
    ]
    if n == 2:
        checks += [_check_tables, _check_transformations]
    if n >= 3:
        checks.append(_check_nonlocal)
    results = []
    for check in checks:
        try:
            results.append(check(ctx))
        except Exception as exc:  # a crashing check is a failed check
            results.append(CheckResult(check.__name__.removeprefix("_check_"), False, f"error: {exc!r}"))
    return results
