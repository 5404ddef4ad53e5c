import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mubcurves import phasespace as ps
from mubcurves.gf import GF2n
from mubcurves.phasespace import CurveError, CurveKind

S, S2 = 2, 3  # sigma and sigma^2 in GF(4)


def _kinds(census):
    c = census.counts()
    return c["ray"], c["regular-alpha"] + c["regular-beta"], c["exceptional"]


def test_census_gf4(census4):
    assert len(census4) == 15
    assert _kinds(census4) == (5, 7, 3)
    assert census4.counts()["regular-alpha"] == 4 and census4.counts()["regular-beta"] == 3
    assert census4.exhaustive


def test_census_gf2():
    census = ps.enumerate_structures(GF2n(1))
    assert len(census) == 3
    assert all(c.kind is CurveKind.RAY for c in census)
    assert {c.equation() for c in census} == {"alpha = 0", "beta = 0", "beta = alpha"}


def test_census_gf8_regression(census8):
    # 135 = (2+1)(4+1)(8+1): every Lagrangian subspace of the 6-dim symplectic space
    assert len(census8) == 135
    assert census8.counts()["ray"] == 9


def test_census_parallel_matches_serial(gf4, census4, monkeypatch):
    monkeypatch.setenv(ps.WORKERS_ENV, "2")
    assert list(ps.enumerate_structures(gf4, workers=2)) == list(census4)


def test_census_gf16_needs_sampling():
    f = GF2n(4)
    with pytest.raises(ps.CapabilityError):
        ps.enumerate_structures(f)
    sampled = ps.enumerate_structures(f, sample=300, seed=1)
    assert not sampled.exhaustive
    for c in sampled:
        assert ps.commutes_pairwise(f, c.points)


def test_every_census_curve_is_valid(census4, census8):
    for census in (census4, census8):
        for c in census:
            f = c.field
            assert len(c.points) == f.order
            assert ps.is_additive(f, c.mu, c.eta)
            assert ps.commutes_pairwise(f, c.points)
            # the stored parametrization is the canonical one
            assert ps.canonical_curve(f, c.points).mu == c.mu


def test_ray_examples(gf4):
    assert ps.ray(gf4, 0, 1).points == {(0, k) for k in range(4)}
    assert ps.ray(gf4, 1, 0).points == {(k, 0) for k in range(4)}
    r = ps.ray(gf4, 1, S)
    assert (S, S2) in r.points and r.kind is CurveKind.RAY
    assert ps.ray(gf4, S, S2) == r  # proportional directions coincide
    with pytest.raises(ValueError):
        ps.ray(gf4, 0, 0)


def test_curve_from_coeffs_examples(gf4):
    c = ps.curve_from_coeffs(gf4, (S, 0), (0, S2))
    assert c.points == {(a, gf4.mul(a, a)) for a in range(4)}
    assert c.kind is CurveKind.REGULAR_ALPHA and c.classification.symmetric

    e = ps.curve_from_coeffs(gf4, (1, 1), (S, S2))
    assert e.points == {(0, 0), (0, 1), (1, 1), (1, 0)}
    assert e.kind is CurveKind.EXCEPTIONAL
    assert e.classification.alpha_degenerate and e.classification.beta_degenerate

    accepted = ps.curve_from_coeffs(gf4, (0, 1), (1, 1))
    assert accepted.kind is CurveKind.REGULAR_ALPHA

    with pytest.raises(CurveError) as exc:
        ps.curve_from_coeffs(gf4, (1, 1), (1, 1))
    assert exc.value.reason == "singular"


def test_noncommuting_rejected(gf4):
    # alpha = k, beta = k^2 + k: points do not commute pairwise? check against the oracle
    for mu, eta in itertools.product(itertools.product(range(4), repeat=2), repeat=2):
        pts = set(ps.parametrize(gf4, mu, eta))
        if len(pts) == 4 and not ps.commutes_pairwise(gf4, pts):
            with pytest.raises(CurveError) as exc:
                ps.curve_from_coeffs(gf4, mu, eta)
            assert exc.value.reason == "noncommuting"
            return
    pytest.fail("no noncommuting nonsingular parametrization found")


def test_wrong_coefficient_count(gf4):
    with pytest.raises(ValueError):
        ps.curve_from_coeffs(gf4, (1,), (0, 0))


def test_commutativity_condition_examples(gf4):
    assert ps.commutativity_condition(gf4, (1, 0), (S, 0))
    for eta0 in range(4):
        assert ps.commutativity_condition(gf4, (S, 0), (eta0, S2))
    assert ps.commutativity_condition(gf4, (0, 1), (1, 0))


def test_commutativity_condition_matches_oracle_gf4(gf4):
    for mu, eta in itertools.product(itertools.product(range(4), repeat=2), repeat=2):
        expected = ps.commutes_pairwise(gf4, ps.parametrize(gf4, mu, eta))
        assert ps.commutativity_condition(gf4, mu, eta) == expected
        assert ps.trace_sum_condition(gf4, mu, eta) == expected


def test_trace_sum_condition_insufficient_in_gf8(gf8):
    rng = random.Random(7)
    counterexamples = 0
    for _ in range(4000):
        mu = [rng.randrange(8) for _ in range(3)]
        eta = [rng.randrange(8) for _ in range(3)]
        exact = ps.commutes_pairwise(gf8, ps.parametrize(gf8, mu, eta))
        assert ps.commutativity_condition(gf8, mu, eta) == exact
        if exact:
            assert ps.trace_sum_condition(gf8, mu, eta)
        counterexamples += ps.trace_sum_condition(gf8, mu, eta) and not exact
    assert counterexamples > 0


def test_classification_examples(gf4, census4):
    by_eq = {c.equation(): c for c in census4}
    sq = by_eq["beta = alpha^2"]
    assert sq.kind is CurveKind.REGULAR_ALPHA and sq.classification.symmetric
    b = by_eq["beta = alpha + alpha^2"]
    assert b.kind is CurveKind.REGULAR_ALPHA and b.classification.beta_degenerate
    for c in census4:
        cl = c.classification
        assert (c.kind is CurveKind.EXCEPTIONAL) == (
            cl.alpha_degenerate and cl.beta_degenerate and c.kind is not CurveKind.RAY
        )
        assert (c.kind is CurveKind.RAY) == all(x == 0 for x in c.mu[1:] + c.eta[1:])


def test_exceptional_family(gf4, census4):
    exceptional = {c.points for c in census4 if c.kind is CurveKind.EXCEPTIONAL}
    family = set()
    for m in (1, S, S2):
        # alpha = m(k + k^2), beta = k + m k^2 as the family's generic shape
        mu = (m, m)
        eta = (1, m)
        try:
            family.add(ps.curve_from_coeffs(gf4, mu, eta).points)
        except CurveError:
            pass
    assert family <= exceptional


def test_bundles_gf4(bundles4):
    assert len(bundles4) == 6
    assert [b.label for b in bundles4] == [f"table{i}" for i in range(1, 7)]
    rays = bundles4[0]
    assert all(c.kind is CurveKind.RAY for c in rays.curves)
    t4 = [c.kind for c in bundles4[3].curves]
    assert sorted(k.value for k in t4) == sorted(
        ["exceptional", "exceptional", "regular-alpha", "regular-beta", "ray"]
    )
    for b in bundles4:
        assert not ps.bundle_problems(b.curves)


def test_bundles_gf8(bundles8):
    assert len(bundles8) == 960
    for b in bundles8:
        assert len(b.curves) == 9
        assert sum(len(c.nonzero_points) for c in b.curves) == 63


def test_bundle_validation(census4):
    with pytest.raises(ValueError):
        ps.Bundle(tuple(census4[:5]))


def test_intersections(gf4, census4):
    h, v = ps.ray(gf4, 1, 0), ps.ray(gf4, 0, 1)
    assert ps.intersect_only_at_origin(h, v)
    assert ps.intersect_only_at_origin(ps.ray(gf4, 1, S), ps.ray(gf4, 1, S2))
    sq = ps.curve_from_coeffs(gf4, (S, 0), (0, S2))
    sq_t = ps.curve_from_coeffs(gf4, (0, S2), (S, 0))
    assert sq == sq_t and not ps.intersect_only_at_origin(sq, sq_t)


@pytest.mark.parametrize("n", [2, 3])
def test_reparametrization_closure(n, census4, census8):
    census = census4 if n == 2 else census8
    for c in census[::3]:
        for k in range(1, c.field.order):
            assert ps.reparametrize(c, k).points == c.points


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_canonical_curve_idempotent(census8, data):
    c = data.draw(st.sampled_from(list(census8)))
    k = data.draw(st.integers(1, 7))
    r = ps.reparametrize(c, k)
    assert ps.canonical_curve(c.field, r.points) == c
    assert ps.coeff_key(c.mu, c.eta) <= ps.coeff_key(r.mu, r.eta)


def test_striation_examples(gf4, census4):
    sq = ps.curve_from_coeffs(gf4, (S, 0), (0, S2))
    assert ps.striation(sq, 0) == sq.points
    v = ps.ray(gf4, 0, 1)
    # shifting the vertical axis along itself is degenerate, so the transverse direction is used
    assert ps.striation(v, S, direction=(0, 1)) == v.points
    assert ps.striation_direction(v) == (1, 0)
    assert ps.striation(v, S) == {(S, k) for k in range(4)}


@pytest.mark.parametrize("which", ["gf4", "gf8"])
def test_striations_tile_grid(which, census4, census8):
    census = census4 if which == "gf4" else census8
    for c in census:
        f = c.field
        shifts = ps.striations(c)
        assert len(shifts) == f.order
        assert sum(len(s) for s in shifts) == f.order ** 2
        assert len(set().union(*shifts)) == f.order ** 2


def test_equations(census4):
    eqs = {c.equation() for c in census4}
    for e in ["alpha = 0", "beta = 0", "beta = alpha", "beta = s*alpha", "beta = s2*alpha",
              "beta = alpha^2", "beta = s*alpha + alpha^2", "alpha = beta + beta^2"]:
        assert e in eqs


def test_json_roundtrip(gf4, census4, bundles4):
    for c in census4:
        assert ps.Curve.from_json(gf4, c.to_json()) == c
    for b in bundles4:
        assert ps.Bundle.from_json(gf4, b.to_json()) == b
