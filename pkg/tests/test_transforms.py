import itertools

import pytest

from mubcurves import mub, phasespace as ps
from mubcurves import transforms as tf
from mubcurves.pauli import PauliOperator, commutes, displacement
from mubcurves.reference import curves_from_rays, transformations_from_rays
from mubcurves.transforms import LocalClifford, LocalRotation

S, S2 = 2, 3


def test_single_qubit_maps_form_gl2():
    tables = tf.MAP_TABLES
    assert len(set(map(lambda t: tuple(sorted(t.items())), tables))) == 6
    for t in tables:
        assert t[(0, 0)] == (0, 0)
        assert sorted(t.values()) == sorted(t.keys())
    assert tf.map_id("zxz") == tf.map_id("y") == tf.map_id("xzx")
    assert tf.map_id("zz") == tf.map_id("xx") == tf.map_id("yy") == 0
    with pytest.raises(ValueError):
        tf.map_id("q")


def test_index_examples():
    z = LocalRotation("z", 0)
    sx, sz = PauliOperator((0,), (1,)), PauliOperator((1,), (0,))
    assert tf.apply_to_indices(z, sx) == PauliOperator((1,), (1,))
    assert tf.apply_to_indices(z, sz) == sz
    for axis in tf.AXES:
        assert tf.apply_to_indices(LocalRotation(axis, 0), PauliOperator.identity(1)).is_identity


@pytest.mark.parametrize("n", [1, 2, 3])
def test_field_formulas_match_index_maps(n):
    from mubcurves import GF2n

    f = GF2n(n)
    for axis, j in itertools.product(tf.AXES, range(n)):
        rot = LocalRotation(axis, j)
        for a, b in itertools.product(f.elements(), repeat=2):
            assert tf.apply_to_point(rot, (a, b), f) == rot.as_clifford(n).apply_to_point((a, b), f)


def test_point_examples(gf4):
    z1 = LocalRotation("z", 0)
    assert tf.apply_to_point(z1, (0, S), gf4) == (S, S)
    for axis, j in itertools.product(tf.AXES, range(2)):
        assert tf.apply_to_point(LocalRotation(axis, j), (0, 0), gf4) == (0, 0)
    for b in gf4.elements():
        assert tf.apply_to_point(LocalRotation("x", 0), (0, b), gf4)[0] == 0


def test_rotation_rejects_bad_qubit(gf4):
    with pytest.raises(ValueError):
        tf.apply_to_point(LocalRotation("z", 2), (1, 1), gf4)
    with pytest.raises(ValueError):
        LocalRotation("w", 0)


def test_parse_and_word():
    cl = LocalClifford.parse("y@z")
    assert cl.word() == "y@z"
    assert LocalClifford.parse("zxz@1") == LocalClifford.parse("y@1")
    assert LocalClifford.parse("x⊗1").word() == "x@1"
    with pytest.raises(ValueError):
        LocalClifford.parse("y@")


def test_composition():
    x, z = LocalClifford.parse("x"), LocalClifford.parse("z")
    assert x.then(z).then(x) == LocalClifford.parse("y")
    assert x.then(z) == LocalClifford.parse("xz")
    for w in tf.MAP_NAMES:
        cl = LocalClifford.parse(w)
        assert cl.then(LocalClifford.identity(1)) == cl


def test_commutation_preserved(gf8):
    pts = [(a, b) for a in gf8.elements() for b in gf8.elements()][::5]
    for cl in list(tf.all_local_cliffords(3))[::17]:
        for p, q in itertools.combinations(pts, 2):
            dp, dq = displacement(gf8, *p), displacement(gf8, *q)
            assert commutes(dp, dq) == commutes(cl.apply_to_indices(dp), cl.apply_to_indices(dq))


def test_curve_images(gf4, census4):
    v = ps.ray(gf4, 0, 1)
    assert tf.apply_to_curve(LocalClifford.parse("y@y"), v) == ps.ray(gf4, 1, 0)
    assert tf.apply_to_curve(LocalClifford.parse("z@y"), v).equation() == "beta = s2*alpha + alpha^2"
    for c in census4:
        for cl in tf.all_local_cliffords(2):
            img = tf.apply_to_curve(cl, c)
            assert img in census4
            # local maps preserve the separability label
            assert (
                mub.separability_structure(mub.class_from_curve(img)).label
                == mub.separability_structure(mub.class_from_curve(c)).label
            )


def test_bundle_maps_from_rays(tables4):
    rays = tables4["table1"]
    for label, word in transformations_from_rays().items():
        assert tf.apply_to_bundle(LocalClifford.parse(word), rays) == tables4[label]
        found = tf.find_transformation(rays, tables4[label])
        assert found is not None and tf.apply_to_bundle(found, rays) == tables4[label]
    assert tf.find_transformation(rays, rays) == LocalClifford.identity(2)
    assert tf.apply_to_bundle(LocalClifford.identity(2), rays) == rays


def test_least_word_is_deterministic(tables4):
    rays = tables4["table1"]
    words = {lab: tf.find_transformation(rays, b).word() for lab, b in tables4.items()}
    assert words == {
        "table1": "1@1", "table2": "1@x", "table3": "1@z",
        "table4": "1@zx", "table5": "1@xz", "table6": "1@y",
    }


def test_curves_from_rays_table(gf4):
    for group in curves_from_rays():
        src = ps.curve_from_coeffs(gf4, group["source"]["mu"], group["source"]["eta"])
        for entry in group["entries"]:
            target = ps.curve_from_coeffs(gf4, entry["mu"], entry["eta"])
            assert tf.apply_to_curve(LocalClifford.parse(entry["transformation"]), src) == target


def test_gf4_bundles_fully_connected(bundles4):
    conn = tf.connectivity(bundles4)
    assert all(w is not None for row in conn for w in row)


def test_gf8_orbit_of_rays(bundles8):
    rays = next(b for b in bundles8 if all(c.kind is ps.CurveKind.RAY for c in b.curves))
    reachable = tf.orbit(rays)
    assert len(reachable) == 36
    outside = [b for b in bundles8 if b.point_sets not in reachable]
    assert len(outside) == 924
    assert tf.find_transformation(rays, outside[0]) is None


def test_rotated_ray_forms(gf4):
    # z on alpha = c beta gives alpha = (c + t^2) beta + beta^2; x is the mirror image
    f = gf4
    for eta, zeta in itertools.product(f.elements(), repeat=2):
        if (eta, zeta) == (0, 0):
            continue
        src = ps.ray(f, eta, zeta)
        for j, t in enumerate(f.basis):
            t2 = f.mul(t, t)
            if zeta:
                c = f.mul(eta, f.inv(zeta))
                img = tf.apply_to_curve(LocalRotation("z", j), src)
                assert img.points == {(f.mul(c ^ t2, b) ^ f.mul(b, b), b) for b in f.elements()}
            if eta:
                c = f.mul(zeta, f.inv(eta))
                img = tf.apply_to_curve(LocalRotation("x", j), src)
                assert img.points == {(a, f.mul(c ^ t2, a) ^ f.mul(a, a)) for a in f.elements()}
