import json
import os

import numpy as np
import pytest
from scipy.interpolate import BSpline

from bezproj.spline_space import KnotVector, SplineSpace
from bezproj.tmesh import TMesh, read_tmesh_json, tmesh_to_dict, write_tmesh_json


def _load(fixtures_dir, name):
    return read_tmesh_json(os.path.join(fixtures_dir, name + ".json"))


def _anchor_by_span(mesh, x_span, y_span):
    for a in mesh.anchors():
        if a.x_span == x_span and a.y_span == y_span:
            return a
    raise AssertionError(f"no anchor with spans {x_span} x {y_span}")


def _blend_eval(g1, g2, x, y):
    """Tensor blending function straight from scipy basis elements."""
    f1 = BSpline.basis_element(np.asarray(g1, dtype=float), extrapolate=False)
    f2 = BSpline.basis_element(np.asarray(g2, dtype=float), extrapolate=False)
    v1 = np.nan_to_num(f1(x))
    v2 = np.nan_to_num(f2(y))
    return v1 * v2


# ------------------------------------------------------- worked examples


def test_local_knots_even_even(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_a")
    assert mesh.degrees == (2, 2)
    a = _anchor_by_span(mesh, (4, 8), (3, 7))
    assert a.kind == "cell"
    i1, i2 = mesh.local_knot_indices(a)
    assert list(i1) == [3, 4, 8, 10]
    assert list(i2) == [2, 3, 7, 9]
    g1, g2 = mesh.local_knot_vectors(a)
    assert list(g1) == [0, 1, 5, 7]
    assert list(g2) == [0, 0, 4, 6]


def test_local_knots_odd_even(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_b")
    assert mesh.degrees == (3, 2)
    a = _anchor_by_span(mesh, (9, 9), (7, 9))
    assert a.kind == "vedge"
    i1, i2 = mesh.local_knot_indices(a)
    assert list(i1) == [5, 8, 9, 11, 12]
    assert list(i2) == [6, 7, 9, 10]
    g1, g2 = mesh.local_knot_vectors(a)
    assert list(g1) == [1, 4, 5, 7, 7]
    assert list(g2) == [3, 4, 6, 7]


def test_local_knots_even_odd(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_c")
    assert mesh.degrees == (2, 3)
    a = _anchor_by_span(mesh, (4, 7), (8, 8))
    assert a.kind == "hedge"
    i1, i2 = mesh.local_knot_indices(a)
    assert list(i1) == [3, 4, 7, 8]
    assert list(i2) == [3, 4, 8, 9, 10]
    g1, g2 = mesh.local_knot_vectors(a)
    assert list(g1) == [0, 1, 4, 5]
    assert list(g2) == [0, 0, 4, 5, 6]


def test_local_knots_odd_odd(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_d")
    assert mesh.degrees == (3, 3)
    a = _anchor_by_span(mesh, (8, 8), (8, 8))
    assert a.kind == "vertex"
    i1, i2 = mesh.local_knot_indices(a)
    assert list(i1) == [4, 5, 8, 9, 11]
    assert list(i2) == [3, 4, 8, 9, 10]
    g1, g2 = mesh.local_knot_vectors(a)
    assert list(g1) == [0, 1, 4, 5, 7]
    assert list(g2) == [0, 0, 4, 5, 6]


def test_anchor_kinds_follow_degree_parity(fixtures_dir):
    kinds = {
        "tmesh_a": "cell",
        "tmesh_b": "vedge",
        "tmesh_c": "hedge",
        "tmesh_d": "vertex",
    }
    for name, kind in kinds.items():
        mesh = _load(fixtures_dir, name)
        got = {a.kind for a in mesh.anchors()}
        assert got == {kind}


def test_local_knot_vectors_structurally_sound(fixtures_dir):
    for name in ("tmesh_a", "tmesh_b", "tmesh_c", "tmesh_d"):
        mesh = _load(fixtures_dir, name)
        p1, p2 = mesh.degrees
        for a in mesh.anchors():
            g1, g2 = mesh.local_knot_vectors(a)
            assert len(g1) == p1 + 2 and len(g2) == p2 + 2
            assert np.all(np.diff(g1) >= 0) and np.all(np.diff(g2) >= 0)
            assert g1[0] < g1[-1] and g2[0] < g2[-1]


# ------------------------------------------------------- junctions, AS


def test_t_junctions_even_even_case(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_a")
    got = {(tuple(v), d) for v, d in mesh.t_junctions()}
    assert got == {((8, 6), "left"), ((9, 6), "up"), ((9, 7), "down")}


def test_even_even_case_has_crossing_extensions(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_a")
    assert not mesh.is_analysis_suitable()


def test_extensions_left_fixture_violations(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_ext_left")
    junctions = {tuple(v): d for v, d in mesh.t_junctions()}
    assert junctions == {
        (4, 7): "left",
        (8, 7): "right",
        (9, 9): "left",
        (9, 10): "left",
        (10, 9): "up",
    }
    bad = mesh.analysis_violations()
    assert len(bad) == 3
    pairs = {(ev.junction, eh.junction) for ev, eh in bad}
    assert pairs == {((10, 9), (8, 7)), ((10, 9), (9, 9)), ((10, 9), (9, 10))}
    # the vertical extension spans, face and edge sides together
    ev = next(e for e in mesh.extensions() if e.junction == (10, 9))
    assert ev.orientation == "v"
    assert ev.full == ((10, 4), (10, 11))
    assert not mesh.is_analysis_suitable()


def test_extensions_right_fixture_is_suitable(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_ext_right")
    assert {tuple(v) for v, _ in mesh.t_junctions()} == {
        (4, 7), (8, 7), (9, 9), (9, 10),
    }
    assert all(e.orientation == "h" for e in mesh.extensions())
    assert mesh.is_analysis_suitable()
    assert mesh.analysis_violations() == []


def test_extension_lengths_for_cubic(fixtures_dir):
    # cubic: faces advance ceil((p+1)/2) = 2 crossings, edges ceil((p-1)/2) = 1
    mesh = _load(fixtures_dir, "tmesh_ext_left")
    ev = next(e for e in mesh.extensions() if e.junction == (10, 9))
    (fx1, fy1), (fx2, fy2) = ev.face
    (ex1, ey1), (ex2, ey2) = ev.edge
    assert fx1 == fx2 == ex1 == ex2 == 10
    assert (fy1, fy2) == (9, 11)  # two crossings upward
    assert (ey1, ey2) == (4, 9)  # one crossing downward


# ------------------------------------------------------- extraction oracle


def test_bezier_elements_partition_and_extraction(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_ext_right")
    p1, p2 = mesh.degrees
    els = mesh.bezier_elements()
    assert els, "no elements returned"

    # the nonzero-area elements tile the parametric rectangle
    area = sum(
        (b1 - a1) * (b2 - a2) for (a1, b1), (a2, b2) in (e.bounds for e in els)
    )
    G1, G2 = mesh.knot_vectors
    assert area == pytest.approx((G1[-1] - G1[0]) * (G2[-1] - G2[0]))

    anchors = mesh.anchors()
    for el in els:
        assert len(el.anchors) == (p1 + 1) * (p2 + 1)
        C, R = mesh.element_extraction(el.index)
        assert C.shape == ((p1 + 1) * (p2 + 1),) * 2
        assert np.allclose(C @ R, np.eye(C.shape[0]), atol=1e-9)
        # partition of unity: blending functions sum to one elementwise
        assert np.allclose(C.sum(axis=0), 1.0, atol=1e-10)


def test_extraction_matches_scipy_blending_functions(fixtures_dir):
    """Every blending function, evaluated through the extraction rows,
    equals the tensor B-spline built from its own local knot vectors."""
    from bezproj._accel import bernstein_matrix

    mesh = _load(fixtures_dir, "tmesh_ext_right")
    p1, p2 = mesh.degrees
    anchors = mesh.anchors()
    for el in mesh.bezier_elements():
        (a1, b1), (a2, b2) = el.bounds
        xs = a1 + (b1 - a1) * np.array([0.21, 0.57, 0.83])
        ys = a2 + (b2 - a2) * np.array([0.13, 0.49, 0.91])
        C, _ = mesh.element_extraction(el.index)
        D1 = bernstein_matrix(p1, 2 * (xs - a1) / (b1 - a1) - 1)
        D2 = bernstein_matrix(p2, 2 * (ys - a2) / (b2 - a2) - 1)
        for row, k in enumerate(el.anchors):
            g1, g2 = mesh.local_knot_vectors(anchors[k])
            for ix, x in enumerate(xs):
                for iy, y in enumerate(ys):
                    design = np.kron(D2[iy], D1[ix])
                    got = design @ C[row]
                    ref = _blend_eval(g1, g2, x, y)
                    assert got == pytest.approx(ref, abs=1e-10)


def test_tensor_mesh_recovers_tensor_extraction():
    kv1 = KnotVector([0, 0, 0, 1, 2, 3, 3, 3], 2)
    kv2 = KnotVector([0, 0, 0, 1, 2, 2, 2], 2)
    mesh = TMesh.tensor((2, 2), [kv1.knots, kv2.knots])
    sp = SplineSpace([kv1, kv2])

    assert mesh.t_junctions() == []
    assert mesh.is_analysis_suitable()
    anchors = mesh.anchors()
    assert len(anchors) == sp.n_funcs

    els = mesh.bezier_elements()
    assert len(els) == sp.n_elements
    for el in els:
        # map the Bezier element to the tensor element at the same spot
        mid = (
            0.5 * (el.bounds[0][0] + el.bounds[0][1]),
            0.5 * (el.bounds[1][0] + el.bounds[1][1]),
        )
        e = sp.element_containing(mid)
        C_ref = sp.extraction_operator(e).C
        C, R = mesh.element_extraction(el.index)
        # anchor order: same layout (first direction fastest) after sorting
        order = np.argsort(
            [anchors[k].center[::-1] for k in el.anchors], axis=0
        )[:, 0]
        assert np.allclose(C[order], C_ref, atol=1e-10)


def test_tensor_mesh_local_knots_match_slices():
    kv1 = KnotVector([0, 0, 0, 1, 2, 3, 3, 3], 2)
    kv2 = KnotVector([0, 0, 0, 2, 4, 4, 4], 2)
    mesh = TMesh.tensor((2, 2), [kv1.knots, kv2.knots])
    sp = SplineSpace([kv1, kv2])
    seen = set()
    for a in mesh.anchors():
        g1, g2 = mesh.local_knot_vectors(a)
        hits = [
            (i, j)
            for i in range(kv1.n)
            for j in range(kv2.n)
            if np.allclose(kv1.local_knots(i), g1)
            and np.allclose(kv2.local_knots(j), g2)
            and (i, j) not in seen
        ]
        assert hits, f"anchor {a} matches no tensor function"
        seen.add(hits[0])
    assert len(seen) == sp.n_funcs


# ------------------------------------------------------- nesting, I/O


def test_fixture_nested_in_tensor_mesh(fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_ext_right")
    full = TMesh.tensor(mesh.degrees, mesh.knot_vectors)
    assert mesh.is_nested(full)
    assert not full.is_nested(mesh)
    other = _load(fixtures_dir, "tmesh_b")
    with pytest.raises(ValueError):
        mesh.is_nested(other)


def test_tmesh_json_roundtrip(tmp_path, fixtures_dir):
    mesh = _load(fixtures_dir, "tmesh_a")
    d = tmesh_to_dict(mesh)
    path = tmp_path / "mesh.json"
    write_tmesh_json(path, mesh)
    back = read_tmesh_json(path)
    assert back.degrees == mesh.degrees
    assert back.vertices == mesh.vertices
    assert {(v, dd) for v, dd in back.t_junctions()} == {
        (v, dd) for v, dd in mesh.t_junctions()
    }
    assert json.loads(path.read_text())["degrees"] == list(d["degrees"])


def test_tmesh_validation():
    kv = [0, 0, 0, 1, 2, 2, 2]
    with pytest.raises(ValueError):
        TMesh((2, 2), [kv, kv], [(1, 1), (9, 1)], [])  # vertex out of range
    with pytest.raises(ValueError):
        TMesh(
            (2, 2), [kv, kv],
            [(1, 1), (2, 2)],
            [(1, 1, 2, 2)],  # diagonal edge
        )
    with pytest.raises(ValueError):
        TMesh((0, 2), [kv, kv], [(1, 1)], [])  # degree must be >= 1
