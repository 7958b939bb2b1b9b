"""Triangulated surfaces, the harmonic circle-valued retraction, and the
coincidence-free family of self-maps."""

import json
import math
from fractions import Fraction

import pytest

from surfbraid.geometry import (
    build_retraction,
    default_samples,
    export_section_data,
    meridian,
    section_maps,
    triangulate,
    verify_sections,
)


@pytest.mark.parametrize("g,res", [(1, 4), (1, 8), (2, 3), (2, 6), (3, 4)])
def test_surface_invariants(g, res):
    surf = triangulate(g, res)
    assert surf.euler_characteristic() == 2 - 2 * g
    surf.check_closed()
    assert len(surf.cycle) == res


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        triangulate(0, 8)
    with pytest.raises(ValueError):
        triangulate(1, 2)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_meridian_is_simple_edge_cycle_and_nonseparating(g):
    surf = triangulate(g, 6)
    cyc = meridian(surf)  # raises if not an edge cycle or if separating
    assert len(set(cyc.vertices)) == len(cyc.vertices)
    assert cyc.angles == [Fraction(j, len(cyc)) for j in range(len(cyc))]


def test_flat_torus_oracle():
    """On the square torus the exact harmonic lift is u(x, y) = x/R; the
    solver must reproduce it to full precision."""
    res = 8
    surf = triangulate(1, res)
    ret = build_retraction(surf, surf.cycle)

    def vid(i, j):
        return j * (res + 1) + i

    for j in range(res + 1):
        for i in range(res + 1):
            cls = surf.class_of[vid(i, j)]
            expected = Fraction(i % res, res)
            got = float(ret.theta_turns(cls))
            diff = abs(got - float(expected))
            assert min(diff, 1 - diff) <= 1e-12, (i, j)


@pytest.mark.parametrize("g", [1, 2])
def test_retraction_contract(g):
    surf = triangulate(g, 8)
    ret = build_retraction(surf, surf.cycle)
    # exact identity on the cycle itself
    k = len(surf.cycle)
    for i, v in enumerate(surf.cycle.vertices):
        assert ret.u[v] % 1 == Fraction(i, k)
    assert ret.max_triangle_spread() < 0.5
    assert ret.winding() == 1


def test_section_maps_offsets():
    surf = triangulate(1, 8)
    ret = build_retraction(surf, surf.cycle)
    maps = section_maps(ret, 4)
    assert [m.offset_turns for m in maps] == [Fraction(i, 5) for i in range(1, 5)]
    v = surf.cycle.vertices[0]
    assert maps[0].image_turns(v) == Fraction(1, 5)


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("n", [1, 3])
def test_verified_sections(g, n):
    surf = triangulate(g, 8)
    cyc = meridian(surf)
    ret = build_retraction(surf, cyc)
    maps = section_maps(ret, n)
    report = verify_sections(surf, cyc, maps, n)
    assert report.passed, report.summary()
    assert report.min_separation == 2 * math.pi / (n + 1)
    assert report.vertex_samples == surf.nvertices
    text = report.summary()
    assert "pass" in text and "FAIL" not in text


def test_export_schema(tmp_path):
    surf = triangulate(1, 8)
    ret = build_retraction(surf, surf.cycle)
    maps = section_maps(ret, 2)
    out = tmp_path / "sections.json"
    export_section_data(surf, maps, default_samples(surf, count=8), out)
    doc = json.loads(out.read_text())
    assert set(doc) == {"g", "n", "resolution", "cycle", "samples"}
    assert doc["n"] == 2 and len(doc["samples"]) == 8
    for sample in doc["samples"]:
        assert set(sample) == {"point", "theta", "images"}
        assert len(sample["images"]) == 2
        for img in sample["images"]:
            assert 0 <= img < 2 * math.pi
