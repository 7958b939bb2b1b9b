"""Presentation builders: family counts, pinned relators, serialization."""

from math import comb

import pytest

from surfbraid.intlinalg import invariant_factors
from surfbraid.presentations import (
    build_closed,
    build_kernel_abelianization,
    build_mixed,
    build_mixed_quotient,
    build_punctured,
    exponent_matrix,
    parse_presentation,
    serialize,
    z_m_word,
)
from surfbraid.words import parse, sym


def family_counts(p):
    out = {}
    for fam, _ in p.relators:
        out[fam] = out.get(fam, 0) + 1
    return out


def sigma_tail_counts(strands, g):
    """Independent relator census for the strand/handle families on a
    given number of strands: braid relations plus handle interactions."""
    k = strands - 1  # number of sigma generators
    return {
        "BR": max(k - 1, 0) + comb(max(k - 1, 0), 2),
        "R1": 2 * g * max(k - 1, 0),
        "R2": 2 * g if k >= 1 else 0,
        "R3": 2 * g * (g - 1) if k >= 1 else 0,
        "R4": g if k >= 1 else 0,
    }


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_closed_counts(m, g):
    expected = {f: c for f, c in sigma_tail_counts(m, g).items() if c}
    expected["SR"] = 1
    assert family_counts(build_closed(m, g)) == expected


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_punctured_counts(n, m, g):
    expected = {f: c for f, c in sigma_tail_counts(n, g).items() if c}
    if n >= 2:
        extra = {
            "R5": (m - 1) * (n - 2),
            "R6": 2 * g * (m - 1),
            "R7": comb(m - 1, 2),
            "R8": m - 1,
        }
        expected.update({f: c for f, c in extra.items() if c})
    assert family_counts(build_punctured(n, m, g)) == expected


def test_closed_generators():
    p = build_closed(3, 2)
    assert p.generators == [
        sym("s", 1),
        sym("s", 2),
        sym("a", 1),
        sym("a", 2),
        sym("b", 1),
        sym("b", 2),
    ]


def test_closed_torus_two_strands_surface_relator():
    # two strands on the torus: the surface relation reads [a1,b1^-1] = s1^2
    p = build_closed(2, 1)
    rels = {fam: w for fam, w in p.relators}
    assert rels["SR"] == parse("a1 b1^-1 a1^-1 b1 s1^-1 s1^-1")


def test_punctured_degenerate_single_strand():
    p = build_punctured(1, 2, 1)
    assert p.generators == [sym("a", 1), sym("b", 1), sym("z", 1)]
    assert p.relators == []


def test_punctured_small_pinned_relators():
    p = build_punctured(2, 2, 1)
    counts = family_counts(p)
    assert "R7" not in counts  # needs two distinct puncture loops
    assert counts["R8"] == 1
    p = build_punctured(3, 2, 1)
    r5 = [w for fam, w in p.relators if fam == "R5"]
    assert parse("z1 s2 z1^-1 s2^-1") in r5


def test_z_m_word_small():
    zm = z_m_word(2, 2, 1)
    assert zm.is_zm_inverse
    assert zm.word == parse("a1 b1^-1 a1^-1 b1 s1^-1 s1^-1 z1")


def test_mixed_contains_punctured_and_lifted_families():
    n, m, g = 2, 2, 1
    mixed = build_mixed(n, m, g)
    counts = family_counts(mixed)
    for fam, c in family_counts(build_punctured(n, m, g)).items():
        assert counts[fam] == c
    closed = family_counts(build_closed(m, g))
    for fam, c in closed.items():
        if fam == "SR":
            continue
        assert counts[f"{fam}-bar"] == c
    assert counts["SR-bar"] == 1
    # lifted relators use the coset alphabet t/c/d
    lifted = [w for fam, w in mixed.relators if fam == "R4-bar"]
    assert lifted and all(
        {s.family for s, _ in w} <= {"t", "c", "d"} for w in lifted
    )


def test_mixed_relators_stay_over_alphabet():
    # the z_m letter never appears: it is expanded on construction
    for n, m, g in [(1, 1, 1), (2, 2, 1), (3, 2, 2), (2, 3, 1)]:
        p = build_mixed(n, m, g)
        gens = set(p.generators)
        for _, w in p.relators:
            assert {s for s, _ in w} <= gens
        assert sym("z", m) not in gens


def test_kernel_abelianization_structure():
    p = build_kernel_abelianization(3, 2, 1)
    gens = set(p.generators)
    assert {sym("s", 1), sym("a", 1), sym("b", 1), sym("z", 1), sym("z", 2)} == gens
    counts = family_counts(p)
    k = len(p.generators)
    assert counts["commute"] == comb(k, 2)
    assert counts["sigma-squared"] == 1
    assert counts["z-product"] == 1
    rels = {fam: w for fam, w in p.relators if fam != "commute"}
    assert rels["sigma-squared"] == parse("s1 s1")
    assert rels["z-product"] == parse("z2 z1")


def test_mixed_quotient_conjugation_table():
    # tau_1 moves the first puncture loop to the second
    p = build_mixed_quotient(2, 2, 1)
    target = parse("t1 z1 t1^-1 z2^-1")
    assert any(w == target for fam, w in p.relators if fam.startswith("III"))


def test_abelianized_punctured_invariant_factors():
    p = build_punctured(3, 2, 1)
    rows = exponent_matrix(p)
    torsion, rank = invariant_factors(rows, len(p.generators))
    # rank 2g + (m-1) = 3 plus a single 2-torsion class from the strand swap
    assert (torsion, rank) == ([2], 3)


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_serialize_roundtrip(fmt):
    for build, args in [
        (build_closed, (3, 2)),
        (build_punctured, (3, 2, 1)),
        (build_mixed, (2, 2, 1)),
        (build_mixed_quotient, (2, 2, 1)),
        (build_kernel_abelianization, (2, 2, 1)),
    ]:
        p = build(*args)
        assert parse_presentation(serialize(p, fmt)) == p


def test_relators_reduced_and_nonempty():
    for p in (build_closed(4, 2), build_mixed(3, 3, 2)):
        for fam, w in p.relators:
            assert len(w) > 0, fam


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        build_closed(0, 1)
    with pytest.raises(ValueError):
        build_closed(2, 0)
    with pytest.raises(ValueError):
        build_punctured(0, 1, 1)
