"""Section ansatz constraint extraction and the obstruction solver."""

import json

import pytest

from surfbraid.section_solver import (
    Ansatz,
    constraint_labels,
    extract_constraints,
    obstruction,
    reduced_form,
    solution_space_at,
    verify_ansatz,
)
from surfbraid.words import sym


def test_ansatz_layout():
    ans = Ansatz(2, 3)
    assert [str(x) for x in ans.letters] == ["t1", "t2", "c1", "c2", "d1", "d2"]
    assert ans.coords == 2 * 2 + 3 - 1
    assert ans.total == 6 * (ans.coords + 1)
    names = ans.unknown_names()
    assert names[0] == "t1.a1"
    assert names[ans.sigma_index(sym("t", 1))] == "t1.sigma"
    assert names[ans.index(sym("c", 2), 2 * 2)] == "c2.z1"
    with pytest.raises(ValueError):
        Ansatz(0, 1)


def test_constraint_dimensions_align():
    system = extract_constraints(2, 3)
    labels = constraint_labels(2, 3)
    rows, cols = system.shape
    assert rows == len(labels)
    assert cols == Ansatz(2, 3).total
    # one sigma row (mod 2) per relator
    assert sum(1 for m in system.row_modulus if m == 2) == sum(
        1 for lab in labels if lab[1] == "sigma"
    )


def test_obstruction_basic_values():
    assert obstruction(1, 1).modulus == 1
    assert obstruction(1, 2).modulus == 2
    assert obstruction(1, 3).modulus == 3
    assert obstruction(2, 3).modulus == 5
    assert obstruction(3, 3).modulus == 7
    assert obstruction(2, 4).modulus == 6


def test_two_puncture_higher_genus_decouples():
    # with a single puncture loop coordinate the per-handle twist exponents
    # are not forced equal, so the feasible set is 2Z regardless of genus
    assert obstruction(2, 2).modulus == 2
    assert obstruction(3, 2).modulus == 2


def test_witness_satisfies_all_rows():
    for g, m in [(1, 2), (1, 3), (2, 3), (2, 4)]:
        rep = obstruction(g, m)
        assert rep.witness is not None
        assert verify_ansatz(g, m, rep.witness_n, rep.witness) == []


def test_zero_assignment_fails_only_surface_rows_at_positive_n():
    g, m = 2, 2
    ans = Ansatz(g, m)
    zero = [0] * ans.total
    violated = verify_ansatz(g, m, 1, zero)
    labels = constraint_labels(g, m)
    assert violated
    assert {labels[i][0] for i in violated} == {"SR"}
    # at n = 0 the zero assignment is a genuine solution
    assert verify_ansatz(g, m, 0, zero) == []


def test_verify_rejects_bad_length():
    with pytest.raises(ValueError):
        verify_ansatz(1, 2, 1, [0, 0])


def test_reduced_form_pattern():
    rep = obstruction(2, 4)
    images, flags = reduced_form(2, 4, rep.witness_n, rep.witness)
    assert flags == []
    assert set(images) == {"t1", "t2", "t3", "c1", "c2", "d1", "d2"}
    for let, word in images.items():
        assert word.startswith(let)
    with pytest.raises(ValueError):
        reduced_form(2, 4, rep.witness_n + 1, rep.witness)


def test_diagnostics_at_default_witness():
    rep = obstruction(2, 4)
    # twist exponent 1 at the smallest admissible n, flat tau images
    assert rep.diagnostics["k"] == 1
    assert rep.diagnostics["M"] == 0
    assert rep.diagnostics["mu"] + rep.diagnostics["k"] * (rep.m - 2) >= 0
    rep = obstruction(1, 1)
    assert rep.diagnostics == {"k": None, "M": None, "N": None, "mu": None}


def test_solution_space_members_solve():
    g, m = 2, 4
    n = obstruction(g, m).modulus
    system = extract_constraints(g, m)
    part, basis = solution_space_at(g, m, n)
    assert all(v == 0 for v in system.residual(part, n))
    for vec in basis:
        shifted = [p + q for p, q in zip(part, vec)]
        assert all(v == 0 for v in system.residual(shifted, n))
    with pytest.raises(ValueError):
        solution_space_at(g, m, n + 1)


def test_report_json_schema():
    doc = json.loads(obstruction(1, 3).to_json())
    assert set(doc) == {
        "g", "m", "modulus", "rows", "cols", "witness_n", "witness", "diagnostics",
    }
    assert set(doc["diagnostics"]) == {"k", "M", "N", "mu"}
    assert doc["modulus"] == 3 and doc["witness_n"] == 3
