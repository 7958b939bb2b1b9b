"""Acceptance suite: one test per headline criterion, each printing a
single CRITERION N: PASS/FAIL line before asserting."""

import math
import random
import time
from fractions import Fraction

from surfbraid.cli import main
from surfbraid.geometry import (
    build_retraction,
    section_maps,
    triangulate,
    verify_sections,
)
from surfbraid.intlinalg import invariant_factors, smith, verify_smith
from surfbraid.kernel_action import abelianize, nf_combine, normalize, unit
from surfbraid.presentations import build_punctured, exponent_matrix, z_m_word
from surfbraid.section_solver import Ansatz, obstruction, solution_space_at
from surfbraid.words import Word, letter, parse


def report(num, failures):
    status = "FAIL" if failures else "PASS"
    print(f"CRITERION {num}: {status}")
    assert not failures, failures


def test_criterion_1_obstruction_moduli():
    """modulus(g, m) = m + 2g - 2 on the full small-parameter grid."""
    cases = [(g, m) for g in (1, 2, 3) for m in (2, 3, 4, 5, 6)] + [(4, 2)]
    failures = []
    for g, m in cases:
        start = time.monotonic()
        got = obstruction(g, m).modulus
        elapsed = time.monotonic() - start
        if got != m + 2 * g - 2:
            failures.append(f"({g},{m}): modulus {got} != {m + 2 * g - 2}")
        if elapsed >= 10:
            failures.append(f"({g},{m}): solve took {elapsed:.1f}s")
    report(1, failures)


def test_criterion_2_one_puncture_unobstructed(capsys):
    failures = []
    for g in (1, 2, 3):
        got = obstruction(g, 1).modulus
        if got != 1:
            failures.append(f"g={g}: modulus {got} != 1")
        for k in range(1, 51):
            code = main(["obstruct", "--g", str(g), "--m", "1", "--n", str(k)])
            out = capsys.readouterr().out.strip()
            if code != 0 or out != "admissible":
                failures.append(f"g={g} n={k}: cli said {out!r} (exit {code})")
    report(2, failures)


def test_criterion_3_abelianization_invariant_factors():
    """Z^(2g+m-1) x Z_2 for every punctured group on the grid."""
    failures = []
    for n in (1, 2, 3):
        for m in (1, 2, 3, 4):
            for g in (1, 2, 3):
                p = build_punctured(n, m, g)
                torsion, rank = invariant_factors(exponent_matrix(p), len(p.generators))
                if (torsion, rank) != ([2], 2 * g + m - 1):
                    failures.append(f"(n={n},m={m},g={g}): got ({torsion}, {rank})")
    report(3, failures)


def _surface_relation_rhs(n, m, g):
    """Independent reassembly of the mixed-group surface relation's right
    side: prod_{i=n-1..0} S_i z_1^-1 S_i^-1 with S_i = s_i^-1..s_1^-1
    z_1..z_m, the last puncture loop written out in the other generators."""
    zm = z_m_word(n, m, g).word.inverse()
    z1_inv = z_m_word(n, m, g).word if m == 1 else letter("z", 1, -1)
    rhs = Word(())
    for i in range(n - 1, -1, -1):
        sigma_i = Word(())
        for j in range(i, 0, -1):
            sigma_i = sigma_i * letter("s", j, -1)
        for j in range(1, m):
            sigma_i = sigma_i * letter("z", j)
        sigma_i = sigma_i * zm
        rhs = rhs * sigma_i * z1_inv * sigma_i.inverse()
    return rhs


def test_criterion_4_surface_relation_correction():
    failures = []
    for m in (1, 2, 3):
        for g in (1, 2):
            for n in range(1, 9):
                got = abelianize(_surface_relation_rhs(n, m, g), g, n, m)
                want = unit(g, m, "z", 1).scaled(-n)
                if got != want:
                    failures.append(f"(n={n},m={m},g={g}): {got.to_json()}")
    report(4, failures)


def _forced_zero_functionals(ansatz):
    """Index lists of unknowns the constraint rows force to vanish: puncture
    letters cannot touch handle coordinates, handle letters cannot mix, the
    two same-handle diagonal twists must agree, and a puncture swap only
    moves the two coordinates it exchanges."""
    g, m = ansatz.g, ansatz.m
    singles, pairs = [], []
    for i in range(1, m):
        t = ansatz.letters[i - 1]
        for s in range(1, g + 1):
            singles.append(ansatz.index(t, s - 1))
            singles.append(ansatz.index(t, g + s - 1))
        if i <= m - 2:
            for j in range(1, m):
                if j not in (i, i + 1):
                    singles.append(ansatz.index(t, 2 * g + j - 1))
    for r in range(1, g + 1):
        c = next(x for x in ansatz.letters if str(x) == f"c{r}")
        d = next(x for x in ansatz.letters if str(x) == f"d{r}")
        for s in range(1, g + 1):
            singles.append(ansatz.index(c, g + s - 1))
            singles.append(ansatz.index(d, s - 1))
        pairs.append((ansatz.index(c, r - 1), ansatz.index(d, g + r - 1)))
    return singles, pairs


def test_criterion_5_solution_space_laws():
    failures = []
    for g, m in ((2, 4), (2, 5), (3, 4)):
        n = m + 2 * g - 2
        particular, basis = solution_space_at(g, m, n)
        singles, pairs = _forced_zero_functionals(Ansatz(g, m))
        for tag, vec in [("particular", particular)] + [
            (f"basis[{i}]", v) for i, v in enumerate(basis)
        ]:
            for idx in singles:
                if vec[idx] != 0:
                    failures.append(f"(g={g},m={m}) {tag}: unknown {idx} = {vec[idx]}")
            for i, j in pairs:
                if vec[i] != vec[j]:
                    failures.append(f"(g={g},m={m}) {tag}: {i} != {j}")
    report(5, failures)


def _random_word(rng, g, n, m, length):
    pool = (
        [("a", g), ("b", g), ("s", n - 1)]
        + ([("z", m - 1), ("t", m - 1)] if m >= 2 else [])
        + [("c", g), ("d", g)]
    )
    w = Word(())
    for _ in range(length):
        fam, top = rng.choice(pool)
        w = w * letter(fam, rng.randint(1, top), rng.choice((1, -1)))
    return w


def test_criterion_6_normalization_homomorphic():
    rng = random.Random(60)
    n = 3
    failures = []
    for g in (1, 2):
        for m in (2, 3, 4):
            for _ in range(1000):
                u = _random_word(rng, g, n, m, rng.randint(0, 8))
                v = _random_word(rng, g, n, m, rng.randint(0, 8))
                lhs = normalize(u * v, g, n, m)
                rhs = nf_combine(normalize(u, g, n, m), normalize(v, g, n, m), g, n, m)
                if lhs != rhs:
                    failures.append(f"(g={g},m={m}): u={u} v={v}")
                    break
    report(6, failures)


def test_criterion_7_geometric_sections():
    failures = []
    for g in (1, 2):
        surf = triangulate(g, 8)
        ret = build_retraction(surf, surf.cycle)
        if g == 1:
            res = 8
            for j in range(res + 1):
                for i in range(res + 1):
                    cls = surf.class_of[j * (res + 1) + i]
                    diff = abs(float(ret.theta_turns(cls)) - (i % res) / res)
                    if min(diff, 1 - diff) > 1e-12:
                        failures.append(f"flat-torus oracle off at ({i},{j})")
        for n in range(1, 9):
            start = time.monotonic()
            rep = verify_sections(surf, surf.cycle, section_maps(ret, n), n)
            elapsed = time.monotonic() - start
            if not rep.passed:
                failures.append(f"(g={g},n={n}): verification failed")
            if rep.min_separation != 2 * math.pi / (n + 1):
                failures.append(f"(g={g},n={n}): separation {rep.min_separation}")
            if elapsed >= 30:
                failures.append(f"(g={g},n={n}): took {elapsed:.1f}s")
    report(7, failures)


def test_criterion_8_smith_contract():
    rng = random.Random(80)
    failures = []
    for trial in range(1000):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        if not verify_smith(a, smith(a)):
            failures.append(f"trial {trial}: {a}")
    report(8, failures)
