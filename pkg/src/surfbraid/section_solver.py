"""Section ansatz and the integer constraint system it induces.

A candidate section of the quotient sequence sends each closed-group
letter x in {t_i, c_r, d_r} to x times an unknown kernel element.  Every
relator of the closed-surface presentation then forces an affine relation
among the unknown exponents; collecting one row per kernel coordinate
gives a parametric system whose right-hand side is n times the (SR-bar)
correction.  The set of n for which the system is solvable is the
obstruction subgroup, reported by its modulus.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

from .intlinalg import (
    ParametricSystem,
    feasible_parameter_set,
    solution_space,
    solve_witness,
)
from .kernel_action import ExponentVector, action_of, kernel_correction
from .presentations import _TO_COSET, build_closed
from .words import Word, letter, sym


class Ansatz:
    """Unknown layout: letters t_1..t_{m-1}, c_1..c_g, d_1..d_g in order;
    per letter the integer unknowns a_1..a_g, b_1..b_g, z_1..z_{m-1}
    followed by one mod-2 sigma unknown."""

    def __init__(self, g: int, m: int):
        if g < 1 or m < 1:
            raise ValueError("g and m must be >= 1")
        self.g = g
        self.m = m
        self.letters = (
            [sym("t", i) for i in range(1, m)]
            + [sym("c", r) for r in range(1, g + 1)]
            + [sym("d", r) for r in range(1, g + 1)]
        )
        self.coords = 2 * g + m - 1
        self.block = self.coords + 1
        self.total = len(self.letters) * self.block
        self._pos = {x: i for i, x in enumerate(self.letters)}

    def index(self, let, coord: int) -> int:
        return self._pos[let] * self.block + coord

    def sigma_index(self, let) -> int:
        return self._pos[let] * self.block + self.coords

    def coord_name(self, coord: int) -> str:
        g, m = self.g, self.m
        if coord < g:
            return f"a{coord + 1}"
        if coord < 2 * g:
            return f"b{coord - g + 1}"
        if coord < self.coords:
            return f"z{coord - 2 * g + 1}"
        return "sigma"

    def unknown_names(self):
        return [
            f"{let}.{self.coord_name(c)}" for let in self.letters for c in range(self.block)
        ]


@dataclass
class SymbolicKernel:
    """Kernel element with affine-form coordinates: each coordinate is a
    dict unknown-index -> coefficient (constants never arise here)."""

    free: list
    sigma: dict

    @classmethod
    def zero(cls, coords):
        return cls([{} for _ in range(coords)], {})


def _add_into(acc: dict, form: dict, scale: int = 1):
    for k, v in form.items():
        new = acc.get(k, 0) + scale * v
        if new:
            acc[k] = new
        else:
            acc.pop(k, None)


def _apply_matrix(matrix, skel: SymbolicKernel) -> SymbolicKernel:
    dim = len(skel.free)
    out = [{} for _ in range(dim)]
    for i in range(dim):
        row = matrix.mat[i]
        for j in range(dim):
            if row[j]:
                _add_into(out[i], skel.free[j], row[j])
    return SymbolicKernel(out, dict(skel.sigma))


def build_ansatz(g: int, m: int):
    """One symbolic kernel of fresh unknowns per closed-group letter."""
    ansatz = Ansatz(g, m)
    out = {}
    for let in ansatz.letters:
        free = [{ansatz.index(let, c): 1} for c in range(ansatz.coords)]
        out[let] = SymbolicKernel(free, {ansatz.sigma_index(let): 1})
    return out


def _symbolic_push(ansatz: Ansatz, images, w: Word) -> SymbolicKernel:
    """Accumulated kernel after expanding the product of letter images
    along w (in t/c/d letters), pushing everything rightward."""
    g, m = ansatz.g, ansatz.m
    skel = SymbolicKernel.zero(ansatz.coords)
    for gsym, sign in w:
        skel = _apply_matrix(action_of(gsym, -sign, g, m), skel)
        contrib = images[gsym]
        if sign == 1:
            for i in range(ansatz.coords):
                _add_into(skel.free[i], contrib.free[i])
            _add_into(skel.sigma, contrib.sigma)
        else:
            pushed = _apply_matrix(action_of(gsym, 1, g, m), contrib)
            for i in range(ansatz.coords):
                _add_into(skel.free[i], pushed.free[i], -1)
            _add_into(skel.sigma, pushed.sigma, -1)
    return skel


@functools.lru_cache(maxsize=None)
def _constraint_data(g: int, m: int):
    ansatz = Ansatz(g, m)
    images = build_ansatz(g, m)
    closed = build_closed(m, g)
    rows, b0, b1, mods, labels = [], [], [], [], []
    for fam, w in closed.relators:
        coset_word = Word(
            tuple((sym(_TO_COSET[s.family], s.index), sign) for s, sign in w)
        )
        skel = _symbolic_push(ansatz, images, coset_word)
        # the relator's coset lift equals a kernel element kappa; the image
        # of the relator is kappa + accumulated kernel, which must vanish.
        # kappa is linear in n, so -kappa at n=1 is the b1 column.
        minus_kappa = -kernel_correction(fam, coset_word, g, 1, m)
        for c in range(ansatz.coords):
            row = [0] * ansatz.total
            for idx, coeff in skel.free[c].items():
                row[idx] = coeff
            rows.append(row)
            b0.append(0)
            b1.append(minus_kappa.free[c])
            mods.append(0)
            labels.append((fam, ansatz.coord_name(c)))
        row = [0] * ansatz.total
        for idx, coeff in skel.sigma.items():
            row[idx] = coeff
        rows.append(row)
        b0.append(0)
        b1.append(0)
        mods.append(2)
        labels.append((fam, "sigma"))
    system = ParametricSystem(rows, b0, b1, mods)
    return ansatz, system, tuple(labels)


def extract_constraints(g: int, m: int) -> ParametricSystem:
    return _constraint_data(g, m)[1]


def constraint_labels(g: int, m: int):
    """(relator family, kernel coordinate) tag per row, aligned with
    extract_constraints."""
    return list(_constraint_data(g, m)[2])


@dataclass
class ObstructionReport:
    g: int
    m: int
    modulus: int
    rows: int
    cols: int
    witness_n: int
    witness: list
    diagnostics: dict

    def to_json(self):
        return json.dumps(
            {
                "g": self.g,
                "m": self.m,
                "modulus": self.modulus,
                "rows": self.rows,
                "cols": self.cols,
                "witness_n": self.witness_n,
                "witness": self.witness,
                "diagnostics": self.diagnostics,
            },
            indent=2,
        )


def _diagnostics(ansatz: Ansatz, witness):
    g, m = ansatz.g, ansatz.m

    def mvals(i, j):
        # z_j exponent of the t_i image
        return witness[ansatz.index(sym("t", i), 2 * g + j - 1)]

    diag = {"k": None, "M": None, "N": None, "mu": None}
    if witness is None:
        return diag
    if m >= 2:
        diag["N"] = witness[ansatz.sigma_index(sym("t", 1))] % 2
    if m >= 3:
        diag["k"] = -(mvals(1, 1) + mvals(1, 2))
        diag["M"] = mvals(m - 1, 1)
        diag["mu"] = sum(mvals(i, i + 1) for i in range(1, m - 1))
    return diag


def obstruction(g: int, m: int) -> ObstructionReport:
    ansatz, system, _ = _constraint_data(g, m)
    answer = feasible_parameter_set(system)
    if answer.kind == "all":
        modulus = 1
    elif answer.kind == "modulus" and answer.offset == 0:
        modulus = answer.modulus
    else:
        raise ValueError(f"unexpected obstruction set {answer!r}")
    witness_n = max(modulus, 1)
    witness = solve_witness(system, witness_n)
    nrows, ncols = system.shape
    return ObstructionReport(
        g, m, modulus, nrows, ncols, witness_n, witness, _diagnostics(ansatz, witness)
    )


def verify_ansatz(g: int, m: int, n: int, assignment):
    """Indices of violated constraint rows; empty means the assignment is
    a valid abelianized section at this n."""
    ansatz, system, _ = _constraint_data(g, m)
    if len(assignment) != ansatz.total:
        raise ValueError(
            f"assignment has {len(assignment)} entries, expected {ansatz.total}"
        )
    res = system.residual(assignment, n)
    return [i for i, v in enumerate(res) if v != 0]


def _image_word(ansatz: Ansatz, let, assignment) -> Word:
    g, m = ansatz.g, ansatz.m
    w = Word(((let, 1),))
    for c in range(ansatz.coords):
        e = assignment[ansatz.index(let, c)]
        if e:
            name = ansatz.coord_name(c)
            w = w * letter(name[0], int(name[1:])) ** e
    if assignment[ansatz.sigma_index(let)] % 2:
        w = w * letter("s", 1)
    return w


def reduced_form(g: int, m: int, n: int, assignment):
    """Pretty images of every letter plus diagnostics for coordinates that
    fall outside the expected reduced pattern (t_i carrying only z_i,
    z_{i+1}; c_r only a_r, z_1; d_r only b_r, z_1)."""
    violated = verify_ansatz(g, m, n, assignment)
    if violated:
        raise ValueError(f"assignment violates rows {violated}")
    ansatz = Ansatz(g, m)
    images = {}
    flags = []
    for let in ansatz.letters:
        images[str(let)] = str(_image_word(ansatz, let, assignment))
        for c in range(ansatz.coords):
            val = assignment[ansatz.index(let, c)]
            if val == 0:
                continue
            name = ansatz.coord_name(c)
            ok = False
            if let.family == "t" and name.startswith("z"):
                ok = int(name[1:]) in (let.index, let.index + 1) or let.index == m - 1
            elif let.family == "c":
                ok = name == f"a{let.index}" or name == "z1"
            elif let.family == "d":
                ok = name == f"b{let.index}" or name == "z1"
            if not ok:
                flags.append(f"{let}.{name}={val} outside the reduced pattern")
    return images, flags


def solution_space_at(g: int, m: int, n: int):
    """Particular solution and lattice basis of the constraint system."""
    return solution_space(extract_constraints(g, m), n)
