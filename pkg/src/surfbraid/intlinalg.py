"""Exact integer linear algebra: Smith normal form and parametric systems.

Matrices are plain lists of lists of Python ints; everything is exact.
The parametric solver handles systems A x = b0 + n b1 where each row is
an equality over Z (modulus 0) or a congruence mod 2 (modulus 2), and
reports for which integers n the system is solvable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _matmul(x, y):
    cols = len(y[0]) if y else 0
    return [
        [sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(cols)]
        for i in range(len(x))
    ]


def _det(x):
    """Exact determinant by fraction-free elimination."""
    k = len(x)
    m = [[Fraction(v) for v in row] for row in x]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, k):
            f = m[r][col] * inv
            if f:
                for c in range(col, k):
                    m[r][c] -= f * m[col][c]
    return int(det)


def _smith_engine(a, want_u=False, want_v=False, extra=None):
    """Diagonalize a copy of `a` by unimodular row and column moves.

    Returns (d, u, v, ex) with u * a * v = d when the witnesses are
    requested.  `extra` is an optional rows x k matrix that receives the
    same row operations as `a`; callers that only need transformed
    right-hand sides pass it instead of paying for a full u.
    """
    d = [list(row) for row in a]
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = _identity(rows) if want_u else None
    v = _identity(cols) if want_v else None
    ex = [list(row) for row in extra] if extra is not None else None

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]
        if ex is not None:
            ex[i], ex[j] = ex[j], ex[i]

    def row_add(i, j, q):
        # row i += q * row j
        di, dj = d[i], d[j]
        for c in range(cols):
            if dj[c]:
                di[c] += q * dj[c]
        if u is not None:
            ui, uj = u[i], u[j]
            for c in range(rows):
                if uj[c]:
                    ui[c] += q * uj[c]
        if ex is not None:
            ei, ej = ex[i], ex[j]
            for c in range(len(ei)):
                ei[c] += q * ej[c]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]
        if ex is not None:
            ex[i] = [-x for x in ex[i]]

    def col_swap(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        if v is not None:
            for r in range(cols):
                v[r][i], v[r][j] = v[r][j], v[r][i]

    def col_add(i, j, q):
        # col i += q * col j
        for r in range(rows):
            if d[r][j]:
                d[r][i] += q * d[r][j]
        if v is not None:
            for r in range(cols):
                if v[r][j]:
                    v[r][i] += q * v[r][j]

    n = min(rows, cols)

    def diagonalize():
        t = 0
        while t < n:
            piv = None
            best = None
            for i in range(t, rows):
                row = d[i]
                for j in range(t, cols):
                    x = row[j]
                    if x and (best is None or abs(x) < best):
                        best = abs(x)
                        piv = (i, j)
                if best == 1:
                    break
            if piv is None:
                return t
            if piv[0] != t:
                row_swap(t, piv[0])
            if piv[1] != t:
                col_swap(t, piv[1])
            while True:
                dirty = False
                for i in range(t + 1, rows):
                    if d[i][t]:
                        q = d[i][t] // d[t][t]
                        row_add(i, t, -q)
                        if d[i][t]:
                            row_swap(t, i)
                            dirty = True
                for j in range(t + 1, cols):
                    if d[t][j]:
                        q = d[t][j] // d[t][t]
                        col_add(j, t, -q)
                        if d[t][j]:
                            col_swap(t, j)
                            dirty = True
                if not dirty:
                    break
            if d[t][t] < 0:
                row_neg(t)
            t += 1
        return t

    # repeat until the divisibility chain holds; each fixing pass strictly
    # shrinks the offending pivot, so this terminates
    while True:
        rank = diagonalize()
        bad = None
        for t in range(rank - 1):
            if d[t + 1][t + 1] % d[t][t] != 0:
                bad = t
                break
        if bad is None:
            break
        col_add(bad, bad + 1, 1)
    return d, u, v, ex


@dataclass
class SmithDecomposition:
    u: list
    d: list
    v: list

    @property
    def diagonal(self):
        k = min(len(self.d), len(self.d[0]) if self.d else 0)
        return [self.d[i][i] for i in range(k)]


def smith(a) -> SmithDecomposition:
    """Smith normal form with unimodular witnesses: u * a * v = d."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0 or cols == 0:
        return SmithDecomposition(_identity(rows), [list(r) for r in a], _identity(cols))
    d, u, v, _ = _smith_engine(a, want_u=True, want_v=True)
    return SmithDecomposition(u, d, v)


def verify_smith(a, dec: SmithDecomposition) -> bool:
    if dec.u and _det(dec.u) not in (1, -1):
        return False
    if dec.v and _det(dec.v) not in (1, -1):
        return False
    cols = len(a[0]) if a else 0
    prod = _matmul(_matmul(dec.u, a), dec.v) if a and cols else [list(r) for r in a]
    if prod != dec.d:
        return False
    diag = dec.diagonal
    for i in range(len(diag) - 1):
        if diag[i] == 0 and diag[i + 1] != 0:
            return False
        if diag[i] and diag[i + 1] % diag[i] != 0:
            return False
    return all(x >= 0 for x in diag)


def invariant_factors(rel_rows, ambient_rank):
    """Structure of Z^ambient_rank modulo the row span: (torsion, free rank).

    Torsion keeps only the invariant factors > 1.
    """
    if not rel_rows or ambient_rank == 0:
        return [], ambient_rank
    padded = [list(row) + [0] * (ambient_rank - len(row)) for row in rel_rows]
    d, _, _, _ = _smith_engine(padded)
    k = min(len(padded), ambient_rank)
    nonzero = [d[i][i] for i in range(k) if d[i][i] != 0]
    torsion = [x for x in nonzero if x > 1]
    return torsion, ambient_rank - len(nonzero)


@dataclass
class ParametricSystem:
    """Rows of A x = b0 + n b1; row_modulus[i] is 0 (over Z) or 2 (mod 2)."""

    a: list
    b0: list
    b1: list
    row_modulus: list

    def __post_init__(self):
        rows = len(self.a)
        if not (len(self.b0) == len(self.b1) == len(self.row_modulus) == rows):
            raise ValueError("row count mismatch")
        for m in self.row_modulus:
            if m not in (0, 2):
                raise ValueError(f"row modulus must be 0 or 2, got {m}")
        if rows:
            w = len(self.a[0])
            if any(len(r) != w for r in self.a):
                raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (len(self.a), len(self.a[0]) if self.a else 0)

    def residual(self, x, n):
        """Per-row defect of A x - (b0 + n b1), reduced on mod-2 rows."""
        out = []
        for i, row in enumerate(self.a):
            val = sum(c * xi for c, xi in zip(row, x)) - self.b0[i] - n * self.b1[i]
            out.append(val % 2 if self.row_modulus[i] == 2 else val)
        return out


@dataclass
class ParameterAnswer:
    """The set of parameters n for which a parametric system is solvable.

    kind 'empty': no n.  kind 'all': every n.  kind 'modulus': exactly the
    n with n % modulus == offset (offset 0 gives the subgroup case).
    kind 'point': the single value stored in offset.
    """

    kind: str
    modulus: int = 0
    offset: int = 0

    def contains(self, n: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "all":
            return True
        if self.kind == "point":
            return n == self.offset
        return n % self.modulus == self.offset

    def smallest_positive(self):
        if self.kind == "empty":
            return None
        if self.kind == "all":
            return 1
        if self.kind == "point":
            return self.offset if self.offset >= 1 else None
        return self.offset if self.offset >= 1 else self.modulus


def _augmented(system: ParametricSystem):
    """Equality form: mod-2 rows gain a slack unknown with coefficient 2."""
    rows, cols = system.shape
    a = [list(row) for row in system.a]
    for i in range(rows):
        if system.row_modulus[i] == 2:
            for r in range(rows):
                a[r].append(2 if r == i else 0)
    return a, cols


def _row_condition(di, c0, c1):
    """Solvability of di * y = c0 + n * c1 in y, as a set of n.

    Returns ('all',), ('mod', m, r), ('point', n0) or None (empty).
    """
    if di == 0:
        if c1 == 0:
            return ("all",) if c0 == 0 else None
        if (-c0) % c1 != 0:
            return None
        return ("point", -c0 // c1)
    if c1 % di == 0:
        return ("all",) if c0 % di == 0 else None
    g = math.gcd(di, c1 % di)
    if c0 % g != 0:
        return None
    m = di // g
    r = (-(c0 // g) * pow((c1 % di) // g, -1, m)) % m
    return ("mod", m, r)


def _intersect(acc, cond):
    """Fold a row condition into the running answer; None means empty."""
    if acc is None or cond is None:
        return None
    if cond[0] == "all":
        return acc
    if acc[0] == "all":
        return cond
    if acc[0] == "point":
        n0 = acc[1]
        if cond[0] == "point":
            return acc if cond[1] == n0 else None
        return acc if n0 % cond[1] == cond[2] else None
    if cond[0] == "point":
        return _intersect(cond, acc)
    m1, r1 = acc[1], acc[2]
    m2, r2 = cond[1], cond[2]
    g = math.gcd(m1, m2)
    if (r1 - r2) % g != 0:
        return None
    l = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return ("mod", l, (r1 + m1 * t) % l)


def _diagonal_conditions(system: ParametricSystem):
    a, _ = _augmented(system)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [], None
    extra = [[system.b0[i], system.b1[i]] for i in range(rows)]
    if cols == 0:
        d = [[] for _ in range(rows)]
        return [(0, extra[i][0], extra[i][1]) for i in range(rows)], None
    d, _, v, ex = _smith_engine(a, want_v=True, extra=extra)
    conds = []
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        conds.append((di, ex[i][0], ex[i][1]))
    return conds, (d, v, ex, cols)


def feasible_parameter_set(system: ParametricSystem) -> ParameterAnswer:
    """For which n does A x = b0 + n b1 admit an integer solution?"""
    conds, _ = _diagonal_conditions(system)
    acc = ("all",)
    for di, c0, c1 in conds:
        acc = _intersect(acc, _row_condition(di, c0, c1))
        if acc is None:
            return ParameterAnswer("empty")
    if acc[0] == "all":
        return ParameterAnswer("all")
    if acc[0] == "point":
        return ParameterAnswer("point", 0, acc[1])
    return ParameterAnswer("modulus", acc[1], acc[2])


def _solve_augmented(system: ParametricSystem, n: int):
    """Solution of the slack-augmented equality system at fixed n, or None."""
    a, ncols = _augmented(system)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * ncols, [], ncols, cols
    b = [system.b0[i] + n * system.b1[i] for i in range(rows)]
    if cols == 0:
        return ([], [], ncols, 0) if all(x == 0 for x in b) else None
    extra = [[bi] for bi in b]
    d, _, v, ex = _smith_engine(a, want_v=True, extra=extra)
    y = [0] * cols
    for i in range(min(rows, cols)):
        di = d[i][i]
        ci = ex[i][0]
        if di == 0:
            if ci != 0:
                return None
        else:
            if ci % di != 0:
                return None
            y[i] = ci // di
    for i in range(cols, rows):
        if ex[i][0] != 0:
            return None
    x = [sum(v[r][c] * y[c] for c in range(cols)) for r in range(cols)]
    free = [c for c in range(min(rows, cols), cols)] + [
        c for c in range(min(rows, cols)) if d[c][c] == 0
    ]
    basis = [[v[r][c] for r in range(cols)] for c in sorted(set(free))]
    return x, basis, ncols, cols


def solve_witness(system: ParametricSystem, n: int):
    """An unknown vector satisfying every row at this n, or None."""
    sol = _solve_augmented(system, n)
    if sol is None:
        return None
    x, _, ncols, _ = sol
    return x[:ncols]


def solution_space(system: ParametricSystem, n: int):
    """All solutions at this n: (particular, lattice basis), over the
    declared unknowns (slack coordinates are projected away)."""
    sol = _solve_augmented(system, n)
    if sol is None:
        raise ValueError(f"system is infeasible at n={n}")
    x, basis, ncols, _ = sol
    pruned = []
    for vec in basis:
        head = vec[:ncols]
        if any(head):
            pruned.append(head)
    return x[:ncols], pruned
