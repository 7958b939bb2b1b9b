"""Arithmetic in the abelianized kernel K(g,m) = Z^(2g+m-1) x Z_2.

Basis order is fixed as (a_1..a_g, b_1..b_g, z_1..z_{m-1}) for the free
part plus a sigma bit.  z_m is never a coordinate: it folds to
-(e_{z_1} + ... + e_{z_{m-1}}) on construction.  Coset letters t_i, c_r,
d_r act on K(g,m) by conjugation; `normalize` pushes kernel letters to
the right of the coset letters using that action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Word, sym


@dataclass(frozen=True)
class ExponentVector:
    g: int
    m: int
    a: tuple
    b: tuple
    z: tuple
    sigma: int

    def __post_init__(self):
        if len(self.a) != self.g or len(self.b) != self.g or len(self.z) != self.m - 1:
            raise ValueError("coordinate length mismatch")
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be a bit")

    @classmethod
    def zero(cls, g, m):
        return cls(g, m, (0,) * g, (0,) * g, (0,) * (m - 1), 0)

    @classmethod
    def from_free(cls, g, m, free, sigma=0):
        if len(free) != 2 * g + m - 1:
            raise ValueError("free part length mismatch")
        return cls(
            g, m,
            tuple(free[:g]),
            tuple(free[g : 2 * g]),
            tuple(free[2 * g :]),
            sigma % 2,
        )

    @property
    def free(self):
        return list(self.a) + list(self.b) + list(self.z)

    def _like(self, other):
        if (self.g, self.m) != (other.g, other.m):
            raise ValueError("mixing kernels of different (g, m)")

    def __add__(self, other):
        self._like(other)
        return ExponentVector(
            self.g, self.m,
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
            tuple(x + y for x, y in zip(self.z, other.z)),
            (self.sigma + other.sigma) % 2,
        )

    def __neg__(self):
        return ExponentVector(
            self.g, self.m,
            tuple(-x for x in self.a),
            tuple(-x for x in self.b),
            tuple(-x for x in self.z),
            self.sigma,
        )

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k: int):
        return ExponentVector(
            self.g, self.m,
            tuple(k * x for x in self.a),
            tuple(k * x for x in self.b),
            tuple(k * x for x in self.z),
            (k * self.sigma) % 2,
        )

    def is_zero(self):
        return self.sigma == 0 and not any(self.free)

    def to_json(self):
        return {"a": list(self.a), "b": list(self.b), "z": list(self.z), "sigma": self.sigma}


def unit(g, m, family, index):
    """Basis vector for a_r, b_r, z_j (with the z_m fold) or the sigma bit."""
    free = [0] * (2 * g + m - 1)
    if family == "a":
        if not 1 <= index <= g:
            raise ValueError(f"a index {index} out of range for g={g}")
        free[index - 1] = 1
        return ExponentVector.from_free(g, m, free)
    if family == "b":
        if not 1 <= index <= g:
            raise ValueError(f"b index {index} out of range for g={g}")
        free[g + index - 1] = 1
        return ExponentVector.from_free(g, m, free)
    if family == "z":
        if not 1 <= index <= m:
            raise ValueError(f"z index {index} out of range for m={m}")
        if index == m:
            for j in range(m - 1):
                free[2 * g + j] = -1
        else:
            free[2 * g + index - 1] = 1
        return ExponentVector.from_free(g, m, free)
    if family == "s":
        return ExponentVector.from_free(g, m, free, sigma=1)
    raise ValueError(f"no kernel basis vector for family {family!r}")


def abelianize(w: Word, g: int, n: int, m: int) -> ExponentVector:
    """Image of a punctured-group word in K(g,m)."""
    out = ExponentVector.zero(g, m)
    for gsym, sign in w:
        fam, idx = gsym.family, gsym.index
        if fam == "s":
            if not 1 <= idx <= max(n - 1, 0):
                raise ValueError(f"sigma index {idx} out of range for n={n}")
        elif fam not in ("a", "b", "z"):
            raise ValueError(f"letter {gsym} is not in the kernel alphabet")
        vec = unit(g, m, fam, idx)
        out = out + (vec if sign == 1 else -vec)
    return out


def _mat_identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _mat_inverse(mat):
    """Exact inverse of an integer matrix with determinant +-1."""
    k = len(mat)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(k)]
           for i, row in enumerate(mat)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = [[x for x in row[k:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not invertible over the integers")
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class ActionMatrix:
    """Action on the free part of K(g,m); columns are images of basis
    vectors.  The sigma bit is fixed by every action."""

    g: int
    m: int
    mat: tuple  # tuple of row tuples

    @property
    def dim(self):
        return 2 * self.g + self.m - 1

    def apply(self, vec: ExponentVector) -> ExponentVector:
        if (vec.g, vec.m) != (self.g, self.m):
            raise ValueError("dimension mismatch")
        free = vec.free
        out = [sum(self.mat[i][j] * free[j] for j in range(self.dim)) for i in range(self.dim)]
        return ExponentVector.from_free(self.g, self.m, out, vec.sigma)

    def inverse(self) -> "ActionMatrix":
        inv = _mat_inverse([list(r) for r in self.mat])
        return ActionMatrix(self.g, self.m, tuple(tuple(r) for r in inv))

    def is_unimodular(self) -> bool:
        from .intlinalg import _det

        return self.dim == 0 or _det([list(r) for r in self.mat]) in (1, -1)

    def columns(self):
        return [[self.mat[i][j] for i in range(self.dim)] for j in range(self.dim)]


def action_of(letter, sign: int, g: int, m: int) -> ActionMatrix:
    """Conjugation action k -> letter^sign k letter^-sign on K(g,m)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    fam, idx = letter.family, letter.index
    dim = 2 * g + m - 1
    mat = _mat_identity(dim)
    if fam == "c":
        if not 1 <= idx <= g:
            raise ValueError(f"c index {idx} out of range for g={g}")
        # c_r b_r c_r^-1 = b_r z_1^-1
        if m >= 2:
            mat[2 * g][g + idx - 1] = -sign
    elif fam == "d":
        if not 1 <= idx <= g:
            raise ValueError(f"d index {idx} out of range for g={g}")
        # d_r a_r d_r^-1 = a_r z_1
        if m >= 2:
            mat[2 * g][idx - 1] = sign
    elif fam == "t":
        if not 1 <= idx <= m - 1:
            raise ValueError(f"t index {idx} out of range for m={m}")
        if idx <= m - 2:
            # swap z_idx and z_{idx+1}; self-inverse
            i, j = 2 * g + idx - 1, 2 * g + idx
            mat[i][i] = mat[j][j] = 0
            mat[i][j] = mat[j][i] = 1
        else:
            # t_{m-1}: z_{m-1} -> z_m, folded; self-inverse
            col = 2 * g + m - 2
            for i in range(2 * g, dim):
                mat[i][col] = -1
    else:
        raise ValueError(f"letter {letter} does not act: expected t, c or d")
    return ActionMatrix(g, m, tuple(tuple(r) for r in mat))


@dataclass(frozen=True)
class NormalForm:
    coset_word: Word
    kernel: ExponentVector


_COSET = ("t", "c", "d")


def normalize(w: Word, g: int, n: int, m: int) -> NormalForm:
    """Write w as (coset word in t/c/d) * (kernel element), pushing kernel
    letters rightward past coset letters via the conjugation action."""
    coset = []
    kernel = ExponentVector.zero(g, m)
    for gsym, sign in w:
        if gsym.family in _COSET:
            # K x^s = x^s (x^-s K x^s)
            kernel = action_of(gsym, -sign, g, m).apply(kernel)
            coset.append((gsym, sign))
        else:
            vec = unit(g, m, gsym.family, gsym.index)
            if gsym.family == "s" and not 1 <= gsym.index <= max(n - 1, 0):
                raise ValueError(f"sigma index {gsym.index} out of range for n={n}")
            kernel = kernel + (vec if sign == 1 else -vec)
    return NormalForm(Word(tuple(coset)), kernel)


def nf_combine(u: NormalForm, v: NormalForm, g: int, n: int, m: int) -> NormalForm:
    """Product of normal forms: coset words multiply, u's kernel is pushed
    through v's coset word."""
    kernel = u.kernel
    for gsym, sign in v.coset_word:
        kernel = action_of(gsym, -sign, g, m).apply(kernel)
    return NormalForm(u.coset_word * v.coset_word, kernel + v.kernel)


_ZERO_FAMILIES = {"BR", "R1", "R2", "R3", "R4", "BR-bar", "R1-bar", "R2-bar", "R3-bar", "R4-bar"}


def kernel_correction(family: str, relator: Word, g: int, n: int, m: int) -> ExponentVector:
    """Kernel element equal to the coset lift of a closed-group relator in
    B_{n,m}(S_g)/Gamma: zero except for (SR-bar), which equals z_1^-n."""
    if family in _ZERO_FAMILIES:
        return ExponentVector.zero(g, m)
    if family in ("SR", "SR-bar"):
        if m == 1:
            return ExponentVector.zero(g, m)
        return unit(g, m, "z", 1).scaled(-n)
    raise ValueError(f"unknown closed-presentation relator family {family!r}")
