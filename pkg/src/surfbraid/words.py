"""Free words over the mixed braid generator alphabet.

Letters are signed generator symbols; words are kept freely reduced at all
times (construction cancels adjacent inverse pairs).  Text convention:
``a1 b2^-1 z3 s1 t2 c1 d1`` with spaces between letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# family codes: s = sigma, t = tau, plus the surface generators a, b, z, c, d
FAMILIES = ("s", "a", "b", "z", "t", "c", "d")

_TOKEN = re.compile(r"^([sabztcd])([0-9]+)(\^-1)?$")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    family: str
    index: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")

    def __str__(self):
        return f"{self.family}{self.index}"


def sym(family: str, index: int) -> GeneratorSymbol:
    return GeneratorSymbol(family, index)


class Word:
    """A freely reduced word: an immutable sequence of (symbol, sign) pairs."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = _reduce(letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        out = EMPTY
        for _ in range(k):
            out = out * self
        return out

    def symbols(self):
        return {g for g, _ in self.letters}

    def __str__(self):
        return " ".join(f"{g}" + ("^-1" if s < 0 else "") for g, s in self.letters)

    def __repr__(self):
        return f"Word({str(self) or '1'!r})"


def _reduce(letters) -> tuple:
    out = []
    for g, s in letters:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +-1, got {s}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


EMPTY = Word()


def letter(family: str, index: int, sign: int = 1) -> Word:
    return Word(((sym(family, index), sign),))


def concat(w1: Word, w2: Word) -> Word:
    """Freely reduced concatenation."""
    return w1 * w2


def invert(w: Word) -> Word:
    return w.inverse()


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1, freely reduced."""
    return x * y * x.inverse() * y.inverse()


def parse(text: str) -> Word:
    """Parse the space separated text convention; '' and '1' mean the identity."""
    text = text.strip()
    if not text or text == "1":
        return EMPTY
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad letter token {tok!r}")
        fam, idx, inv = m.groups()
        letters.append((sym(fam, int(idx)), -1 if inv else 1))
    return Word(letters)


def render(w: Word) -> str:
    return str(w)


class Alphabet:
    """A finite set of legal generator symbols for a given (g, n, m) context."""

    def __init__(self, symbols):
        self._symbols = frozenset(symbols)

    def __contains__(self, g: GeneratorSymbol) -> bool:
        return g in self._symbols

    def __iter__(self):
        return iter(sorted(self._symbols))

    def __len__(self):
        return len(self._symbols)

    def check(self, w: Word) -> None:
        for g, _ in w:
            if g not in self._symbols:
                raise ValueError(f"letter {g} outside alphabet")
