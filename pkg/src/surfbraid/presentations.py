"""Builders for the five group presentations used by the toolkit.

All builders store a relation u = v as the relator u * v^-1.  Families with
empty index ranges are simply absent from the relator list (small parameters
never raise).  Relator family tags:

  closed surface braids:     BR R1 R2 R3 R4 SR
  punctured surface braids:  the above (minus SR) plus R5 R6 R7 R8
  mixed braids:              class I tags, BR-bar .. R4-bar, SR-bar,
                             IIIa IIIb IIIc IIId
  abelianized kernel:        commute sigma-squared z-product
  mixed quotient:            the kernel tags, *-bar, SR-bar, IIIa .. IIId
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

from .words import EMPTY, Alphabet, Word, commutator, letter, parse, sym


@dataclass
class Presentation:
    group: str
    params: dict
    generators: list
    relators: list  # list of (family tag, Word)
    alphabet: Alphabet = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.alphabet = Alphabet(self.generators)
        for fam, w in self.relators:
            if not w:
                raise ValueError(f"empty relator in family {fam}")
            self.alphabet.check(w)

    def families(self):
        return sorted({fam for fam, _ in self.relators})

    def relators_in(self, family: str):
        return [w for fam, w in self.relators if fam == family]


def _check(name, value, minimum=1):
    if not isinstance(value, int) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")


def _rel(u: Word, v: Word) -> Word:
    return u * v.inverse()


def _half_twist(fam: str, count: int, sign: int) -> Word:
    """x_1 x_2 ... x_{count}^2 ... x_2 x_1 with every letter raised to `sign`."""
    w = EMPTY
    for i in range(1, count + 1):
        w = w * letter(fam, i, sign)
    for i in range(count, 0, -1):
        w = w * letter(fam, i, sign)
    return w


def _sigma_tail_families(fam_s, fam_a, fam_b, num_strands, g):
    """Families (BR), (R1)-(R4) over generators fam_s/fam_a/fam_b.

    `num_strands` strands means num_strands - 1 sigma-type generators.
    """
    rels = []
    tag = {"s": "", "t": "-bar"}[fam_s]
    ns = num_strands - 1
    s = lambda i, e=1: letter(fam_s, i, e)
    a = lambda r, e=1: letter(fam_a, r, e)
    b = lambda r, e=1: letter(fam_b, r, e)
    # (BR)
    for i in range(1, ns + 1):
        for j in range(i + 2, ns + 1):
            rels.append(("BR" + tag, _rel(s(i) * s(j), s(j) * s(i))))
    for i in range(1, ns - 1 + 1):
        if i + 1 <= ns:
            rels.append(("BR" + tag, _rel(s(i) * s(i + 1) * s(i), s(i + 1) * s(i) * s(i + 1))))
    # (R1)
    for r in range(1, g + 1):
        for i in range(2, ns + 1):
            rels.append(("R1" + tag, _rel(a(r) * s(i), s(i) * a(r))))
            rels.append(("R1" + tag, _rel(b(r) * s(i), s(i) * b(r))))
    if ns >= 1:
        s1 = s(1)
        s1i = s(1, -1)
        # (R2)
        for r in range(1, g + 1):
            for x in (a, b):
                rels.append(("R2" + tag, _rel(s1i * x(r) * s1i * x(r), x(r) * s1i * x(r) * s1i)))
        # (R3)
        for ss in range(1, g + 1):
            for r in range(ss + 1, g + 1):
                for xs, yr in ((a, a), (b, b), (a, b), (b, a)):
                    rels.append(
                        ("R3" + tag, _rel(s1i * xs(ss) * s1 * yr(r), yr(r) * s1i * xs(ss) * s1))
                    )
        # (R4)
        for r in range(1, g + 1):
            rels.append(("R4" + tag, _rel(s1i * a(r) * s1i * b(r), b(r) * s1i * a(r) * s1)))
    return rels


def _commutator_block(fam_a: str, fam_b: str, g: int) -> Word:
    """[x_1, y_1^-1] ... [x_g, y_g^-1]."""
    w = EMPTY
    for r in range(1, g + 1):
        w = w * commutator(letter(fam_a, r), letter(fam_b, r, -1))
    return w


def build_closed(m: int, g: int) -> Presentation:
    """Presentation of the braid group of m strands on the closed genus-g surface."""
    _check("m", m)
    _check("g", g)
    gens = [sym("s", i) for i in range(1, m)]
    gens += [sym("a", r) for r in range(1, g + 1)] + [sym("b", r) for r in range(1, g + 1)]
    rels = _sigma_tail_families("s", "a", "b", m, g)
    rels.append(("SR", _rel(_commutator_block("a", "b", g), _half_twist("s", m - 1, 1))))
    return Presentation("closed", {"g": g, "m": m}, gens, rels)


def build_punctured(n: int, m: int, g: int) -> Presentation:
    """Presentation of the braid group of n strands on the m-punctured surface."""
    _check("n", n)
    _check("m", m)
    _check("g", g)
    gens = [sym("s", i) for i in range(1, n)]
    gens += [sym("a", r) for r in range(1, g + 1)] + [sym("b", r) for r in range(1, g + 1)]
    gens += [sym("z", j) for j in range(1, m)]
    rels = _sigma_tail_families("s", "a", "b", n, g)
    z = lambda j, e=1: letter("z", j, e)
    s = lambda i, e=1: letter("s", i, e)
    # (R5)
    for j in range(1, m):
        for i in range(2, n):
            rels.append(("R5", _rel(z(j) * s(i), s(i) * z(j))))
    if n >= 2:
        s1, s1i = s(1), s(1, -1)
        # (R6)
        for r in range(1, g + 1):
            for j in range(1, m):
                for fam in ("a", "b"):
                    x = letter(fam, r)
                    rels.append(("R6", _rel(s1i * z(j) * s1 * x, x * s1i * z(j) * s1)))
        # (R7)
        for j in range(1, m):
            for k in range(j + 1, m):
                rels.append(("R7", _rel(s1i * z(j) * s1 * z(k), z(k) * s1i * z(j) * s1)))
        # (R8)
        for j in range(1, m):
            rels.append(("R8", _rel(s1i * z(j) * s1i * z(j), z(j) * s1i * z(j) * s1i)))
    return Presentation("punctured", {"g": g, "n": n, "m": m}, gens, rels)


class ZmWord(NamedTuple):
    word: Word
    # True: the word equals z_m^{-1} (the orientation we follow; see the
    # abelianized kernel, where z_m = (z_1 ... z_{m-1})^{-1}).
    is_zm_inverse: bool


def z_m_word(n: int, m: int, g: int) -> ZmWord:
    """The braid of the first strand wrapping the last puncture, as a word.

    Returns W = [a_1,b_1^-1]...[a_g,b_g^-1] * (sigma half twist, inverted)
    * z_1...z_{m-1}; W represents z_m^{-1}.
    """
    _check("n", n)
    _check("m", m)
    _check("g", g)
    w = _commutator_block("a", "b", g) * _half_twist("s", n - 1, -1)
    for j in range(1, m):
        w = w * letter("z", j)
    return ZmWord(w, True)


def _subst(w: Word, mapping: dict) -> Word:
    return Word(tuple((sym(mapping.get(g.family, g.family), g.index), s) for g, s in w))


_TO_COSET = {"s": "t", "a": "c", "b": "d"}


def build_mixed(n: int, m: int, g: int) -> Presentation:
    """Presentation of the mixed braid group with strand blocks of sizes n and m."""
    _check("n", n)
    _check("m", m)
    _check("g", g)
    punct = build_punctured(n, m, g)
    gens = list(punct.generators)
    gens += [sym("t", i) for i in range(1, m)]
    gens += [sym("c", r) for r in range(1, g + 1)] + [sym("d", r) for r in range(1, g + 1)]

    zm = z_m_word(n, m, g).word.inverse()  # the word equal to z_m

    def z_of(k: int) -> Word:
        # z_m is not a generator: expand it so every relator stays over the alphabet
        return letter("z", k) if k <= m - 1 else zm

    rels = list(punct.relators)  # class (I)

    # class (II): closed-surface relations rewritten over the coset letters
    closed = build_closed(m, g)
    for fam, w in closed.relators:
        if fam == "SR":
            continue
        rels.append((fam + "-bar", _subst(w, _TO_COSET)))
    lhs = _commutator_block("c", "d", g) * _half_twist("t", m - 1, -1)
    z_chain = EMPTY
    for j in range(1, m + 1):
        z_chain = z_chain * z_of(j)
    rhs = EMPTY
    for i in range(n - 1, -1, -1):
        sigma_i = EMPTY
        for k in range(i, 0, -1):
            sigma_i = sigma_i * letter("s", k, -1)
        big = sigma_i * z_chain
        rhs = rhs * big * z_of(1).inverse() * big.inverse()
    rels.append(("SR-bar", _rel(lhs, rhs)))

    # class (III): conjugates of the kernel generators by the coset letters
    t = lambda i, e=1: letter("t", i, e)
    c = lambda r, e=1: letter("c", r, e)
    d = lambda r, e=1: letter("d", r, e)
    a = lambda r, e=1: letter("a", r, e)
    b = lambda r, e=1: letter("b", r, e)
    s = lambda i, e=1: letter("s", i, e)

    def conj(x: Word, y: Word) -> Word:
        return x * y * x.inverse()

    for i in range(1, n):
        for j in range(1, m):
            rels.append(("IIIa", _rel(conj(t(j), s(i)), s(i))))
        for r in range(1, g + 1):
            rels.append(("IIIa", _rel(conj(c(r), s(i)), s(i))))
            rels.append(("IIIa", _rel(conj(d(r), s(i)), s(i))))
    z1 = z_of(1)
    z1i = z1.inverse()
    for ss in range(1, g + 1):
        for j in range(1, m):
            rels.append(("IIIb", _rel(conj(t(j), a(ss)), a(ss))))
            rels.append(("IIIc", _rel(conj(t(j), b(ss)), b(ss))))
        for r in range(1, g + 1):
            if r == ss:
                rels.append(("IIIb", _rel(conj(c(r), a(ss)), conj(a(ss, -1) * z1i, a(ss)))))
                rels.append(
                    ("IIIb", _rel(conj(d(r), a(ss)), conj(b(ss, -1) * z1i * b(ss), z1 * a(ss))))
                )
                rels.append(("IIIc", _rel(conj(c(r), b(ss)), a(ss, -1) * z1i * a(ss) * b(ss))))
                rels.append(("IIIc", _rel(conj(d(r), b(ss)), conj(b(ss, -1) * z1i, b(ss)))))
            elif r < ss:
                rels.append(("IIIb", _rel(conj(c(r), a(ss)), a(ss))))
                rels.append(("IIIb", _rel(conj(d(r), a(ss)), a(ss))))
                rels.append(("IIIc", _rel(conj(c(r), b(ss)), b(ss))))
                rels.append(("IIIc", _rel(conj(d(r), b(ss)), b(ss))))
            else:
                wa = a(r, -1) * z1i * a(r) * z1
                wb = b(r, -1) * z1i * b(r) * z1
                rels.append(("IIIb", _rel(conj(c(r), a(ss)), conj(wa, a(ss)))))
                rels.append(("IIIb", _rel(conj(d(r), a(ss)), conj(wb, a(ss)))))
                rels.append(("IIIc", _rel(conj(c(r), b(ss)), conj(wa, b(ss)))))
                rels.append(("IIIc", _rel(conj(d(r), b(ss)), conj(wb, b(ss)))))
    for k in range(1, m):
        for j in range(1, m):
            if j == k - 1:
                image = z_of(k - 1)
            elif j == k:
                image = z_of(k) * z_of(k + 1) * z_of(k).inverse()
            else:
                image = z_of(k)
            rels.append(("IIId", _rel(conj(t(j), z_of(k)), image)))
        for r in range(1, g + 1):
            if k == 1:
                rels.append(("IIId", _rel(conj(c(r), z_of(k)), conj(a(r), z_of(k)))))
                rels.append(("IIId", _rel(conj(d(r), z_of(k)), conj(b(r, -1), z_of(k)))))
            else:
                rels.append(("IIId", _rel(conj(c(r), z_of(k)), z_of(k))))
                rels.append(("IIId", _rel(conj(d(r), z_of(k)), z_of(k))))

    rels = [(fam, w) for fam, w in rels if w]
    return Presentation("mixed", {"g": g, "n": n, "m": m}, gens, rels)


def build_kernel_abelianization(n: int, m: int, g: int) -> Presentation:
    """The abelianization of the punctured-surface braid group.

    Generators: pooled sigma, a_r, b_r, z_1..z_m (z_m adjoined).  Relators:
    pairwise commutators, sigma^2, z_m z_1 ... z_{m-1}.
    """
    _check("n", n)
    _check("m", m)
    _check("g", g)
    gens = [sym("s", 1)]
    gens += [sym("a", r) for r in range(1, g + 1)] + [sym("b", r) for r in range(1, g + 1)]
    gens += [sym("z", j) for j in range(1, m + 1)]
    rels = []
    for i, x in enumerate(gens):
        for y in gens[i + 1 :]:
            rels.append(("commute", commutator(Word(((x, 1),)), Word(((y, 1),)))))
    rels.append(("sigma-squared", letter("s", 1) * letter("s", 1)))
    chain = letter("z", m)
    for j in range(1, m):
        chain = chain * letter("z", j)
    rels.append(("z-product", chain))
    return Presentation("kernel_ab", {"g": g, "n": n, "m": m}, gens, rels)


def build_mixed_quotient(n: int, m: int, g: int) -> Presentation:
    """The mixed braid group modulo the commutator subgroup of its kernel."""
    _check("n", n)
    _check("m", m)
    _check("g", g)
    kernel = build_kernel_abelianization(n, m, g)
    gens = list(kernel.generators)
    gens += [sym("t", i) for i in range(1, m)]
    gens += [sym("c", r) for r in range(1, g + 1)] + [sym("d", r) for r in range(1, g + 1)]
    rels = list(kernel.relators)

    closed = build_closed(m, g)
    for fam, w in closed.relators:
        if fam == "SR":
            continue
        rels.append((fam + "-bar", _subst(w, _TO_COSET)))
    # (II)(b); the half twist carries tau_{m-1}^{-2}, matching (SR) of the
    # closed presentation (the single -1 in the source is read as a typo)
    lhs = _commutator_block("c", "d", g) * _half_twist("t", m - 1, -1)
    rels.append(("SR-bar", lhs * letter("z", 1) ** n))

    t = lambda i, e=1: letter("t", i, e)
    c = lambda r, e=1: letter("c", r, e)
    d = lambda r, e=1: letter("d", r, e)
    z = lambda k, e=1: letter("z", k, e)
    sig = letter("s", 1)

    def comm_rel(x, y):
        return commutator(x, y)

    for r in range(1, g + 1):
        rels.append(("IIIa", comm_rel(c(r), sig)))
        rels.append(("IIIa", comm_rel(d(r), sig)))
    for i in range(1, m):
        rels.append(("IIIa", comm_rel(t(i), sig)))
    for ss in range(1, g + 1):
        for i in range(1, m):
            rels.append(("IIIa", comm_rel(t(i), letter("a", ss))))
            rels.append(("IIIa", comm_rel(t(i), letter("b", ss))))
        for r in range(1, g + 1):
            rels.append(("IIIa", comm_rel(c(r), letter("a", ss))))
            rels.append(("IIIa", comm_rel(d(r), letter("b", ss))))
    for k in range(1, m):
        for r in range(1, g + 1):
            rels.append(("IIIa", comm_rel(c(r), z(k))))
            rels.append(("IIIa", comm_rel(d(r), z(k))))
    for ss in range(1, g + 1):
        for r in range(1, g + 1):
            image_b = z(1, -1) * letter("b", ss) if r == ss else letter("b", ss)
            rels.append(("IIIb", _rel(c(r) * letter("b", ss) * c(r, -1), image_b)))
            image_a = z(1) * letter("a", ss) if r == ss else letter("a", ss)
            rels.append(("IIIc", _rel(d(r) * letter("a", ss) * d(r, -1), image_a)))
    for i in range(1, m):
        for k in range(1, m):
            if i == k - 1:
                image = z(k - 1)
            elif i == k:
                image = z(k + 1)
            else:
                image = z(k)
            rels.append(("IIId", _rel(t(i) * z(k) * t(i, -1), image)))

    rels = [(fam, w) for fam, w in rels if w]
    return Presentation("mixed_quotient", {"g": g, "n": n, "m": m}, gens, rels)


BUILDERS = {
    "closed": lambda g=None, n=None, m=None: build_closed(m, g),
    "punctured": lambda g=None, n=None, m=None: build_punctured(n, m, g),
    "mixed": lambda g=None, n=None, m=None: build_mixed(n, m, g),
    "kernel_ab": lambda g=None, n=None, m=None: build_kernel_abelianization(n, m, g),
    "mixed_quotient": lambda g=None, n=None, m=None: build_mixed_quotient(n, m, g),
}


def serialize(p: Presentation, format: str = "json") -> bytes:
    if format == "json":
        doc = {
            "group": p.group,
            "params": p.params,
            "generators": [str(x) for x in p.generators],
            "relators": [{"family": fam, "word": str(w)} for fam, w in p.relators],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if format == "text":
        lines = [f"group {p.group}"]
        lines.append("params " + " ".join(f"{k}={v}" for k, v in sorted(p.params.items())))
        lines.append("generators " + " ".join(str(x) for x in p.generators))
        for fam, w in p.relators:
            lines.append(f"{fam}: {w}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {format!r}")


def parse_presentation(data: bytes) -> Presentation:
    text = data.decode()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        gens = [parse(tok).letters[0][0] for tok in doc["generators"]]
        rels = [(r["family"], parse(r["word"])) for r in doc["relators"]]
        return Presentation(doc["group"], doc["params"], gens, rels)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    group = lines[0].split(None, 1)[1]
    params = {}
    for kv in lines[1].split()[1:]:
        k, v = kv.split("=")
        params[k] = int(v)
    gens = [parse(tok).letters[0][0] for tok in lines[2].split()[1:]]
    rels = []
    for ln in lines[3:]:
        fam, w = ln.split(":", 1)
        rels.append((fam.strip(), parse(w)))
    return Presentation(group, params, gens, rels)


def exponent_matrix(p: Presentation):
    """Relator exponent sums over the presentation's generators, one row each."""
    index = {x: i for i, x in enumerate(p.generators)}
    rows = []
    for _, w in p.relators:
        row = [0] * len(p.generators)
        for gsym, sgn in w:
            row[index[gsym]] += sgn
        rows.append(row)
    return rows
