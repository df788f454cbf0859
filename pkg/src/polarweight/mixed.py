"""Mixed polynomials f(z, zbar) with exact Gaussian-rational coefficients.

Variables are 0-based in the Python API (``z[0]`` is written ``z1`` in text).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .exact import GaussianRational

Exponent = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class MixedMonomial:
    coeff: GaussianRational
    nu: Exponent
    mu: Exponent

    def __post_init__(self):
        if not self.coeff:
            raise ValueError("monomial coefficient must be nonzero")
        if len(self.nu) != len(self.mu):
            raise ValueError("nu and mu lengths differ")
        if any(e < 0 for e in self.nu + self.mu):
            raise ValueError("negative exponent in mixed monomial")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for j, (a, b) in enumerate(zip(self.nu, self.mu)) if a or b)

    @property
    def sum_exponent(self) -> Exponent:
        return tuple(a + b for a, b in zip(self.nu, self.mu))

    @property
    def diff_exponent(self) -> Exponent:
        return tuple(a - b for a, b in zip(self.nu, self.mu))


def _canonical(n: int, terms: Iterable[tuple[GaussianRational, Exponent, Exponent]]):
    acc: dict[tuple[Exponent, Exponent], GaussianRational] = {}
    for c, nu, mu in terms:
        key = (tuple(nu), tuple(mu))
        acc[key] = acc[key] + c if key in acc else GaussianRational.coerce(c)
    monos = [MixedMonomial(c, nu, mu) for (nu, mu), c in acc.items() if c]
    monos.sort(key=lambda m: (m.nu, m.mu), reverse=True)
    return tuple(monos)


@dataclass(frozen=True)
class MixedPolynomial:
    """Sum of monomials ``c * z^nu * zbar^mu`` in ``n`` variables.

    Like terms are merged and zero terms dropped at construction, so two
    polynomials compare equal iff they are the same function.
    """

    n: int
    monomials: tuple[MixedMonomial, ...] = ()
    _arrays: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        for m in self.monomials:
            if len(m.nu) != self.n:
                raise ValueError(f"monomial has {len(m.nu)} variables, expected {self.n}")
        canon = _canonical(self.n, ((m.coeff, m.nu, m.mu) for m in self.monomials))
        object.__setattr__(self, "monomials", canon)

    @classmethod
    def _trusted(cls, n: int, monomials: tuple[MixedMonomial, ...]) -> "MixedPolynomial":
        """Skip canonicalization; ``monomials`` must already be canonical."""
        f = object.__new__(cls)
        object.__setattr__(f, "n", n)
        object.__setattr__(f, "monomials", monomials)
        object.__setattr__(f, "_arrays", None)
        return f

    @classmethod
    def from_terms(cls, n: int, terms) -> "MixedPolynomial":
        """Build from ``(coeff, nu, mu)`` triples; coefficients may be ints,
        Fractions, complex or :class:`GaussianRational`."""
        return cls(n, _canonical(n, ((GaussianRational.coerce(c), tuple(nu), tuple(mu))
                                     for c, nu, mu in terms)))

    @property
    def s(self) -> int:
        return len(self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def __bool__(self):
        return bool(self.monomials)

    def __str__(self):
        return render(self)

    def scaled(self, c) -> "MixedPolynomial":
        c = GaussianRational.coerce(c)
        return MixedPolynomial.from_terms(
            self.n, [(m.coeff * c, m.nu, m.mu) for m in self.monomials])

    # -- float evaluation -------------------------------------------------

    def _numeric(self):
        if self._arrays is None:
            c = np.array([complex(m.coeff) for m in self.monomials], dtype=complex)
            nu = np.array([m.nu for m in self.monomials], dtype=int).reshape(self.s, self.n)
            mu = np.array([m.mu for m in self.monomials], dtype=int).reshape(self.s, self.n)
            object.__setattr__(self, "_arrays", (c, nu, mu))
        return self._arrays

    def term_values(self, z) -> np.ndarray:
        """Values of the individual terms; shape ``(..., s)``."""
        c, nu, mu = self._numeric()
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.n:
            raise ValueError(f"point has {z.shape[-1]} coordinates, expected {self.n}")
        zz = z[..., None, :]
        mono = np.prod(zz ** nu * np.conj(zz) ** mu, axis=-1)
        return c * mono

    def __call__(self, z):
        return evaluate(self, z)


def evaluate(f: MixedPolynomial, z):
    """Evaluate at a point (shape ``(n,)``) or a batch (shape ``(k, n)``)."""
    vals = f.term_values(z)
    out = vals.sum(axis=-1)
    return complex(out) if np.ndim(out) == 0 else out


def term_magnitude(f: MixedPolynomial, z):
    """Sum of absolute values of the terms; a cancellation-free scale."""
    out = np.abs(f.term_values(z)).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<zbar>zbar(?P<zbi>\d+))
  | (?P<z>z(?P<zi>\d+))
  | (?P<int>\d+)
  | (?P<i>i)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "zbi":
            kind = "zbar"
        elif kind == "zi":
            kind = "z"
        if kind != "ws":
            if kind == "z":
                out.append(("var", (int(m.group("zi")), False), pos))
            elif kind == "zbar":
                out.append(("var", (int(m.group("zbi")), True), pos))
            elif kind == "int":
                out.append(("int", int(m.group()), pos))
            elif kind == "i":
                out.append(("i", None, pos))
            else:
                out.append((m.group(), None, pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.k += 1
        return tok

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            if self.peek()[0] in ("+", "-"):
                # one unary sign may follow the operator: "a + -b"
                sign *= -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign))
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[0]!r}", tok[2])
        return terms

    def term(self, sign):
        coeff = GaussianRational(sign)
        powers: dict[tuple[int, bool], int] = {}
        self.factor(powers, coeff_box := [coeff])
        while self.peek()[0] == "*":
            self.take()
            self.factor(powers, coeff_box)
        return coeff_box[0], powers

    def _signed_int(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        return sign * self.take("int")[1]

    def factor(self, powers, coeff_box):
        kind, val, pos = self.peek()
        if kind == "var":
            self.take()
            idx, bar = val
            if idx == 0:
                raise ParseError("variable index must be >= 1", pos)
            e = 1
            if self.peek()[0] == "^":
                self.take()
                etok = self.peek()
                if etok[0] != "int":
                    raise ParseError("malformed exponent", etok[2])
                e = self.take()[1]
            powers[(idx, bar)] = powers.get((idx, bar), 0) + e
        elif kind == "int":
            self.take()
            c = Fraction(val)
            if self.peek()[0] == "/":
                self.take()
                dtok = self.peek()
                if dtok[0] != "int" or dtok[1] == 0:
                    raise ParseError("malformed denominator", dtok[2])
                c /= self.take()[1]
            coeff_box[0] = coeff_box[0] * c
        elif kind == "i":
            self.take()
            coeff_box[0] = coeff_box[0] * GaussianRational(0, 1)
        elif kind == "(":
            self.take()
            re_part = self._signed_int()
            optok = self.peek()
            if optok[0] not in ("+", "-"):
                raise ParseError("expected '+' or '-' in complex literal", optok[2])
            self.take()
            im_part = 1
            if self.peek()[0] == "int":
                im_part = self.take()[1]
            self.take("i")
            self.take(")")
            if optok[0] == "-":
                im_part = -im_part
            coeff_box[0] = coeff_box[0] * GaussianRational(re_part, im_part)
        else:
            raise ParseError(f"unexpected {kind!r}", pos)


def parse(text: str, n: int | None = None) -> MixedPolynomial:
    """Parse ``"z1^2*zbar2 + z2^3"``-style text.

    Grammar: ``expr := term (('+'|'-') term)*``, ``term := factor ('*' factor)*``,
    ``factor := coeff | var ('^' uint)?``, ``var := 'z' uint | 'zbar' uint``,
    ``coeff := int | int '/' uint | 'i' | '(' int ('+'|'-') int 'i' ')'``.
    A leading sign on the first term, and one unary sign after a binary
    ``+``/``-``, are also accepted.
    """
    terms = _Parser(text).expr()
    max_idx = max((idx for _, pw in terms for (idx, _) in pw), default=0)
    if n is None:
        n = max_idx
    elif max_idx > n:
        raise ParseError(f"variable z{max_idx} exceeds n={n}", 0)
    triples = []
    for c, pw in terms:
        nu = [0] * n
        mu = [0] * n
        for (idx, bar), e in pw.items():
            (mu if bar else nu)[idx - 1] += e
        triples.append((c, tuple(nu), tuple(mu)))
    return MixedPolynomial.from_terms(n, triples)


def _fmt_real(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _render_coeff(c: GaussianRational, has_vars: bool) -> tuple[int, str]:
    """Return (sign, text) with text parseable as a product of factors."""
    if not c.im:
        sign = -1 if c.re < 0 else 1
        mag = abs(c.re)
        if mag == 1 and has_vars:
            return sign, ""
        return sign, _fmt_real(mag)
    if not c.re:
        sign = -1 if c.im < 0 else 1
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{_fmt_real(mag)}*i"
    den = math.lcm(c.re.denominator, c.im.denominator)
    a, b = int(c.re * den), int(c.im * den)
    op = "+" if b > 0 else "-"
    body = f"({a}{op}{abs(b)}i)"
    if den != 1:
        body += f"*1/{den}"
    return 1, body


def render(f: MixedPolynomial) -> str:
    """Text form accepted by :func:`parse` (round-trips exactly)."""
    if not f.monomials:
        return "0"
    parts = []
    for k, m in enumerate(f.monomials):
        factors = []
        for exps, stem in ((m.nu, "z"), (m.mu, "zbar")):
            for j, e in enumerate(exps):
                if e == 1:
                    factors.append(f"{stem}{j + 1}")
                elif e > 1:
                    factors.append(f"{stem}{j + 1}^{e}")
        sign, ctext = _render_coeff(m.coeff, bool(factors))
        if ctext:
            factors.insert(0, ctext)
        body = "*".join(factors)
        if k == 0:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)


# -- calculus and structure ------------------------------------------------

def _check_index(f: MixedPolynomial, j: int):
    if not 0 <= j < f.n:
        raise IndexError(f"variable index {j} out of range for n={f.n}")


def wirtinger_dz(f: MixedPolynomial, j: int) -> MixedPolynomial:
    """Formal d/dz_j (0-based ``j``)."""
    _check_index(f, j)
    terms = []
    for m in f.monomials:
        if m.nu[j]:
            nu = list(m.nu)
            nu[j] -= 1
            terms.append((m.coeff * m.nu[j], tuple(nu), m.mu))
    return MixedPolynomial.from_terms(f.n, terms)


def wirtinger_dzbar(f: MixedPolynomial, j: int) -> MixedPolynomial:
    """Formal d/dzbar_j (0-based ``j``)."""
    _check_index(f, j)
    terms = []
    for m in f.monomials:
        if m.mu[j]:
            mu = list(m.mu)
            mu[j] -= 1
            terms.append((m.coeff * m.mu[j], m.nu, tuple(mu)))
    return MixedPolynomial.from_terms(f.n, terms)


def gradients(f: MixedPolynomial) -> tuple[list[MixedPolynomial], list[MixedPolynomial]]:
    """``(df, dbar f)`` as lists of polynomials."""
    return ([wirtinger_dz(f, j) for j in range(f.n)],
            [wirtinger_dzbar(f, j) for j in range(f.n)])


def restrict(f: MixedPolynomial, I: Iterable[int]) -> MixedPolynomial:
    """Restriction to the coordinate subspace C^I, kept in all n variables."""
    I = frozenset(I)
    # a sub-tuple of canonical monomials is canonical
    return MixedPolynomial._trusted(f.n, tuple(m for m in f.monomials if m.support <= I))


@dataclass(frozen=True)
class ExponentMatrices:
    N: tuple[Exponent, ...]
    M: tuple[Exponent, ...]

    @property
    def plus(self):
        return [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.N, self.M)]

    @property
    def minus(self):
        return [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.N, self.M)]


def exponent_matrices(f: MixedPolynomial) -> ExponentMatrices:
    return ExponentMatrices(tuple(m.nu for m in f.monomials),
                            tuple(m.mu for m in f.monomials))


@dataclass(frozen=True)
class LaurentPolynomial:
    """Holomorphic Laurent polynomial ``sum c * w^e`` (``e`` may be negative)."""

    n: int
    terms: tuple[tuple[GaussianRational, Exponent], ...]

    def __post_init__(self):
        acc: dict[Exponent, GaussianRational] = {}
        for c, e in self.terms:
            if len(e) != self.n:
                raise ValueError("exponent length mismatch")
            acc[tuple(e)] = acc.get(tuple(e), GaussianRational()) + GaussianRational.coerce(c)
        terms = sorted(((c, e) for e, c in acc.items() if c), key=lambda t: t[1], reverse=True)
        object.__setattr__(self, "terms", tuple(terms))

    def restrict(self, I: Iterable[int]) -> "LaurentPolynomial":
        I = frozenset(I)
        return LaurentPolynomial(self.n, tuple(
            (c, e) for c, e in self.terms if all(j in I for j, x in enumerate(e) if x)))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for c, e in self.terms:
            mono = "*".join(f"w{j + 1}^{x}" if x != 1 else f"w{j + 1}"
                            for j, x in enumerate(e) if x)
            out.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(out)


def associated_laurent(f: MixedPolynomial) -> LaurentPolynomial:
    return LaurentPolynomial(f.n, tuple((m.coeff, m.diff_exponent) for m in f.monomials))


def evaluate_laurent(g: LaurentPolynomial, w) -> complex:
    w = np.asarray(w, dtype=complex)
    total = 0j
    for c, e in g.terms:
        val = complex(c)
        for wj, x in zip(w, e):
            if x < 0 and wj == 0:
                raise ZeroDivisionError("negative power of a zero coordinate")
            val *= wj ** x
        total += val
    return total


def join(f: MixedPolynomial, g: MixedPolynomial) -> MixedPolynomial:
    """``f(z_1..z_s) + g(z_{s+1}..z_{s+t})`` in disjoint variables."""
    pad_f, pad_g = (0,) * g.n, (0,) * f.n
    terms = [(m.coeff, m.nu + pad_f, m.mu + pad_f) for m in f.monomials]
    terms += [(m.coeff, pad_g + m.nu, pad_g + m.mu) for m in g.monomials]
    return MixedPolynomial.from_terms(f.n + g.n, terms)


def monomial_supports(f: MixedPolynomial) -> list[int]:
    """Bitmask of the support of each monomial (bit j <-> variable j)."""
    return [sum(1 << j for j in m.support) for m in f.monomials]

