"""Canonical stratification of the fiber F = f^{-1}(1) by coordinate tori.

Index sets are frozensets of 0-based variable indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import exact
from .mixed import MixedPolynomial, monomial_supports, restrict
from .weights import WeightSystem, is_full, is_simplicial


@dataclass(frozen=True)
class StratumReport:
    I: frozenset[int]
    restricted: MixedPolynomial
    full: bool
    d_I: int | None
    r_I: int
    m_p_I: int
    chi_stratum: int
    zeta_exponent: Fraction

    nonvanishing = True

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in sorted(self.I)) + "}"


@dataclass(frozen=True)
class StratificationReport:
    n: int
    m_p: int
    simplicial: bool
    strata: tuple[StratumReport, ...]
    convenience: int

    @property
    def S(self) -> list[frozenset[int]]:
        return [st.I for st in self.strata if st.full]

    @property
    def full_strata(self) -> list[StratumReport]:
        return [st for st in self.strata if st.full]


def _subsets(n: int):
    for k in range(1, n + 1):
        for c in combinations(range(n), k):
            yield c


def nonvanishing_subsets(f: MixedPolynomial) -> list[tuple[int, ...]]:
    """Nonempty ``I`` with ``f^I`` not identically zero, by (size, lex)."""
    supports = monomial_supports(f)
    out = []
    for I in _subsets(f.n):
        mask = sum(1 << i for i in I)
        if any(s & ~mask == 0 for s in supports):
            out.append(I)
    return out


def stratify(f: MixedPolynomial, W: WeightSystem) -> StratificationReport:
    """Per-stratum data ``d_I``, ``r_I = gcd(p_i, i in I)``, ``m_p/r_I``.

    Non-full nonvanishing strata carry Euler characteristic 0 and a trivial
    zeta factor.
    """
    if not W.satisfied_by(f):
        raise ValueError("weight system is inconsistent with f")
    strata = []
    for I in nonvanishing_subsets(f):
        fI = restrict(f, I)
        r_I = exact.gcd_many([W.p[i] for i in I])
        if r_I == 0 or W.m_p % r_I:
            raise ArithmeticError(f"r_I={r_I} does not divide m_p={W.m_p}")
        m_p_I = W.m_p // r_I
        full = is_full(fI, I)
        if full:
            d_I = abs(exact.det([[m.diff_exponent[i] for i in I] for m in fI.monomials]))
            chi = (-1) ** (len(I) - 1) * d_I
            zexp = Fraction((-1) ** len(I) * d_I, m_p_I)
        else:
            d_I, chi, zexp = None, 0, Fraction(0)
        strata.append(StratumReport(frozenset(I), fI, full, d_I, r_I, m_p_I, chi, zexp))
    return StratificationReport(f.n, W.m_p, is_simplicial(f), tuple(strata),
                                convenience_level(f))


def convenience_level(f: MixedPolynomial) -> int:
    """Largest ``k`` such that ``f^I`` is nonzero whenever ``|I| >= n - k``.

    This reading (rather than ``|I| >= k``) is the one under which the
    surface examples are 1-convenient.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    n = f.n
    supports = monomial_supports(f)
    if any(s == 0 for s in supports):
        return n
    k = 0
    # f^I nonzero for all |I| >= size  <=>  true for all |I| == size (monotone)
    for size in range(n - 1, 0, -1):
        ok = all(any(s & ~sum(1 << i for i in I) == 0 for s in supports)
                 for I in combinations(range(n), size))
        if not ok:
            break
        k = n - size
    return k
