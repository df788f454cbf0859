"""Euler characteristic, monodromy zeta function and related invariants.

Zeta functions are kept factored as ``prod_m (1 - t^m)^{e_m}`` and divisors
as ``sum_m c_m Lambda_m`` with ``Lambda_m = div(t^m - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .mixed import MixedPolynomial
from .strata import StratificationReport, stratify
from .weights import WeightSystem, compute_weights


class NotSimplicial(ValueError):
    pass


class NonIntegralExponent(ArithmeticError):
    pass


class NotPolynomial(ArithmeticError):
    pass


def _merge(pairs) -> dict[int, int]:
    acc: dict[int, int] = {}
    for m, e in pairs:
        if m <= 0:
            raise ValueError(f"factor index must be positive, got {m}")
        acc[m] = acc.get(m, 0) + e
    return {m: e for m, e in sorted(acc.items(), reverse=True) if e}


@dataclass(frozen=True)
class ZetaFactored:
    """``prod_m (1 - t^m)^{e_m}``; keys are stored in decreasing order."""

    factors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "factors", _merge(self.factors.items()))

    def __eq__(self, other):
        return isinstance(other, ZetaFactored) and dict(self.factors) == dict(other.factors)

    def __hash__(self):
        return hash(tuple(self.factors.items()))

    def __mul__(self, other: "ZetaFactored") -> "ZetaFactored":
        return ZetaFactored(_merge(list(self.factors.items()) + list(other.factors.items())))

    def inverse(self) -> "ZetaFactored":
        return ZetaFactored({m: -e for m, e in self.factors.items()})

    @property
    def degree(self) -> int:
        """Degree as a rational function (numerator minus denominator)."""
        return sum(m * e for m, e in self.factors.items())

    def cyclotomic_multiplicities(self) -> dict[int, int]:
        """Multiplicity of each cyclotomic ``Phi_d`` (``1 - t^m`` is
        ``-prod_{d|m} Phi_d``); linear in the largest ``m``."""
        out: dict[int, int] = {}
        for m, e in self.factors.items():
            for d in range(1, m + 1):
                if m % d == 0:
                    out[d] = out.get(d, 0) + e
        return {d: e for d, e in sorted(out.items()) if e}

    def multiplicity(self, d: int) -> int:
        """Multiplicity of ``Phi_d``: the sum of ``e_m`` over ``d | m``."""
        return sum(e for m, e in self.factors.items() if m % d == 0)

    def is_polynomial(self) -> bool:
        """No cyclotomic factor has negative multiplicity.

        The multiplicity of ``Phi_d`` only depends on which ``m`` are
        divisible by ``d``, and that set is already realised by the gcd of
        its members, so testing the gcd-closure of the indices suffices
        (cheap even when some ``m`` is huge).
        """
        closure = set(self.factors)
        frontier = set(closure)
        while frontier:
            new = {math.gcd(x, y) for x in frontier for y in closure} - closure
            closure |= new
            frontier = new
        return all(self.multiplicity(d) >= 0 for d in closure)

    def series(self, D: int) -> list[Fraction]:
        """Power series coefficients ``t^0..t^D``."""
        out = [Fraction(0)] * (D + 1)
        out[0] = Fraction(1)
        for m, e in self.factors.items():
            # (1 - t^m)^e = sum_k binom(e, k) (-1)^k t^{mk}, generalized binomial
            terms = []
            coef = Fraction(1)
            k = 0
            while m * k <= D and coef:
                terms.append((m * k, coef * (-1) ** k))
                coef = coef * (e - k) / (k + 1)
                k += 1
            # the factor is supported on multiples of m only
            out = [sum(c * out[j - s] for s, c in terms if s <= j) for j in range(D + 1)]
        return out

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(f"(1-t^{m})^{e}" for m, e in self.factors.items())

    def to_json(self) -> dict:
        return {"factors": [{"m": m, "e": e} for m, e in self.factors.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ZetaFactored":
        return cls({int(x["m"]): int(x["e"]) for x in data["factors"]})


@dataclass(frozen=True)
class Divisor:
    """``sum_m c_m Lambda_m`` with ``Lambda_a Lambda_b = gcd(a,b) Lambda_lcm(a,b)``."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _merge(self.coeffs.items()))

    def __eq__(self, other):
        return isinstance(other, Divisor) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    @classmethod
    def lam(cls, m: int, c: int = 1) -> "Divisor":
        return cls({m: c})

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(_merge(list(self.coeffs.items()) + list(other.coeffs.items())))

    def __neg__(self) -> "Divisor":
        return Divisor({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor({m: k * c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return divisor_mul(self, other)

    @property
    def degree(self) -> int:
        return sum(m * c for m, c in self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.coeffs.items()):
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            if k == 0:
                parts.append(("-" if c < 0 else "") + f"{mag}L{m}")
            else:
                parts.append(f" {sign} {mag}L{m}")
        return "".join(parts)

    def to_json(self) -> dict:
        return {"divisor": [{"m": m, "c": c} for m, c in self.coeffs.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Divisor":
        return cls({int(x["m"]): int(x["c"]) for x in data["divisor"]})


def divisor_mul(x: Divisor, y: Divisor) -> Divisor:
    pairs = []
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            pairs.append((math.lcm(a, b), ca * cb * math.gcd(a, b)))
    return Divisor(_merge(pairs))


def to_divisor(z: ZetaFactored) -> Divisor:
    return Divisor(dict(z.factors))


def brieskorn_divisor(a) -> Divisor:
    """``(Lambda_{a_1} - 1)...(Lambda_{a_n} - 1) - (-1)^n`` with ``1 = Lambda_1``."""
    if any(x < 2 for x in a):
        raise ValueError("Brieskorn exponents must be >= 2")
    one = Divisor.lam(1)
    acc = one
    for x in a:
        acc = acc * (Divisor.lam(x) - one)
    return acc - (-1) ** len(a) * one


def _require_simplicial(strat: StratificationReport):
    if not strat.simplicial:
        raise NotSimplicial("stratified formulas need a simplicial polynomial")


def euler_characteristic(strat: StratificationReport) -> int:
    """``chi(F) = sum over full strata of (-1)^{|I|-1} d_I``."""
    _require_simplicial(strat)
    return sum(st.chi_stratum for st in strat.full_strata)


def zeta_function(strat: StratificationReport) -> ZetaFactored:
    """Product of ``(1 - t^{m_p,I})^{(-1)^{|I|} d_I / m_p,I}`` over full strata."""
    _require_simplicial(strat)
    pairs = []
    for st in strat.full_strata:
        e = st.zeta_exponent
        if e.denominator != 1:
            raise NonIntegralExponent(
                f"stratum {st.label}: m_p,I={st.m_p_I} does not divide d_I={st.d_I}")
        pairs.append((st.m_p_I, int(e)))
    return ZetaFactored(_merge(pairs))


def zeta_log_series(strat: StratificationReport, D: int) -> list[Fraction]:
    """Coefficients of ``log zeta`` at ``t^1..t^D`` from fixed-point counts:
    ``h^k`` fixes all of a full stratum when ``m_p,I | k`` and nothing else."""
    _require_simplicial(strat)
    if D < 1:
        raise ValueError("degree must be >= 1")
    out = []
    for k in range(1, D + 1):
        lef = sum(st.chi_stratum for st in strat.full_strata if k % st.m_p_I == 0)
        out.append(Fraction(lef, k))
    return out


def log_series_of_factored(z: ZetaFactored, D: int) -> list[Fraction]:
    """``log`` of the expanded power series, via ``(log P)' = P'/P``."""
    P = z.series(D)
    # integer exponents and P(0) = 1 keep every coefficient integral
    P = [int(c) for c in P]
    dP = [(k + 1) * P[k + 1] for k in range(D)]
    support = [i for i in range(1, D + 1) if P[i]]
    # Q = P'/P up to t^{D-1}
    Q: list[int] = []
    for k in range(D):
        acc = dP[k]
        for i in support:
            if i > k:
                break
            acc -= P[i] * Q[k - i]
        Q.append(acc)
    return [Fraction(Q[k - 1], k) for k in range(1, D + 1)]


def connectivity(strat: StratificationReport, n: int | None = None) -> int:
    """``min(k, n - 2)``; negative means no connectivity is guaranteed."""
    n = strat.n if n is None else n
    return min(strat.convenience, n - 2)


def middle_betti(chi: int, n: int, conn: int) -> int | None:
    """``b_{n-1}`` when only ``H_0`` and ``H_{n-1}`` can be nonzero, else None.

    For ``n = 1`` the fiber is a finite set and ``b_0 = chi``.
    """
    if n == 1:
        return chi
    if conn >= n - 2:
        return (-1) ** (n - 1) * (chi - 1)
    return None


def top_charpoly(zeta: ZetaFactored, n: int, conn: int) -> ZetaFactored | None:
    """``P_2`` for surfaces (``n = 3``) with ``P_0 = 1 - t`` and ``P_1 = 1``:
    ``zeta = P_0^{-1} P_2^{-1}`` so ``P_2 = (zeta (1 - t))^{-1}``."""
    if n != 3 or conn < 1:
        return None
    P2 = (zeta * ZetaFactored({1: 1})).inverse()
    if not P2.is_polynomial():
        raise NotPolynomial(f"{P2} is not a polynomial")
    return P2


@dataclass(frozen=True)
class InvariantReport:
    chi: int
    zeta: ZetaFactored
    divisor: Divisor
    connectivity: int
    middle_betti: int | None
    monodromy_order: int
    top_charpoly: ZetaFactored | None


def invariants(strat: StratificationReport) -> InvariantReport:
    chi = euler_characteristic(strat)
    zeta = zeta_function(strat)
    conn = connectivity(strat)
    return InvariantReport(
        chi=chi,
        zeta=zeta,
        divisor=to_divisor(zeta),
        connectivity=conn,
        middle_betti=middle_betti(chi, strat.n, conn),
        monodromy_order=strat.m_p,
        top_charpoly=top_charpoly(zeta, strat.n, conn),
    )


def analyze(f: MixedPolynomial) -> tuple[WeightSystem, StratificationReport, InvariantReport]:
    """Weights, stratification and invariants in one call."""
    W = compute_weights(f)
    strat = stratify(f, W)
    return W, strat, invariants(strat)
