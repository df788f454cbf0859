"""Radial and polar weight systems of mixed polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .mixed import MixedPolynomial, associated_laurent, exponent_matrices


class NotPolarWeighted(ValueError):
    """The radial or polar weight equations have no solution."""

    def __init__(self, system: str, rows: Sequence[Sequence[int]]):
        self.system = system
        self.rows = [tuple(r) for r in rows]
        super().__init__(f"{system} weight system is inconsistent: "
                         f"rows {self.rows} with right-hand side 1")


@dataclass(frozen=True)
class WeightSystem:
    q: tuple[int, ...]
    m_r: int
    p: tuple[int, ...]
    m_p: int

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def u(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.m_r) for x in self.q)

    @property
    def v(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.m_p) for x in self.p)

    def satisfied_by(self, f: MixedPolynomial) -> bool:
        """True when every monomial of ``f`` has radial degree ``m_r`` and
        polar degree ``m_p``."""
        if f.n != self.n:
            return False
        for m in f.monomials:
            if sum(q * e for q, e in zip(self.q, m.sum_exponent)) != self.m_r:
                return False
            if sum(p * e for p, e in zip(self.p, m.diff_exponent)) != self.m_p:
                return False
        return True

    @classmethod
    def from_normalized(cls, u: Sequence[Fraction], v: Sequence[Fraction]) -> "WeightSystem":
        q, m_r = _integral(u)
        p, m_p = _integral(v)
        return cls(q, m_r, p, m_p)


def _integral(w: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    den = exact.lcm_many([Fraction(x).denominator for x in w])
    ints = tuple(int(Fraction(x) * den) for x in w)
    if exact.gcd_many(ints) != 1:
        # cannot happen when w solves an integer system with right side 1
        raise ArithmeticError(f"weights {ints} over {den} are not primitive")
    return ints, den


def _complete(rows: list[tuple[int, ...]], n: int) -> list[Fraction]:
    """Solve ``rows . x = 1``; pin free directions with ``x_j = 1`` for the
    smallest indices ``j`` that raise the rank."""
    sol = exact.solve_affine_system(rows)
    if not sol.consistent:
        raise ValueError("inconsistent")
    if sol.unique:
        return list(sol.particular)
    aug = list(rows)
    r = exact.rank(aug)
    for j in range(n):
        if r == n:
            break
        e = tuple(int(i == j) for i in range(n))
        r2 = exact.rank(aug + [e])
        if r2 > r:
            aug.append(e)
            r = r2
    sol = exact.solve_affine_system(aug)
    assert sol.unique
    return list(sol.particular)


def compute_weights(f: MixedPolynomial) -> WeightSystem:
    """Radial type ``(q; m_r)`` and polar type ``(p; m_p)`` of ``f``.

    Solves ``sum_j u_j (nu_j + mu_j) = 1`` and ``sum_j v_j (nu_j - mu_j) = 1``
    over all monomials; integer weights clear denominators with their lcm.
    Raises :class:`NotPolarWeighted` if either system is inconsistent.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no weights")
    E = exponent_matrices(f)
    plus, minus = E.plus, E.minus
    try:
        u = _complete(plus, f.n)
    except ValueError:
        raise NotPolarWeighted("radial", plus) from None
    try:
        v = _complete(minus, f.n)
    except ValueError:
        raise NotPolarWeighted("polar", minus) from None
    W = WeightSystem.from_normalized(u, v)
    assert W.satisfied_by(f)
    return W


def _rank_on(rows, cols: Sequence[int]) -> int:
    return exact.rank([[r[c] for c in cols] for r in rows]) if rows else 0


def is_simplicial(f: MixedPolynomial) -> bool:
    """Both families ``nu_j + mu_j`` and ``nu_j - mu_j`` are independent."""
    if f.is_zero():
        return True
    E = exponent_matrices(f)
    return exact.rank(E.plus) == f.s and exact.rank(E.minus) == f.s


def is_full(f: MixedPolynomial, variables: Iterable[int] | None = None) -> bool:
    """Simplicial with as many monomials as active variables.

    ``variables`` selects the active coordinates (default: all ``n``); a
    restriction ``f^I`` is full when ``is_full(f^I, I)``.
    """
    cols = sorted(range(f.n) if variables is None else set(variables))
    if f.is_zero() or f.s != len(cols):
        return False
    E = exponent_matrices(f)
    return _rank_on(E.plus, cols) == f.s and _rank_on(E.minus, cols) == f.s


@dataclass(frozen=True)
class WeightDiagnostics:
    semipositive: bool
    strictly_positive: bool
    retract_subspace: frozenset[int]
    monomials_leave_retract: bool | None = None
    """Every monomial involves a variable outside ``retract_subspace``
    (None when no polynomial was supplied)."""


def diagnostics(W: WeightSystem, f: MixedPolynomial | None = None) -> WeightDiagnostics:
    I0 = frozenset(j for j, q in enumerate(W.q) if q == 0)
    leave = None
    if f is not None:
        leave = all(not (m.support <= I0) for m in f.monomials)
    return WeightDiagnostics(
        semipositive=all(q >= 0 for q in W.q),
        strictly_positive=all(q > 0 for q in W.q),
        retract_subspace=I0,
        monomials_leave_retract=leave,
    )


def laurent_is_weighted(f: MixedPolynomial, W: WeightSystem) -> bool:
    """Check that the associated Laurent polynomial has polar type (p; m_p)."""
    return all(sum(p * e for p, e in zip(W.p, exp)) == W.m_p
               for _, exp in associated_laurent(f).terms)
