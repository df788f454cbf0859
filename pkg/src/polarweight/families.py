"""Named families of polar weighted polynomials and their closed forms.

Exponent vectors are given in variable order; permutations are 0-based
tuples with ``sigma[i]`` the image of ``i``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .mixed import MixedPolynomial, join

KINDS = ("g1", "g2", "cyclic", "brieskorn", "sigma_twisted", "chain")


def _unit(n: int, j: int, e: int) -> tuple[int, ...]:
    return tuple(e if i == j else 0 for i in range(n))


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of a family member.

    ``chain`` is ``z1^a1 zbar2^b1 + ... + z_{n-1}^a_{n-1} zbar_n^b_{n-1} + z_n^a_n``
    (``g2`` with general conjugate exponents; the surface polynomial
    ``f1`` is the case ``n = 3``).
    """

    kind: str
    a: tuple[int, ...]
    b: tuple[int, ...] = ()
    sigma: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        a, n = self.a, len(self.a)
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if n == 0:
            raise ValueError("empty exponent vector")
        if any(x < 1 for x in a):
            raise ValueError("exponents a_i must be >= 1")
        if self.kind == "g1" and max(a) < 2:
            raise ValueError("g1 needs some a_j >= 2")
        if self.kind == "brieskorn" and min(a) < 2:
            raise ValueError("Brieskorn exponents must be >= 2")
        if self.kind == "cyclic":
            if len(self.b) != n or any(x < 1 for x in self.b):
                raise ValueError("cyclic needs b of the same length with b_i >= 1")
        if self.kind == "chain":
            if len(self.b) != n - 1 or any(x < 1 for x in self.b):
                raise ValueError("chain needs n-1 exponents b_i >= 1")
        if self.kind == "sigma_twisted":
            check_permutation(self.sigma, n)

    @property
    def n(self) -> int:
        return len(self.a)


def check_permutation(sigma: Sequence[int], n: int) -> None:
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 0..{n - 1}")


def build(spec: FamilySpec) -> MixedPolynomial:
    a, n = spec.a, spec.n
    one = 1
    terms = []
    if spec.kind == "brieskorn":
        terms = [(one, _unit(n, j, a[j]), (0,) * n) for j in range(n)]
    elif spec.kind in ("g1", "cyclic", "sigma_twisted"):
        b = spec.b or (1,) * n
        sigma = spec.sigma or tuple((j + 1) % n for j in range(n))
        # z_j^a_j zbar_sigma(j)^b_j; for n == 1 this is z^a zbar^b
        terms = [(one, _unit(n, j, a[j]), _unit(n, sigma[j], b[j])) for j in range(n)]
    elif spec.kind in ("g2", "chain"):
        b = spec.b or (1,) * (n - 1)
        terms = [(one, _unit(n, j, a[j]), _unit(n, j + 1, b[j])) for j in range(n - 1)]
        terms.append((one, _unit(n, n - 1, a[n - 1]), (0,) * n))
    return MixedPolynomial.from_terms(n, terms)


def g1(a) -> MixedPolynomial:
    return build(FamilySpec("g1", tuple(a)))


def g2(a) -> MixedPolynomial:
    return build(FamilySpec("g2", tuple(a)))


def cyclic(a, b) -> MixedPolynomial:
    return build(FamilySpec("cyclic", tuple(a), tuple(b)))


def brieskorn(a) -> MixedPolynomial:
    return build(FamilySpec("brieskorn", tuple(a)))


def chain(a, b) -> MixedPolynomial:
    return build(FamilySpec("chain", tuple(a), tuple(b)))


def sigma_twisted(sigma, a) -> MixedPolynomial:
    return build(FamilySpec("sigma_twisted", tuple(a), sigma=tuple(sigma)))


# -- closed-form weights ---------------------------------------------------

def g1_weights_closed_form(a: Sequence[int]) -> tuple[Fraction, ...]:
    """Normalized radial weights of ``g1`` (indices taken cyclically)."""
    FamilySpec("g1", tuple(a))
    n = len(a)
    m = n // 2
    P = math.prod(a)
    aa = lambda k: a[k % n]  # noqa: E731
    u = []
    for j in range(n):
        total = 0
        for i in range(m):
            head = aa(j + 2 * i + 1) - 1
            tail = math.prod(aa(k) for k in range(j + 2 * i + 2, j + n))
            total += head * tail
        if n % 2 == 0:
            u.append(Fraction(total, P - 1))
        else:
            u.append(Fraction(1 + total, P + 1))
    return tuple(u)


def g2_weights_closed_form(a: Sequence[int]) -> tuple[Fraction, ...]:
    """``u_j = 1/a_j - 1/(a_j a_{j+1}) + ... + (-1)^(n-j)/(a_j...a_n)``."""
    FamilySpec("g2", tuple(a))
    n = len(a)
    u = []
    for j in range(n):
        total = Fraction(0)
        den = 1
        for k in range(j, n):
            den *= a[k]
            total += Fraction((-1) ** (k - j), den)
        u.append(total)
    return tuple(u)


def g2_polar_weights_closed_form(a: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Polar type ``(p; a_1...a_n)`` of ``g2`` with
    ``p_j = m_p (1/a_j + 1/(a_j a_{j+1}) + ... + 1/(a_j...a_n))``.

    This system is not reduced in general: dividing by ``gcd(p)`` gives the
    primitive type returned by :func:`compute_weights`.
    """
    FamilySpec("g2", tuple(a))
    m_p = math.prod(a)
    p = []
    for j in range(len(a)):
        total = Fraction(0)
        den = 1
        for k in range(j, len(a)):
            den *= a[k]
            total += Fraction(1, den)
        p.append(int(total * m_p))
    return tuple(p), m_p


def cyclic_simplicial(a: Sequence[int], b: Sequence[int]) -> bool:
    return math.prod(a) != math.prod(b)


# -- isolatedness ----------------------------------------------------------

def isolated_g1(a: Sequence[int]) -> bool:
    """``g1^{-1}(0)`` is smooth off the origin: ``n`` odd, or two exponents
    ``>= 2`` at positions of opposite parity."""
    FamilySpec("g1", tuple(a))
    n = len(a)
    if n % 2 == 1:
        return True
    big = [i for i, x in enumerate(a) if x >= 2]
    return len({i % 2 for i in big}) == 2


def isolated_g2(a: Sequence[int]) -> bool:
    FamilySpec("g2", tuple(a))
    n = len(a)
    if a[-1] >= 2:
        return True
    # positions 1, 3, 5, ... (1-based) are the even 0-based indices
    return n % 2 == 1 and all(a[i] == 1 for i in range(0, n, 2))


def cycles(sigma: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting from its smallest element."""
    seen = set()
    out = []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = sigma[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = sigma[j]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class TwistedVerdict:
    isolated: bool
    factors: tuple[tuple[tuple[int, ...], bool], ...]
    fixed_point_rule_used: bool


def isolated_sigma_twisted_report(sigma: Sequence[int], a: Sequence[int]) -> TwistedVerdict:
    """Per-cycle verdicts for a weak sigma-twisted Brieskorn polynomial.

    A fixed point ``j`` contributes ``z_j^a_j zbar_j``, accepted as isolated
    iff ``a_j >= 2``. A longer cycle is judged by :func:`isolated_g1` on its
    exponents read along the cycle; a cycle whose exponents are all 1 gives
    a real-valued, non-polar factor and counts as non-isolated.
    """
    check_permutation(sigma, len(a))
    factors = []
    used_fixed = False
    for cyc in cycles(sigma):
        sub = [a[j] for j in cyc]
        if len(cyc) == 1:
            used_fixed = True
            ok = sub[0] >= 2
        else:
            ok = max(sub) >= 2 and isolated_g1(sub)
        factors.append((cyc, ok))
    return TwistedVerdict(all(ok for _, ok in factors), tuple(factors), used_fixed)


def isolated_sigma_twisted(sigma: Sequence[int], a: Sequence[int]) -> bool:
    return isolated_sigma_twisted_report(sigma, a).isolated


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4)"`` into a 0-based
    permutation of ``range(n)``; ``"()"`` or ``""`` is the identity."""
    sigma = list(range(n))
    body = text.strip()
    if body and not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)+", body):
        raise ValueError(f"malformed cycle notation {text!r}")
    used = set()
    for grp in re.findall(r"\(([^)]*)\)", body):
        elems = [int(x) - 1 for x in re.split(r"[\s,]+", grp.strip()) if x]
        if any(not 0 <= e < n for e in elems) or used & set(elems) or len(set(elems)) != len(elems):
            raise ValueError(f"invalid cycle ({grp}) for n={n}")
        used |= set(elems)
        for x, y in zip(elems, elems[1:] + elems[:1]):
            sigma[x] = y
    return tuple(sigma)


__all__ = [
    "FamilySpec", "build", "g1", "g2", "cyclic", "brieskorn", "chain", "sigma_twisted",
    "g1_weights_closed_form", "g2_weights_closed_form", "g2_polar_weights_closed_form",
    "cyclic_simplicial",
    "isolated_g1", "isolated_g2", "isolated_sigma_twisted",
    "isolated_sigma_twisted_report", "cycles", "parse_cycles", "join",
]
