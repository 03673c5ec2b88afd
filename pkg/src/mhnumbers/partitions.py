"""Partitions and the per-partition scalars built from their cells."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import cache, total_ordering
from math import factorial, prod

from .qtfield import ONE, eta_limit, q, substitute_eta, t

__all__ = [
    "Partition",
    "enumerate_partitions",
    "conjugate",
    "dominance_leq",
    "lex_cmp",
    "z",
    "z_qt",
    "c",
    "c_prime",
    "j",
    "hook_product",
    "hook_product_qt",
    "c_AB",
    "c_prime_AB",
    "j_AB",
    "EtaConsistencyError",
]


class EtaConsistencyError(AssertionError):
    """Cell-product and limit evaluation of a path quantity disagree."""


@total_ordering
class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Ordering is the lexicographic one on parts, so ``sorted(..., reverse=True)``
    gives the descending-lex order used to index every fixed-degree table.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            parts = tuple(x for x in parts if x != 0)
            if any(x < 0 for x in parts):
                raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @classmethod
    def parse(cls, s):
        """Parse ``"3,1,1"``; the empty string is the empty partition."""
        s = s.strip()
        if not s:
            return cls(())
        try:
            parts = [int(x) for x in s.split(",")]
        except ValueError:
            raise ValueError(f"invalid partition string {s!r}") from None
        if any(x <= 0 for x in parts):
            raise ValueError(f"invalid partition string {s!r}")
        if parts != sorted(parts, reverse=True):
            raise ValueError(f"partition parts must be weakly decreasing: {s!r}")
        return cls(parts)

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Partition({tuple(self)!r})"

    def __lt__(self, other):
        return tuple(self) < tuple(other)

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __hash__(self):
        return tuple.__hash__(self)

    @property
    def weight(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def multiplicities(self):
        return Counter(self)

    def conjugate(self):
        return conjugate(self)

    def cells(self):
        """``(i, j)`` for 1 <= i <= l(λ), 1 <= j <= λ_i."""
        return [(i + 1, jj + 1) for i, part in enumerate(self) for jj in range(part)]

    def arm(self, i, jj):
        return self[i - 1] - jj

    def leg(self, i, jj):
        return conjugate(self)[jj - 1] - i

    def hook(self, i, jj):
        return self.arm(i, jj) + self.leg(i, jj) + 1

    def cell_data(self):
        """List of ``(arm, leg, hook)`` over cells, row by row."""
        return _cell_data(self)

    def factorial(self):
        """Δ! = ∏ m_i!."""
        return prod(factorial(m) for m in self.multiplicities().values())


@cache
def _cell_data(lam):
    conj = conjugate(lam)
    out = []
    for i, part in enumerate(lam, start=1):
        for jj in range(1, part + 1):
            a = part - jj
            l_ = conj[jj - 1] - i
            out.append((a, l_, a + l_ + 1))
    return tuple(out)


@cache
def enumerate_partitions(d):
    """All partitions of d in descending lexicographic order."""
    if d < 0:
        raise ValueError("degree must be non-negative")

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(d, d))


@cache
def conjugate(lam):
    lam = Partition(lam)
    if not lam:
        return Partition(())
    return Partition(sum(1 for x in lam if x >= i) for i in range(1, lam[0] + 1))


def _check_weights(lam, mu):
    if sum(lam) != sum(mu):
        raise ValueError(f"weight mismatch: |{lam}| != |{mu}|")


def dominance_leq(lam, mu):
    """λ <= μ in dominance order (equal weights required)."""
    _check_weights(lam, mu)
    s1 = s2 = 0
    for k in range(max(len(lam), len(mu))):
        s1 += lam[k] if k < len(lam) else 0
        s2 += mu[k] if k < len(mu) else 0
        if s1 > s2:
            return False
    return True


def lex_cmp(lam, mu):
    """-1, 0 or 1 comparing λ and μ lexicographically (equal weights)."""
    _check_weights(lam, mu)
    a, b = tuple(lam), tuple(mu)
    return (a > b) - (a < b)


@cache
def z(lam):
    """z_λ = ∏ i^{m_i} m_i!."""
    return prod(i**m * factorial(m) for i, m in Counter(lam).items())


@cache
def z_qt(lam):
    """z_λ(q,t) = z_λ ∏ (1 - q^{λ_i}) / (1 - t^{λ_i})."""
    val = ONE * z(lam)
    for part in lam:
        val = val * (1 - q**part) / (1 - t**part)
    return val


@cache
def c(lam):
    """c_λ(q,t) = ∏_s (1 - q^{a(s)} t^{l(s)+1})."""
    val = ONE
    for a, l_, _ in _cell_data(Partition(lam)):
        val = val * (1 - q**a * t ** (l_ + 1))
    return val


@cache
def c_prime(lam):
    """c'_λ(q,t) = ∏_s (1 - q^{a(s)+1} t^{l(s)})."""
    val = ONE
    for a, l_, _ in _cell_data(Partition(lam)):
        val = val * (1 - q ** (a + 1) * t**l_)
    return val


@cache
def j(lam):
    return c(lam) * c_prime(lam)


def hook_product(lam):
    return prod(h for _, _, h in _cell_data(Partition(lam)))


@cache
def hook_product_qt(lam):
    """∏_s (1 - t^{hook(s)}), the q = t normalization of J_λ."""
    val = ONE
    for _, _, h in _cell_data(Partition(lam)):
        val = val * (1 - t**h)
    return val


def _checked(lam, A, B, by_cells, qt_value, order):
    via_limit = eta_limit(substitute_eta(qt_value, A, B), order)
    if via_limit != by_cells:
        raise EtaConsistencyError(
            f"{lam} at (A,B)=({A},{B}): cell product {by_cells} != limit {via_limit}"
        )
    return by_cells


@cache
def c_AB(lam, A, B):
    """lim c_λ(r^B, r^A)/(1-r)^{|λ|} = ∏ (A(l+1) + B a), checked both ways."""
    lam = Partition(lam)
    cells = Fraction(prod(A * (l_ + 1) + B * a for a, l_, _ in _cell_data(lam)))
    return _checked(lam, A, B, cells, c(lam), lam.weight)


@cache
def c_prime_AB(lam, A, B):
    """lim c'_λ(r^B, r^A)/(1-r)^{|λ|} = ∏ (A l + B(a+1)), checked both ways."""
    lam = Partition(lam)
    cells = Fraction(prod(A * l_ + B * (a + 1) for a, l_, _ in _cell_data(lam)))
    return _checked(lam, A, B, cells, c_prime(lam), lam.weight)


@cache
def j_AB(lam, A, B):
    lam = Partition(lam)
    cells = c_AB(lam, A, B) * c_prime_AB(lam, A, B)
    return _checked(lam, A, B, cells, j(lam), 2 * lam.weight)
