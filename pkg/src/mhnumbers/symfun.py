"""Fixed-degree symmetric functions over Q(q,t) in the p- and m-bases."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from .partitions import Partition, enumerate_partitions, z_qt
from .qtfield import ZERO, as_ratqt, parse, serialize

__all__ = ["SymFunD", "p_to_m", "m_to_p", "inner_qt", "multiply_p", "power_sum", "monomial"]

POWER_SUM = "p"
MONOMIAL = "m"


def _p_times_m(r, lam):
    """p_r · m_λ as ``{ν: integer coefficient}``."""
    out = {}
    for a in set(lam) | {0}:
        parts = list(lam)
        if a:
            parts[parts.index(a)] += r
        else:
            parts.append(r)
        nu = Partition(parts)
        out[nu] = out.get(nu, 0) + nu.count(a + r)
    return out


@cache
def _p_in_m(mu):
    mu = Partition(mu)
    cur = {Partition(()): 1}
    for r in mu:
        nxt = {}
        for lam, coef in cur.items():
            for nu, k in _p_times_m(r, lam).items():
                nxt[nu] = nxt.get(nu, 0) + coef * k
        cur = nxt
    return cur


@cache
def p_to_m(d):
    """``M[μ][λ]``: integer coefficient of m_λ in p_μ, rows and columns over P_d."""
    parts = enumerate_partitions(d)
    return {mu: {lam: _p_in_m(mu).get(lam, 0) for lam in parts} for mu in parts}


@cache
def m_to_p(d):
    """``N[λ][Δ]``: rational coefficient of p_Δ in m_λ (inverse of :func:`p_to_m`)."""
    parts = enumerate_partitions(d)  # descending lex
    fwd = p_to_m(d)
    # p_μ = Σ_{λ >= μ} M[μ][λ] m_λ, so m_μ = (p_μ - Σ_{λ > μ} M[μ][λ] m_λ) / M[μ][μ]
    inv = {}
    for mu in parts:
        row = {delta: Fraction(0) for delta in parts}
        row[mu] += 1
        for lam in parts:
            if lam > mu and fwd[mu][lam]:
                for delta, v in inv[lam].items():
                    row[delta] -= fwd[mu][lam] * v
        piv = fwd[mu][mu]
        inv[mu] = {delta: v / piv for delta, v in row.items()}
    return inv


@dataclass(frozen=True)
class SymFunD:
    """Degree-d symmetric function; ``coeffs`` maps Partition -> RatQT."""

    degree: int
    basis: str
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in (POWER_SUM, MONOMIAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for k, v in self.coeffs.items():
            k = Partition(k)
            if k.weight != self.degree:
                raise ValueError(f"partition {k} has weight != degree {self.degree}")
            v = as_ratqt(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, lam):
        return self.coeffs.get(Partition(lam), ZERO)

    def __eq__(self, other):
        if not isinstance(other, SymFunD):
            return NotImplemented
        a, b = self, other
        if a.basis != b.basis:
            a, b = a.to_p(), b.to_p()
        return a.degree == b.degree and a.coeffs == b.coeffs

    def __add__(self, other):
        other = other.to_basis(self.basis)
        self._check_degree(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return SymFunD(self.degree, self.basis, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        s = as_ratqt(s)
        return SymFunD(self.degree, self.basis, {k: v * s for k, v in self.coeffs.items()})

    def _check_degree(self, other):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def to_basis(self, basis):
        return self.to_p() if basis == POWER_SUM else self.to_m()

    def to_p(self):
        if self.basis == POWER_SUM:
            return self
        conv = m_to_p(self.degree)
        out = {}
        for lam, v in self.coeffs.items():
            for delta, k in conv[lam].items():
                if k:
                    out[delta] = out.get(delta, ZERO) + v * k
        return SymFunD(self.degree, POWER_SUM, out)

    def to_m(self):
        if self.basis == MONOMIAL:
            return self
        conv = p_to_m(self.degree)
        out = {}
        for mu, v in self.coeffs.items():
            for lam, k in conv[mu].items():
                if k:
                    out[lam] = out.get(lam, ZERO) + v * k
        return SymFunD(self.degree, MONOMIAL, out)

    def to_json(self):
        return {
            "degree": self.degree,
            "basis": self.basis,
            "coeffs": {str(k): serialize(v) for k, v in sorted(self.coeffs.items(), reverse=True)},
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            obj["degree"],
            obj["basis"],
            {Partition.parse(k): parse(v) for k, v in obj["coeffs"].items()},
        )


def power_sum(lam, coeff=1):
    lam = Partition(lam)
    return SymFunD(lam.weight, POWER_SUM, {lam: coeff})


def monomial(lam, coeff=1):
    lam = Partition(lam)
    return SymFunD(lam.weight, MONOMIAL, {lam: coeff})


def inner_qt(f, g):
    """⟨f, g⟩_{q,t} with ⟨p_λ, p_μ⟩ = δ z_λ(q,t)."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    f, g = f.to_p(), g.to_p()
    total = ZERO
    for lam, v in f.coeffs.items():
        w = g.coeffs.get(lam)
        if w is not None:
            total = total + v * w * z_qt(lam)
    return total


def multiply_p(f, g):
    """Product in the p-basis: p_Δ p_Γ = p_{Δ ∪ Γ}."""
    if f.basis != POWER_SUM or g.basis != POWER_SUM:
        raise ValueError("multiply_p expects power-sum inputs")
    out = {}
    for a, v in f.coeffs.items():
        for b, w in g.coeffs.items():
            key = Partition(a + b)
            out[key] = out.get(key, ZERO) + v * w
    return SymFunD(f.degree + g.degree, POWER_SUM, out)
