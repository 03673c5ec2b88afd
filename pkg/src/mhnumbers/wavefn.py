"""Fixed-degree generating wave functions Φ_h, truncated in total u-degree.

A series stores, for every u multi-index l, the coefficient of the monomial
u^l (the 1/l! is folded in) as a map from partition tuples (Γ_1, ..., Γ_k, Γ)
to Laurent polynomials in ħ.  Γ is always the last slot, the one the
cut-and-join operators act on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial, prod

from .cutjoin import HLaurent, compose, cut_and_join, identity_operator
from .hurwitz import character_sum, mh
from .macdonald import macdonald_table
from .partitions import Partition, enumerate_partitions, j, z_qt
from .qtfield import ONE, ZERO, q, t

__all__ = [
    "WaveSeries",
    "phi",
    "phi_mh_sum",
    "exp_action",
    "initial_value",
    "perfect0_single",
    "perfect0_pair",
    "cauchy_sides",
    "verify_cauchy",
    "pde_sides",
    "verify_pde",
    "apply_last",
]


def _key_str(key):
    return "|".join(str(p) for p in key)


@dataclass(frozen=True)
class WaveSeries:
    h: int
    d: int
    deltas: tuple
    k: int
    max_u_order: int
    coeffs: dict = field(default_factory=dict)  # l -> {(Γ_1..Γ_k, Γ): HLaurent}

    def __getitem__(self, l):
        return self.coeffs.get(tuple(l), {})

    def __eq__(self, other):
        if not isinstance(other, WaveSeries):
            return NotImplemented
        return (
            (self.h, self.d, self.deltas, self.k, self.max_u_order)
            == (other.h, other.d, other.deltas, other.k, other.max_u_order)
            and _strip(self.coeffs) == _strip(other.coeffs)
        )

    def to_json(self):
        return {
            "h": self.h,
            "d": self.d,
            "deltas": [str(x) for x in self.deltas],
            "k": self.k,
            "max_u_order": self.max_u_order,
            "coeffs": {
                ",".join(map(str, l)): {_key_str(key): v.to_json() for key, v in sorted(row.items())}
                for l, row in sorted(self.coeffs.items())
                if row
            },
        }


def _strip(coeffs):
    return {l: row for l, row in coeffs.items() if row}


def _multi_indices(n, order):
    """All l in N^n with |l| <= order, in graded order."""
    out = []
    for total in range(order + 1):
        for l in product(range(total + 1), repeat=n):
            if sum(l) == total:
                out.append(l)
    return out


def _check(d, deltas, k, max_u_order):
    if d < 1:
        raise ValueError("degree must be >= 1")
    if k < 0 or max_u_order < 0:
        raise ValueError("k and max_u_order must be non-negative")
    deltas = tuple(Partition(x) for x in deltas)
    for x in deltas:
        if x.weight != d:
            raise ValueError(f"Δ={x} is not a partition of {d}")
    return deltas


def _hbar_exp(h, d, profiles):
    """2g - 2 from the Riemann-Hurwitz relation (always an integer)."""
    return sum(d - len(p) for p in profiles) - (2 - 2 * h) * d


def phi(h, d, deltas, k=0, max_u_order=0):
    """Φ_h via the λ-sum: Σ_λ (dim²/j)^{1-h} ∏ (a(Δ_j)/dim)^{l_j}/l_j! ∏ J_λ/dim."""
    deltas = _check(d, deltas, k, max_u_order)
    tab = macdonald_table(d)
    parts = enumerate_partitions(d)
    lams = tab.partitions
    w = {lam: (tab.dim[lam] ** 2 / j(lam)) ** (1 - h) for lam in lams}
    ratio = {lam: {dl: tab.a[lam][dl] / tab.dim[lam] for dl in parts} for lam in lams}
    # λ-dependent part of the spectator/last-slot product, per key
    keys = list(product(parts, repeat=k + 1))
    slot = {key: {lam: prod((ratio[lam][g] for g in key), start=ONE) for lam in lams} for key in keys}

    coeffs = {}
    for l in _multi_indices(len(deltas), max_u_order):
        fact = prod(factorial(x) for x in l)
        ulam = {
            lam: prod((ratio[lam][dl] ** m for dl, m in zip(deltas, l)), start=ONE) for lam in lams
        }
        base = [dl for dl, m in zip(deltas, l) for _ in range(m)]
        row = {}
        for key in keys:
            val = ZERO
            for lam in lams:
                val = val + w[lam] * ulam[lam] * slot[key][lam]
            if val:
                row[key] = HLaurent({_hbar_exp(h, d, base + list(key)): val / fact})
        coeffs[l] = row
    return WaveSeries(h, d, deltas, k, max_u_order, coeffs)


def phi_mh_sum(h, d, deltas, k=0, max_u_order=0, parity_gate=False):
    """Φ_h as a sum over Macdonald-Hurwitz numbers (independent oracle).

    Without the gate every profile tuple contributes its λ-sum, with ħ
    exponent R - (2-2h)d; with it only tuples of integer genus survive.
    """
    deltas = _check(d, deltas, k, max_u_order)
    parts = enumerate_partitions(d)
    coeffs = {}
    for l in _multi_indices(len(deltas), max_u_order):
        fact = prod(factorial(x) for x in l)
        base = tuple(dl for dl, m in zip(deltas, l) for _ in range(m))
        row = {}
        for key in product(parts, repeat=k + 1):
            profs = base + key
            val = mh(h, d, profs).value if parity_gate else character_sum(h, d, profs)
            if val:
                row[key] = HLaurent({_hbar_exp(h, d, profs): val / fact})
        coeffs[l] = row
    return WaveSeries(h, d, deltas, k, max_u_order, coeffs)


def apply_last(op, row):
    """Let an operator act on the last variable set of a tensor row."""
    out = {}
    for key, v in row.items():
        *spect, gp = key
        for g in enumerate_partitions(op.degree):
            e = op[(g, gp)]
            if e:
                nk = tuple(spect) + (g,)
                out[nk] = out[nk] + e * v if nk in out else e * v
    return {key: v for key, v in out.items() if v}


def initial_value(h, d, k):
    return phi(h, d, (), k, 0)[()]


def exp_action(h, d, deltas, k=0, max_u_order=0, parity_gate=False, initial=None):
    """[∏ exp(u_i D(Δ_i, ħ))] applied to the initial value, truncated.

    The coefficient of u^l is (∏ D(Δ_i)^{l_i} / l_i!) Φ_h{ħ||...}.
    """
    deltas = _check(d, deltas, k, max_u_order)
    init = initial_value(h, d, k) if initial is None else initial
    ops = [cut_and_join(dl, d, parity_gate) for dl in deltas]
    # powers[i][m] = D_i^m
    powers = []
    for op in ops:
        pw = [identity_operator(d)]
        for _ in range(max_u_order):
            pw.append(compose(op, pw[-1]))
        powers.append(pw)
    coeffs = {}
    for l in _multi_indices(len(deltas), max_u_order):
        row = init
        for i in reversed(range(len(deltas))):
            if l[i]:
                row = apply_last(powers[i][l[i]], row)
        fact = prod(factorial(x) for x in l)
        coeffs[l] = {key: v * (ONE / fact) for key, v in row.items()}
    return WaveSeries(h, d, deltas, k, max_u_order, coeffs)


# ---------------------------------------------------------------------------
# closed-form initial values


def perfect0_single(d):
    """ħ^{-2d} (p_1^d / d!) ((1 - t)/(1 - q))^d."""
    ones = Partition((1,) * d)
    val = ((1 - t) / (1 - q)) ** d / factorial(d)
    return {(ones,): HLaurent({-2 * d: val})}


def perfect0_pair(d):
    """Σ_Δ ħ^{-2l(Δ)} p^{(1)}_Δ p_Δ / z_Δ(q,t)."""
    return {(dl, dl): HLaurent({-2 * len(dl): ONE / z_qt(dl)}) for dl in enumerate_partitions(d)}


def cauchy_sides(d):
    """Degree-d parts of Σ_λ J_λ(x)J_λ(y)/j_λ and Σ_Δ p_Δ(x)p_Δ(y)/z_Δ(q,t)."""
    tab = macdonald_table(d)
    parts = enumerate_partitions(d)
    lhs = {}
    for a, b in product(parts, repeat=2):
        val = ZERO
        for lam in tab.partitions:
            val = val + tab.a[lam][a] * tab.a[lam][b] / j(lam)
        if val:
            lhs[(a, b)] = val
    rhs = {(dl, dl): ONE / z_qt(dl) for dl in parts}
    return lhs, rhs


def verify_cauchy(d):
    lhs, rhs = cauchy_sides(d)
    return lhs == rhs


# ---------------------------------------------------------------------------
# the differential equation


def pde_sides(series, i, parity_gate=False):
    """(∂Φ/∂u_i, D(Δ_i) Φ) restricted to |l| <= max_u_order - 1."""
    if series.max_u_order < 1:
        raise ValueError("need max_u_order >= 1")
    if not 0 <= i < len(series.deltas):
        raise IndexError(f"no variable u_{i}")
    op = cut_and_join(series.deltas[i], series.d, parity_gate)
    lhs, rhs = {}, {}
    for l in _multi_indices(len(series.deltas), series.max_u_order - 1):
        up = tuple(x + (1 if n == i else 0) for n, x in enumerate(l))
        lhs[l] = {key: v * (up[i]) for key, v in series[up].items()}
        rhs[l] = apply_last(op, series[l])
    return lhs, rhs


def verify_pde(series, i, parity_gate=False):
    lhs, rhs = pde_sides(series, i, parity_gate)
    return _strip(lhs) == _strip(rhs)
