"""Macdonald polynomials P_λ(q,t), integral forms J_λ and the a_λ(Δ) table.

P_λ is obtained by solving its defining conditions directly: unitriangular in
the monomial basis and orthogonal to every m_μ with μ below λ.  Partitions are
processed in increasing lexicographic order (a linear extension of dominance),
so the solve is a Gram-Schmidt sweep; vanishing of coefficients outside the
dominance ideal is checked by the tests rather than assumed.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from .partitions import (
    Partition,
    c,
    enumerate_partitions,
    hook_product_qt,
    z,
)
from .qtfield import ONE, ZERO, as_ratqt, eta_limit, parse, serialize, substitute_eta
from .symfun import MONOMIAL, POWER_SUM, SymFunD, inner_qt, m_to_p

__all__ = [
    "MacdonaldTable",
    "SingularSystemError",
    "macdonald_table",
    "install_table",
    "macdonald_P",
    "integral_J",
    "coeff_a",
    "dim_qt",
    "character_MN",
    "schur_check",
    "jack_limit",
    "jack_J",
    "classical_dim",
    "TABLE_SCHEMA_VERSION",
]

TABLE_SCHEMA_VERSION = 1


class SingularSystemError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MacdonaldTable:
    degree: int
    P_in_m: dict  # λ -> SymFunD (monomial basis)
    J_in_p: dict  # λ -> SymFunD (power-sum basis)
    a: dict  # λ -> {Δ: RatQT}
    dim: dict  # λ -> RatQT

    @property
    def partitions(self):
        return enumerate_partitions(self.degree)

    def to_json(self):
        return {
            "schema_version": TABLE_SCHEMA_VERSION,
            "degree": self.degree,
            "rows": {
                str(lam): {str(dl): serialize(self.a[lam][dl]) for dl in self.partitions}
                for lam in self.partitions
            },
            "P": {str(lam): self.P_in_m[lam].to_json()["coeffs"] for lam in self.partitions},
        }

    @classmethod
    def from_json(cls, obj):
        if obj.get("schema_version") != TABLE_SCHEMA_VERSION:
            raise ValueError("Macdonald table cache has a stale schema version")
        d = obj["degree"]
        a, J, P, dim = {}, {}, {}, {}
        for lam in enumerate_partitions(d):
            row = {Partition.parse(k): parse(v) for k, v in obj["rows"][str(lam)].items()}
            a[lam] = {dl: row.get(dl, ZERO) for dl in enumerate_partitions(d)}
            J[lam] = SymFunD(d, POWER_SUM, row)
            P[lam] = SymFunD(
                d, MONOMIAL, {Partition.parse(k): parse(v) for k, v in obj["P"][str(lam)].items()}
            )
            dim[lam] = a[lam][Partition((1,) * d)]
        return cls(d, P, J, a, dim)


def _build_table(d):
    parts_up = sorted(enumerate_partitions(d))  # ascending lex
    mp = m_to_p(d)
    P_in_p = {}
    norms = {}
    for lam in parts_up:
        m_lam = SymFunD(d, POWER_SUM, {dl: as_ratqt(v) for dl, v in mp[lam].items()})
        acc = m_lam
        for mu in P_in_p:
            u = inner_qt(m_lam, P_in_p[mu])
            if u:
                acc = acc - P_in_p[mu].scale(u / norms[mu])
        nrm = inner_qt(acc, acc)
        if not nrm:
            raise SingularSystemError(f"degenerate orthogonality system at λ={lam}")
        P_in_p[lam] = acc
        norms[lam] = nrm

    P_in_m, J_in_p, a, dim = {}, {}, {}, {}
    ones = Partition((1,) * d)
    for lam in enumerate_partitions(d):
        P_in_m[lam] = P_in_p[lam].to_m()
        J = P_in_p[lam].scale(c(lam))
        J_in_p[lam] = J
        a[lam] = {dl: J[dl] for dl in enumerate_partitions(d)}
        dim[lam] = a[lam][ones]
        if not dim[lam]:
            raise SingularSystemError(f"dim λ vanishes identically for λ={lam}")
    return MacdonaldTable(d, P_in_m, J_in_p, a, dim)


_tables = {}
_lock = threading.Lock()


def macdonald_table(d):
    """Full degree-d table, built once per process and shared."""
    tab = _tables.get(d)
    if tab is None:
        with _lock:
            tab = _tables.get(d)
            if tab is None:
                tab = _build_table(d) if d > 0 else _degree_zero()
                _tables[d] = tab
    return tab


def install_table(table):
    """Seed the in-process cache (used when loading a persisted table)."""
    with _lock:
        _tables[table.degree] = table


def _degree_zero():
    e = Partition(())
    one = SymFunD(0, POWER_SUM, {e: ONE})
    return MacdonaldTable(0, {e: SymFunD(0, MONOMIAL, {e: ONE})}, {e: one}, {e: {e: ONE}}, {e: ONE})


def macdonald_P(lam):
    lam = Partition(lam)
    return macdonald_table(lam.weight).P_in_m[lam]


def integral_J(lam):
    lam = Partition(lam)
    return macdonald_table(lam.weight).J_in_p[lam]


def coeff_a(lam, delta):
    """a_λ(Δ): coefficient of p_Δ in J_λ."""
    lam, delta = Partition(lam), Partition(delta)
    if lam.weight != delta.weight:
        raise ValueError(f"weight mismatch: |{lam}| != |{delta}|")
    return macdonald_table(lam.weight).a[lam][delta]


def dim_qt(lam):
    lam = Partition(lam)
    return macdonald_table(lam.weight).dim[lam]


@cache
def _beta_char(beta, rho):
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    occupied = set(beta)
    for b in beta:
        nb = b - r
        if nb < 0 or nb in occupied:
            continue
        between = sum(1 for x in beta if nb < x < b)
        new = tuple(sorted((occupied - {b}) | {nb}, reverse=True))
        total += (-1) ** between * _beta_char(new, rest)
    return total


def character_MN(lam, delta):
    """Irreducible S_d character χ_λ at cycle type Δ (Murnaghan-Nakayama)."""
    lam, delta = Partition(lam), Partition(delta)
    if lam.weight != delta.weight:
        raise ValueError(f"weight mismatch: |{lam}| != |{delta}|")
    n = len(lam)
    beta = tuple(part + n - 1 - i for i, part in enumerate(lam))
    return _beta_char(beta, tuple(delta))


def schur_check(lam):
    """s_λ in the p-basis built from characters: coefficient χ_λ(Δ)/z_Δ."""
    lam = Partition(lam)
    d = lam.weight
    return SymFunD(
        d,
        POWER_SUM,
        {dl: as_ratqt(character_MN(lam, dl)) / z(dl) for dl in enumerate_partitions(d)},
    )


def classical_dim(lam):
    """dim of the irreducible S_d representation, χ_λ(1^d)."""
    lam = Partition(lam)
    return character_MN(lam, (1,) * lam.weight)


def q_equals_t_character(lam, delta):
    """a_λ(Δ)(t,t) · z_Δ / ∏(1 - t^hook): should be the constant χ_λ(Δ)."""
    val = coeff_a(lam, delta).subs_q_eq_t() * z(delta) / hook_product_qt(lam)
    return val


def dim_q_equals_t_expected(lam):
    """hook-product(λ, t) · dim(λ) / |λ|!."""
    lam = Partition(lam)
    return hook_product_qt(lam) * classical_dim(lam) / factorial(lam.weight)


# ---------------------------------------------------------------------------
# Jack side


def jack_limit(lam, A, B, raw=False):
    """Coefficients of J_λ along t = r^A, q = r^B, scaled by (1 - r)^{-|λ|}.

    The raw limit carries an extra factor A^{|λ|} relative to J^{(α)},
    α = B/A; it is divided out unless ``raw`` is set.
    """
    lam = Partition(lam)
    n = lam.weight
    out = {}
    for dl, v in macdonald_table(n).a[lam].items():
        val = eta_limit(substitute_eta(v, A, B), n) if v else Fraction(0)
        if not raw:
            val /= Fraction(A) ** n
        if val:
            out[dl] = val
    return out


@cache
def _jack_table(d, alpha):
    alpha = Fraction(alpha)
    mp = m_to_p(d)

    def inner(f, g):
        return sum(
            (v * g[dl] * z(dl) * alpha ** len(dl) for dl, v in f.items() if dl in g), Fraction(0)
        )

    P, norms = {}, {}
    for lam in sorted(enumerate_partitions(d)):
        acc = dict(mp[lam])
        for mu, vec in P.items():
            u = inner(mp[lam], vec)
            if u:
                for dl, v in vec.items():
                    acc[dl] = acc.get(dl, 0) - u / norms[mu] * v
        acc = {k: v for k, v in acc.items() if v}
        P[lam] = acc
        norms[lam] = inner(acc, acc)
    # J normalised by [m_{1^d}] J = d!, i.e. [p_{1^d}] J = 1
    ones = Partition((1,) * d)
    out = {}
    for lam, vec in P.items():
        s = 1 / vec[ones]
        out[lam] = {dl: v * s for dl, v in vec.items()}
    return out


def jack_J(lam, alpha):
    """Integral Jack function J^{(α)}_λ in the p-basis, exact rational α > 0."""
    lam = Partition(lam)
    return dict(_jack_table(lam.weight, alpha)[lam])
