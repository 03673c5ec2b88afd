"""The ∘_{q,t} product on the class basis {C_Δ} of the centre of Q(q,t)[S_d].

Also holds the classical brute-force oracle (products of class sums in S_d)
and the specialisation along the path t = r^A, q = r^B, r -> 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .hurwitz import character_sum, mh
from .macdonald import macdonald_table
from .partitions import Partition, c_AB, c_prime_AB, enumerate_partitions, j, j_AB, z, z_qt
from .qtfield import ONE, ZERO, as_ratqt, eta_limit, eta_order, substitute_eta

__all__ = [
    "CentralElement",
    "StructureTable",
    "EtaNormalizationError",
    "structure_constants",
    "basis_element",
    "circ",
    "bilinear_qt",
    "trilinear_qt",
    "idempotent",
    "cycle_type",
    "brute_force_class_product",
    "eta_structure",
    "eta_bilinear",
    "eta_idempotent",
    "eta_idempotent_orders",
    "eta_circ",
    "verify_cohomology_iso",
]

BRUTE_FORCE_MAX_DEGREE = 6


class EtaNormalizationError(ArithmeticError):
    """An r -> 1 limit has order different from the normalization it is taken with."""


@dataclass(frozen=True)
class CentralElement:
    degree: int
    coeffs: dict = field(default_factory=dict)  # Partition -> RatQT (or Fraction on the path)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            k = Partition(k)
            if k.weight != self.degree:
                raise ValueError(f"class {k} is not a partition of {self.degree}")
            if v:
                clean[k] = v
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, k):
        return self.coeffs.get(Partition(k), 0)

    def __add__(self, other):
        _same_degree(self, other)
        keys = set(self.coeffs) | set(other.coeffs)
        return CentralElement(self.degree, {k: self[k] + other[k] for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return CentralElement(self.degree, {k: v * s for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CentralElement):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs


def _same_degree(x, y):
    if x.degree != y.degree:
        raise ValueError(f"degree mismatch: {x.degree} vs {y.degree}")


@dataclass(frozen=True)
class StructureTable:
    degree: int
    C: dict  # (Δ1, Δ2, Δ3) -> coefficient of C_Δ3 in C_Δ1 ∘ C_Δ2


def basis_element(delta, coeff=ONE):
    delta = Partition(delta)
    return CentralElement(delta.weight, {delta: coeff})


@lru_cache(maxsize=None)
def structure_constants(d, parity_gate=False):
    """C_{Δ1Δ2}^{Δ3} = z_Δ3(q,t) MH_0(Δ1, Δ2, Δ3) (any integer genus)."""
    if d < 1:
        raise ValueError("d >= 1 required")
    parts = enumerate_partitions(d)
    C = {}
    for d1, d2, d3 in product(parts, repeat=3):
        val = mh(0, d, (d1, d2, d3)).value if parity_gate else character_sum(0, d, (d1, d2, d3))
        C[(d1, d2, d3)] = z_qt(d3) * val
    return StructureTable(d, C)


def circ(x, y, parity_gate=False):
    _same_degree(x, y)
    C = structure_constants(x.degree, parity_gate).C
    out = {}
    for d1, u in x.coeffs.items():
        for d2, v in y.coeffs.items():
            uv = u * v
            for d3 in enumerate_partitions(x.degree):
                cst = C[(d1, d2, d3)]
                if cst:
                    out[d3] = out.get(d3, ZERO) + uv * cst
    return CentralElement(x.degree, out)


def bilinear_qt(x, y):
    """⟨C_Δ1, C_Δ2⟩ = δ / z_Δ1(q,t)."""
    _same_degree(x, y)
    total = ZERO
    for k, v in x.coeffs.items():
        w = y.coeffs.get(k)
        if w:
            total = total + v * w / z_qt(k)
    return total


def trilinear_qt(x, y, w, parity_gate=False):
    """T(C_Δ1, C_Δ2, C_Δ3) = MH_0(Δ1, Δ2, Δ3), extended trilinearly."""
    _same_degree(x, y)
    _same_degree(y, w)
    d = x.degree
    total = ZERO
    for (a, u), (b, v), (cc, s) in product(x.coeffs.items(), y.coeffs.items(), w.coeffs.items()):
        val = mh(0, d, (a, b, cc)).value if parity_gate else character_sum(0, d, (a, b, cc))
        total = total + u * v * s * val
    return total


def idempotent(lam):
    """ε_λ = Σ_Δ (dim λ / j_λ) a_λ(Δ) z_Δ(q,t) C_Δ."""
    lam = Partition(lam)
    tab = macdonald_table(lam.weight)
    pre = tab.dim[lam] / j(lam)
    return CentralElement(
        lam.weight, {dl: pre * a * z_qt(dl) for dl, a in tab.a[lam].items()}
    )


# ---------------------------------------------------------------------------
# classical oracle


def cycle_type(perm):
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            n = 0
            k = i
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                n += 1
            out.append(n)
    return Partition(out)


@lru_cache(maxsize=None)
def _classes(d):
    by_type = {}
    for p in permutations(range(d)):
        by_type.setdefault(cycle_type(p), []).append(p)
    return by_type


def brute_force_class_product(delta1, delta2, d):
    """Integer coefficients N with C_Δ1 · C_Δ2 = Σ N_Δ3 C_Δ3 in Z[S_d]."""
    if d > BRUTE_FORCE_MAX_DEGREE:
        raise ValueError(f"brute force limited to d <= {BRUTE_FORCE_MAX_DEGREE}")
    delta1, delta2 = Partition(delta1), Partition(delta2)
    classes = _classes(d)
    counts = Counter()
    for s in classes[delta1]:
        for tt in classes[delta2]:
            counts[cycle_type(tuple(s[tt[i]] for i in range(d)))] += 1
    out = {}
    for k, n in counts.items():
        size = len(classes[k])
        assert n % size == 0
        out[k] = n // size
    return out


# ---------------------------------------------------------------------------
# the path t = r^A, q = r^B


def _limit(value, A, B, k, exact_order):
    value = as_ratqt(value)
    if not value:
        return Fraction(0)
    g = substitute_eta(value, A, B)
    if not g:  # vanishes identically on the path
        return Fraction(0)
    if exact_order:
        order = eta_order(g)
        if order != k:
            raise EtaNormalizationError(
                f"order {order} along (A,B)=({A},{B}) but normalization demands {k}"
            )
    return eta_limit(g, k)


@lru_cache(maxsize=None)
def eta_structure(d, A, B, parity_gate=False):
    """Limits of the structure constants along the path (no rescaling)."""
    C = structure_constants(d, parity_gate).C
    return {key: _limit(v, A, B, 0, exact_order=False) for key, v in C.items()}


def eta_circ(x, y, A, B, parity_gate=False):
    _same_degree(x, y)
    C = eta_structure(x.degree, A, B, parity_gate)
    out = {}
    for d1, u in x.coeffs.items():
        for d2, v in y.coeffs.items():
            for d3 in enumerate_partitions(x.degree):
                cst = C[(d1, d2, d3)]
                if cst:
                    out[d3] = out.get(d3, 0) + u * v * cst
    return CentralElement(x.degree, out)


def eta_bilinear(x, y, A, B):
    """⟨C_Δ, C_Δ⟩_{A|B} = 1 / (z_Δ α^{l(Δ)}), α = B/A."""
    _same_degree(x, y)
    alpha = Fraction(B, A)
    total = Fraction(0)
    for k, v in x.coeffs.items():
        w = y.coeffs.get(k)
        if w:
            total += v * w / (z(k) * alpha ** len(k))
    return total


def eta_idempotent(lam, A, B, scale_order=None):
    """Limit of ε_λ(r^B, r^A)(1 - r)^{scale_order}.

    ``scale_order`` defaults to |λ|, the factor written in the definition.
    The lowest order among the coefficients must match the normalization,
    otherwise :class:`EtaNormalizationError` is raised.  Single coefficients
    of higher order are genuine zeros of the Jack side (e.g. α = 3, λ = (2,1,1)).
    """
    lam = Partition(lam)
    k = lam.weight if scale_order is None else scale_order
    orders = [o for o in eta_idempotent_orders(lam, A, B).values() if o is not None]
    if min(orders) != -k:
        raise EtaNormalizationError(
            f"ε_{lam} has order {min(orders)} along (A,B)=({A},{B}) "
            f"but the factor (1-r)^{k} needs order {-k}"
        )
    eps = idempotent(lam)
    return CentralElement(
        lam.weight, {dl: _limit(v, A, B, -k, exact_order=False) for dl, v in eps.coeffs.items()}
    )


def eta_idempotent_orders(lam, A, B):
    """Order in (1 - r) of every coefficient of ε_λ along the path."""
    eps = idempotent(Partition(lam))
    out = {}
    for dl, v in eps.coeffs.items():
        g = substitute_eta(v, A, B)
        out[dl] = eta_order(g) if g else None
    return out


def verify_cohomology_iso(d, A, B, scale_order=None, parity_gate=False):
    """Check ε_λ(A|B) -> [λ]/c'_λ(A|B) preserves products and bilinear forms.

    Target side: ([λ]/c'_λ) ⋆ ([μ]/c'_μ) = δ [λ]/c'_λ and
    ⟨[λ]/c'_λ, [μ]/c'_μ⟩ = δ c'_λ/(c_λ c'_λ²) = δ / j_λ(A|B).
    Returns ``(ok, report)`` where report lists each failed comparison.
    """
    parts = enumerate_partitions(d)
    report = []
    try:
        eps = {lam: eta_idempotent(lam, A, B, scale_order) for lam in parts}
    except EtaNormalizationError as exc:
        return False, [f"idempotent limit: {exc}"]
    for lam, mu in product(parts, repeat=2):
        prod_ = eta_circ(eps[lam], eps[mu], A, B, parity_gate)
        want = eps[lam] if lam == mu else CentralElement(d, {})
        if prod_ != want:
            report.append(f"ε_{lam} ∘ ε_{mu} is not δ ε_{lam}")
        src = eta_bilinear(eps[lam], eps[mu], A, B)
        tgt = Fraction(0)
        if lam == mu:
            cp = c_prime_AB(lam, A, B)
            tgt = (cp / c_AB(lam, A, B)) / cp**2
            assert tgt == 1 / j_AB(lam, A, B)
        if src != tgt:
            report.append(f"⟨ε_{lam}, ε_{mu}⟩_(A|B) = {src}, target form gives {tgt}")
    return not report, report
