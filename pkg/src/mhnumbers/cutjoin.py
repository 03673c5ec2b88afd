"""Genus-expanded cut-and-join operators acting on the degree-d p-basis.

Operators are matrices over partitions of d whose entries are Laurent
polynomials in ħ.  Entry ``(Γ, Γ')`` is the coefficient of p_Γ in D(Δ, ħ) p_Γ'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hurwitz import character_sum, mh
from .macdonald import macdonald_table
from .partitions import Partition, enumerate_partitions, z_qt
from .qtfield import ONE, ZERO, as_ratqt, serialize

__all__ = [
    "HLaurent",
    "OperatorD",
    "cut_and_join",
    "apply",
    "compose",
    "genus_expanded_J",
    "eigen_sides",
    "verify_eigen",
    "closure_sides",
    "verify_closure",
    "normalized_operator",
    "classical_cut_and_join_matrix",
    "classical_proportionality",
]


class HLaurent:
    """Finite Laurent polynomial in ħ with Q(q,t) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for e, v in (terms or {}).items():
            v = as_ratqt(v)
            if v:
                self.terms[int(e)] = v

    @classmethod
    def monomial(cls, exp, coeff):
        return cls({exp: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out[e] + v if e in out else v
        return HLaurent(out)

    def __neg__(self):
        return HLaurent({e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HLaurent):
            other = as_ratqt(other)
            return HLaurent({e: v * other for e, v in self.terms.items()})
        out = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = e1 + e2
                out[e] = out[e] + v1 * v2 if e in out else v1 * v2
        return HLaurent(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ħ^k."""
        return HLaurent({e + k: v for e, v in self.terms.items()})

    def at_hbar_one(self):
        total = ZERO
        for v in self.terms.values():
            total = total + v
        return total

    def map_coeffs(self, fn):
        return HLaurent({e: fn(v) for e, v in self.terms.items()})

    def to_json(self):
        return {str(e): serialize(v) for e, v in sorted(self.terms.items())}

    def __repr__(self):
        inner = ", ".join(f"ħ^{e}: {v}" for e, v in sorted(self.terms.items()))
        return f"HLaurent({{{inner}}})"


_H0 = HLaurent()


@dataclass(frozen=True)
class OperatorD:
    degree: int
    entries: dict  # (Γ, Γ') -> HLaurent, zeros omitted
    label: object = None

    def __getitem__(self, key):
        return self.entries.get(key, _H0)

    def __eq__(self, other):
        if not isinstance(other, OperatorD):
            return NotImplemented
        return self.degree == other.degree and self.entries == other.entries

    def __add__(self, other):
        keys = set(self.entries) | set(other.entries)
        return OperatorD(self.degree, _clean({k: self[k] + other[k] for k in keys}))

    def scale(self, s):
        return OperatorD(self.degree, _clean({k: v * s for k, v in self.entries.items()}))

    def shift(self, k):
        return OperatorD(self.degree, {key: v.shift(k) for key, v in self.entries.items()}, self.label)

    def at_hbar_one(self):
        return {key: v.at_hbar_one() for key, v in self.entries.items()}

    def to_json(self):
        parts = enumerate_partitions(self.degree)
        return {
            str(g): {str(gp): self[(g, gp)].to_json() for gp in parts if self[(g, gp)]}
            for g in parts
        }


def _clean(entries):
    return {k: v for k, v in entries.items() if v}


def identity_operator(d):
    return OperatorD(d, {(g, g): HLaurent({0: ONE}) for g in enumerate_partitions(d)}, "id")


def cut_and_join(delta, d, parity_gate=False):
    """D(Δ, ħ) with entries z_Γ'(q,t) ħ^{d+l(Γ')-l(Δ)-l(Γ)} MH_0(Γ', Δ, Γ).

    The three-point number is the λ-sum itself, kept even when the
    ramification sum is odd (the ħ exponent then is odd too).  With
    ``parity_gate`` those entries are zeroed as in the gated ``mh``; that
    variant breaks the eigen, closure and wave-equation identities for d >= 2.
    """
    delta = Partition(delta)
    if delta.weight != d or d < 1:
        raise ValueError(f"Δ={delta} must be a partition of d={d} >= 1")
    parts = enumerate_partitions(d)
    entries = {}
    for gp in parts:
        zg = z_qt(gp)
        for g in parts:
            if parity_gate:
                val = mh(0, d, (gp, delta, g)).value
            else:
                val = character_sum(0, d, (gp, delta, g))
            if val:
                e = d + len(gp) - len(delta) - len(g)
                entries[(g, gp)] = HLaurent({e: zg * val})
    return OperatorD(d, entries, delta)


def apply(op, f):
    """Matrix action on ``{Γ': HLaurent}`` (coefficients of p_Γ')."""
    degrees = {Partition(k).weight for k in f}
    if degrees and degrees != {op.degree}:
        raise ValueError(f"degree mismatch: operator degree {op.degree}, vector {degrees}")
    out = {}
    for (g, gp), v in op.entries.items():
        x = f.get(gp)
        if x:
            out[g] = out[g] + v * x if g in out else v * x
    return {k: v for k, v in out.items() if v}


def compose(a, b):
    """Operator product a ∘ b."""
    if a.degree != b.degree:
        raise ValueError("degree mismatch")
    out = {}
    by_row = {}
    for (g2, gp), v in b.entries.items():
        by_row.setdefault(g2, []).append((gp, v))
    for (g, g2), u in a.entries.items():
        for gp, v in by_row.get(g2, ()):
            key = (g, gp)
            out[key] = out[key] + u * v if key in out else u * v
    return OperatorD(a.degree, _clean(out))


def normalized_operator(delta, d, parity_gate=False):
    """D̂(Δ, ħ) = ħ^{-d+l(Δ)} D(Δ, ħ)."""
    delta = Partition(delta)
    return cut_and_join(delta, d, parity_gate).shift(-d + len(delta))


def genus_expanded_J(lam):
    """J_λ(x; q, t, ħ) = Σ_Δ ħ^{-d-l(Δ)} a_λ(Δ) p_Δ as ``{Δ: HLaurent}``."""
    lam = Partition(lam)
    d = lam.weight
    row = macdonald_table(d).a[lam]
    return {dl: HLaurent({-d - len(dl): v}) for dl, v in row.items() if v}


def eigen_sides(delta, lam, parity_gate=False, normalized=False):
    """(D(Δ,ħ) J_λ(ħ), eigenvalue · J_λ(ħ)).

    The eigenvalue is ħ^{d-l(Δ)} a_λ(Δ); with ``normalized`` it is divided by
    dim λ.
    """
    delta, lam = Partition(delta), Partition(lam)
    d = lam.weight
    if delta.weight != d:
        raise ValueError("|Δ| must equal |λ|")
    tab = macdonald_table(d)
    Jh = genus_expanded_J(lam)
    lhs = apply(cut_and_join(delta, d, parity_gate), Jh)
    ev = tab.a[lam][delta]
    if normalized:
        ev = ev / tab.dim[lam]
    eig = HLaurent({d - len(delta): ev})
    rhs = {k: v * eig for k, v in Jh.items()}
    return lhs, {k: v for k, v in rhs.items() if v}


def verify_eigen(delta, lam, parity_gate=False, normalized=False):
    lhs, rhs = eigen_sides(delta, lam, parity_gate, normalized)
    return lhs == rhs


def closure_sides(delta1, delta2, parity_gate=False, constants=None):
    """(D(Δ1)D(Δ2), Σ_Δ3 ħ^{d-l1-l2+l3} C_{Δ1Δ2}^{Δ3} D(Δ3))."""
    from .classalgebra import structure_constants

    delta1, delta2 = Partition(delta1), Partition(delta2)
    d = delta1.weight
    if delta2.weight != d:
        raise ValueError("|Δ1| must equal |Δ2|")
    C = constants if constants is not None else structure_constants(d, parity_gate).C
    lhs = compose(cut_and_join(delta1, d, parity_gate), cut_and_join(delta2, d, parity_gate))
    rhs = OperatorD(d, {})
    for d3 in enumerate_partitions(d):
        coef = C[(delta1, delta2, d3)]
        if coef:
            term = cut_and_join(d3, d, parity_gate).scale(coef)
            rhs = rhs + term.shift(d - len(delta1) - len(delta2) + len(d3))
    return lhs, rhs


def verify_closure(delta1, delta2, parity_gate=False):
    lhs, rhs = closure_sides(delta1, delta2, parity_gate)
    return lhs == rhs


def classical_cut_and_join_matrix(d):
    """Σ_{k,l>=1} [kl p_{k+l} ∂_k ∂_l + (k+l) p_k p_l ∂_{k+l}] on the degree-d p-basis.

    Returns ``{(Γ, Γ'): Fraction}``, coefficient of p_Γ in D p_Γ'.
    """
    if d < 2:
        raise ValueError("classical operator is defined here for d >= 2")
    out = {}
    for gp in enumerate_partitions(d):
        m = gp.multiplicities()
        col = {}

        def add(parts, coef):
            key = Partition(parts)
            col[key] = col.get(key, 0) + coef

        base = list(gp)
        # join: two parts k, l merge into k + l
        for k in m:
            for l_ in m:
                mult = m[k] * (m[l_] - (1 if k == l_ else 0))
                if mult:
                    parts = list(base)
                    parts.remove(k)
                    parts.remove(l_)
                    add(parts + [k + l_], k * l_ * mult)
        # cut: a part n = k + l splits
        for n in m:
            for k in range(1, n):
                parts = list(base)
                parts.remove(n)
                add(parts + [k, n - k], n * m[n])
        for g, v in col.items():
            if v:
                out[(g, gp)] = Fraction(v)
    return out


def classical_proportionality(d):
    """κ with D((1^{d-2}2))|_{q=t, ħ=1} = κ · classical matrix, or None if not proportional.

    Raises if the specialized matrix still depends on t.
    """
    delta = Partition((2,) + (1,) * (d - 2))
    op = cut_and_join(delta, d)
    at_one = {}
    for key, v in op.at_hbar_one().items():
        w = v.subs_q_eq_t()
        if not w.is_constant():
            raise ValueError(f"entry {key} depends on t after q := t: {w}")
        if w:
            at_one[key] = w.to_fraction()
    ref = classical_cut_and_join_matrix(d)
    if set(at_one) != set(ref):
        return None
    ratios = {at_one[k] / ref[k] for k in ref}
    return ratios.pop() if len(ratios) == 1 else None
