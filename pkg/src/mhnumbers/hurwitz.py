"""Macdonald-Hurwitz numbers and the cutting / genus-reduction identities.

``mh`` follows the definition literally: the λ-sum is returned only when the
Riemann-Hurwitz relation yields an integer source genus, and 0 otherwise.
``character_sum`` is the bare λ-sum with no genus bookkeeping.  The two agree
whenever the parity condition holds; when it fails the bare sum is in general
*not* zero for q != t, which is why both are exposed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod

from .macdonald import character_MN, classical_dim, macdonald_table
from .partitions import Partition, enumerate_partitions, j, z, z_qt
from .qtfield import ONE, ZERO

__all__ = [
    "MHResult",
    "genus_from_profile",
    "character_sum",
    "mh",
    "mh_disconnected",
    "disconnected_components",
    "verify_genus_reduction",
    "verify_cutting",
    "cutting_sides",
    "classical_hurwitz",
    "exponential_relation",
]


@dataclass(frozen=True)
class MHResult:
    value: object  # RatQT
    genus: int | None
    constraint_ok: bool

    def to_json(self):
        return {"value": str(self.value), "genus": self.genus, "constraint_ok": self.constraint_ok}


def _profiles(d, profiles):
    out = tuple(Partition(p) for p in profiles)
    for p in out:
        if p.weight != d:
            raise ValueError(f"profile {p} is not a partition of {d}")
    return out


def genus_from_profile(h, d, profiles):
    """Source genus from (2-2h)d - (2-2g) = Σ (d - l(Δ_i)); None on parity failure."""
    ram = sum(d - len(p) for p in profiles)
    twice = (2 - 2 * h) * d - ram
    if twice % 2:
        return None
    return 1 - twice // 2


@lru_cache(maxsize=None)
def _weights(d, h):
    tab = macdonald_table(d)
    return {lam: (tab.dim[lam] ** 2 / j(lam)) ** (1 - h) for lam in tab.partitions}


@lru_cache(maxsize=None)
def _normalized(d):
    tab = macdonald_table(d)
    return {lam: {dl: v / tab.dim[lam] for dl, v in tab.a[lam].items()} for lam in tab.partitions}


@lru_cache(maxsize=None)
def _character_sum(h, d, key):
    phi = _normalized(d)
    total = ZERO
    for lam, w in _weights(d, h).items():
        term = w
        for p in key:
            term = term * phi[lam][p]
            if not term:
                break
        total = total + term
    return total


def character_sum(h, d, profiles):
    """Σ_λ (dim²λ / j_λ)^{1-h} ∏_i a_λ(Δ_i)/dim λ, with no genus condition."""
    if d == 0:
        return ZERO
    key = tuple(sorted(_profiles(d, profiles)))
    return _character_sum(h, d, key)


def mh(h, d, profiles, require_nonneg_genus=False):
    """Connected Macdonald-Hurwitz number MH_h^{g,d}(Δ_1, ..., Δ_k).

    Negative genus is admitted unless ``require_nonneg_genus`` is set.
    """
    profiles = _profiles(d, profiles)
    if d == 0:
        return MHResult(ZERO, genus_from_profile(h, d, profiles), True)
    g = genus_from_profile(h, d, profiles)
    if g is None:
        return MHResult(ZERO, None, False)
    if require_nonneg_genus and g < 0:
        return MHResult(ZERO, g, True)
    return MHResult(character_sum(h, d, profiles), g, True)


# ---------------------------------------------------------------------------
# disconnected numbers


def _sub_multisets(part, weight):
    """Sub-multisets of ``part`` with the given weight, as (sub, remainder) pairs."""
    counts = sorted(Counter(part).items(), reverse=True)

    def rec(idx, left):
        if idx == len(counts):
            if left == 0:
                yield ()
            return
        val, mult = counts[idx]
        for take in range(min(mult, left // val), -1, -1):
            for rest in rec(idx + 1, left - take * val):
                yield (val,) * take + rest

    for sub in rec(0, weight):
        rem = Counter(part)
        rem.subtract(sub)
        yield Partition(sub), Partition(rem.elements())


def disconnected_components(d, profiles, max_components=None):
    """Unordered splittings of a cover into connected components.

    Yields tuples of components ``(d_i, (Δ_1^i, ..., Δ_k^i))`` in non-increasing
    order.  A component of degree 0 has MH = 0, so only d_i >= 1 is generated;
    the weight condition then forces every sub-profile to be non-empty.
    """
    profiles = tuple(Partition(p) for p in profiles)
    cap = d if max_components is None else max_components

    def rec(remaining, rem_profiles, bound, m):
        if remaining == 0:
            yield ()
            return
        if m == cap:
            return
        for di in range(min(remaining, bound[0]), 0, -1):
            choices = [list(_sub_multisets(p, di)) for p in rem_profiles]
            for pick in product(*choices):
                comp = (di, tuple(s for s, _ in pick))
                if comp > bound:
                    continue
                rest = tuple(r for _, r in pick)
                for tail in rec(remaining - di, rest, comp, m + 1):
                    yield (comp,) + tail

    top = (d, tuple(Partition((d + 1,)) for _ in profiles))  # larger than any component
    yield from rec(d, profiles, top, 0)


def mh_disconnected(h, d, profiles, g, max_components=None):
    """Disconnected number: Σ over component multisets of ∏ MH / |Aut|.

    Component genera must be non-negative and satisfy the per-component
    Riemann-Hurwitz relation (with the component degree), and 1 - g = Σ (1 - g_i).
    |Aut| is the product of factorials of multiplicities of identical components.
    """
    if d < 1:
        raise ValueError("disconnected numbers need d >= 1")
    profiles = _profiles(d, profiles)
    total = ZERO
    for comps in disconnected_components(d, profiles, max_components):
        genera = [genus_from_profile(h, di, subs) for di, subs in comps]
        if any(gi is None or gi < 0 for gi in genera):
            continue
        if sum(1 - gi for gi in genera) != 1 - g:
            continue
        aut = prod(factorial(m) for m in Counter(comps).values())
        val = ONE
        for di, subs in comps:
            val = val * mh(h, di, subs).value
            if not val:
                break
        if val:
            total = total + val / aut
    return total


def exponential_relation(h, d, k):
    """Compare disconnected numbers with exp(connected generating function).

    The generating function sums MH_h^{g,d'} ħ^{2g-2} X_{Δ_1}⋯X_{Δ_k} over
    connected data with d' <= d and g >= 0; monomials multiply by merging
    the partitions slot-wise.  Returns ``{(profiles, g): (assembled, from_exp)}``
    for every degree-d monomial where either side is non-zero.
    """
    conn = {}
    for dd in range(1, d + 1):
        parts = enumerate_partitions(dd)
        for profs in product(parts, repeat=k):
            res = mh(h, dd, profs, require_nonneg_genus=True)
            if res.constraint_ok and res.value:
                conn[(profs, 2 * res.genus - 2)] = res.value

    def mul(x, y):
        out = {}
        for (pa, ea), va in x.items():
            for (pb, eb), vb in y.items():
                deg = (pa[0].weight if pa else 0) + (pb[0].weight if pb else 0)
                if k and deg > d:
                    continue
                key = (tuple(Partition(u + v) for u, v in zip(pa, pb)), ea + eb)
                out[key] = out.get(key, ZERO) + va * vb
        return out

    if k == 0:
        raise ValueError("use k >= 1 so monomials track the degree")
    expo = {}
    power = {((Partition(()),) * k, 0): ONE}
    for m in range(1, d + 1):
        power = mul(power, conn)
        for key, v in power.items():
            profs, e = key
            if profs[0].weight == d:
                expo[key] = expo.get(key, ZERO) + v / factorial(m)

    report = {}
    for profs in product(enumerate_partitions(d), repeat=k):
        for gg in range(1 - d, d * d + 2):
            assembled = mh_disconnected(h, d, profs, gg)
            from_exp = expo.get((profs, 2 * gg - 2), ZERO)
            if assembled or from_exp:
                report[(profs, gg)] = (assembled, from_exp)
    return report


# ---------------------------------------------------------------------------
# identities


def _value(h, d, profiles, parity_gate):
    return mh(h, d, profiles).value if parity_gate else character_sum(h, d, profiles)


def verify_genus_reduction(h, d, profiles, parity_gate=True):
    """MH_h(Δ...) == Σ_Δ MH_{h-1}(Δ..., Δ, Δ) z_Δ(q,t)."""
    if h < 1:
        raise ValueError("genus reduction needs h >= 1")
    profiles = _profiles(d, profiles)
    lhs = _value(h, d, profiles, parity_gate)
    rhs = ZERO
    for dl in enumerate_partitions(d):
        rhs = rhs + _value(h - 1, d, profiles + (dl, dl), parity_gate) * z_qt(dl)
    return lhs == rhs


def cutting_sides(h1, h2, d, profiles, split_at, parity_gate=True):
    profiles = _profiles(d, profiles)
    if not 1 <= split_at < len(profiles):
        raise ValueError("split position must satisfy 1 <= l < k")
    left, right = profiles[:split_at], profiles[split_at:]
    lhs = _value(h1 + h2, d, profiles, parity_gate)
    rhs = ZERO
    for dl in enumerate_partitions(d):
        a = _value(h1, d, left + (dl,), parity_gate)
        if a:
            rhs = rhs + a * z_qt(dl) * _value(h2, d, (dl,) + right, parity_gate)
    return lhs, rhs


def verify_cutting(h1, h2, d, profiles, split_at, parity_gate=True):
    """Gluing two surfaces along Δ reproduces MH_{h1+h2}.

    With the gate, two-sided splits whose halves both fail parity are dropped;
    for four or more points that loses terms (e.g. d=2, four (2)'s, split 2|2).
    """
    lhs, rhs = cutting_sides(h1, h2, d, profiles, split_at, parity_gate)
    return lhs == rhs


def classical_hurwitz(h, d, profiles):
    """Burnside formula Σ_λ (dim/d!)^{2-2h} ∏ |C_Δ| χ_λ(Δ)/dim, an exact Fraction."""
    profiles = _profiles(d, profiles)
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        dm = classical_dim(lam)
        term = Fraction(dm, factorial(d)) ** (2 - 2 * h)
        for p in profiles:
            term *= Fraction(factorial(d), z(p)) * character_MN(lam, p) / dm
        total += term
    return total
