"""Named identity-verification suites used by ``mhnumbers verify``.

Each suite returns a :class:`CheckResult` with the equation it checks, how many
instances were tried and a list of the failing instances.  Suites are
independent of one another, so the runner may execute them in parallel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from . import classalgebra as ca
from . import cutjoin as cj
from . import hurwitz as hw
from . import wavefn as wf
from .macdonald import (
    character_MN,
    jack_J,
    jack_limit,
    macdonald_table,
    q_equals_t_character,
)
from .partitions import Partition, enumerate_partitions, j, j_AB, z_qt
from .qtfield import ONE, ZERO, parse, q, serialize, t
from .symfun import inner_qt

ETA_GRID = ((1, 1), (1, 2), (2, 1), (2, 3))


@dataclass
class CheckResult:
    name: str
    equation: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    reported_only: bool = False

    @property
    def ok(self):
        return self.reported_only or not self.failures

    def record(self, passed, label):
        self.checked += 1
        if not passed:
            self.failures.append(label)

    def to_json(self):
        return {
            "name": self.name,
            "equation": self.equation,
            "checked": self.checked,
            "failed": len(self.failures),
            "ok": self.ok,
            "reported_only": self.reported_only,
            "failures": self.failures[:50],
            "notes": self.notes,
        }


def _cap(max_degree, limit):
    return range(1, min(max_degree, limit) + 1)


def check_orthogonality(max_degree, seed):
    res = CheckResult("orthogonality", "<J_λ,J_μ> = δ j_λ; Σ_Δ a_λ z_Δ a_μ = δ j_λ; Σ_λ a_λ a_λ / j_λ = δ / z_Δ")
    for d in _cap(max_degree, 6):
        tab = macdonald_table(d)
        parts = tab.partitions
        for lam, mu in product(parts, repeat=2):
            want = j(lam) if lam == mu else 0
            res.record(inner_qt(tab.J_in_p[lam], tab.J_in_p[mu]) == want, f"<J_{lam},J_{mu}>")
            s = sum((tab.a[lam][dl] * z_qt(dl) * tab.a[mu][dl] for dl in parts), ZERO)
            res.record(s == want, f"first lemma {lam},{mu}")
        for d1, d2 in product(parts, repeat=2):
            s = sum((tab.a[lam][d1] * tab.a[lam][d2] / j(lam) for lam in parts), ZERO)
            res.record(s == (ONE / z_qt(d1) if d1 == d2 else 0), f"second lemma {d1},{d2}")
    return res


def check_closed_forms(max_degree, seed):
    res = CheckResult("mh-closed-forms", "MH_0((d),(d)) = (1-t^d)/(d(1-q^d)); MH_0((1)) = (1-t)/(1-q)")
    for d in _cap(max_degree, 6):
        want = (1 - t**d) / ((1 - q**d) * d)
        res.record(hw.mh(0, d, ((d,), (d,))).value == want, f"d={d}")
    res.record(hw.mh(0, 1, ((1,),)).value == (1 - t) / (1 - q), "d=1 single point")
    return res


def check_genus_reduction(max_degree, seed):
    res = CheckResult("genus-reduction", "MH_h(..) = Σ_Δ MH_{h-1}(.., Δ, Δ) z_Δ(q,t)")
    for h, d in product((1, 2), _cap(max_degree, 4)):
        parts = enumerate_partitions(d)
        for m in range(3):
            for profs in product(parts, repeat=m):
                res.record(hw.verify_genus_reduction(h, d, profs), f"h={h} d={d} {profs}")
    return res


def check_cutting(max_degree, seed):
    res = CheckResult("cutting", "MH_{h1+h2}(Δ_1..Δ_k) = Σ_Δ MH_{h1}(..,Δ) z_Δ MH_{h2}(Δ,..)")
    for d in _cap(max_degree, 4):
        for profs in product(enumerate_partitions(d), repeat=3):
            for split in (1, 2):
                res.record(hw.verify_cutting(0, 0, d, profs, split), f"d={d} {profs} split {split}")
    return res


def check_eigen(max_degree, seed):
    res = CheckResult("eigen", "D(Δ,ħ) J_λ(ħ) = ħ^{d-l(Δ)} a_λ(Δ) J_λ(ħ)")
    for d in _cap(max_degree, 5):
        for dl, lam in product(enumerate_partitions(d), repeat=2):
            res.record(cj.verify_eigen(dl, lam), f"Δ={dl} λ={lam}")
    return res


def check_eigen_normalized(max_degree, seed):
    res = CheckResult("eigen-normalized", "D(Δ,ħ) J_λ(ħ) = ħ^{d-l(Δ)} (a_λ(Δ)/dim λ) J_λ(ħ)")
    for d in _cap(max_degree, 5):
        for dl, lam in product(enumerate_partitions(d), repeat=2):
            res.record(cj.verify_eigen(dl, lam, normalized=True), f"Δ={dl} λ={lam}")
    return res


def check_closure(max_degree, seed):
    res = CheckResult("closure", "D(Δ1)D(Δ2) = Σ ħ^{d-l1-l2+l3} C_{Δ1Δ2}^{Δ3} D(Δ3)")
    for d in _cap(max_degree, 4):
        parts = enumerate_partitions(d)
        for a, b in product(parts, repeat=2):
            res.record(cj.verify_closure(a, b), f"Δ1={a} Δ2={b}")
            na, nb = cj.normalized_operator(a, d), cj.normalized_operator(b, d)
            res.record(cj.compose(na, nb) == cj.compose(nb, na), f"D̂({a}), D̂({b}) commute")
    return res


def check_q_equals_t(max_degree, seed):
    res = CheckResult("q-equals-t", "a_λ(Δ)(t,t) z_Δ / ∏(1-t^hook) = χ_λ(Δ); C at q=t = class products")
    for d in _cap(max_degree, 6):
        for lam, dl in product(enumerate_partitions(d), repeat=2):
            v = q_equals_t_character(lam, dl)
            res.record(v.is_constant() and v.to_fraction() == character_MN(lam, dl), f"χ_{lam}({dl})")
    for d in _cap(max_degree, 5):
        C = ca.structure_constants(d).C
        parts = enumerate_partitions(d)
        for a, b in product(parts, repeat=2):
            bf = ca.brute_force_class_product(a, b, d)
            for c in parts:
                v = C[(a, b, c)].subs_q_eq_t()
                good = v.is_constant() and v.to_fraction() == bf.get(c, 0)
                res.record(good, f"C_{a},{b}^{c} at q=t")
    return res


def check_classical(max_degree, seed):
    res = CheckResult("classical-cut-join", "D((1^{d-2}2))|_{q=t,ħ=1} = κ · classical operator, one κ")
    kappas = {}
    for d in range(2, min(max_degree, 5) + 1):
        kappas[d] = cj.classical_proportionality(d)
        res.record(kappas[d] is not None, f"d={d} proportional")
    vals = {k for k in kappas.values() if k is not None}
    res.record(len(vals) == 1 and vals <= {Fraction(1, 2), Fraction(2)}, f"κ values {sorted(map(str, vals))}")
    res.notes.append({str(d): str(k) for d, k in kappas.items()})
    return res


def check_jack(max_degree, seed):
    res = CheckResult("jack-limits", "lim J_λ / A^{|λ|} = J^{(B/A)}_λ; lim j_λ / (1-r)^{2|λ|} = cell product")
    for A, B in ETA_GRID:
        alpha = Fraction(B, A)
        res.record(jack_limit((2,), A, B) == {Partition((1, 1)): 1, Partition((2,)): alpha}, f"J_(2) ({A},{B})")
        res.record(jack_limit((1, 1), A, B) == {Partition((1, 1)): 1, Partition((2,)): -1}, f"J_(1,1) ({A},{B})")
        for d in _cap(max_degree, 5):
            for lam in enumerate_partitions(d):
                res.record(jack_limit(lam, A, B) == jack_J(lam, alpha), f"J_{lam} ({A},{B})")
                try:
                    j_AB(lam, A, B)
                    res.record(True, f"j_{lam} ({A},{B})")
                except ArithmeticError as exc:
                    res.record(False, f"j_{lam} ({A},{B}): {exc}")
    return res


def check_wave_initial(max_degree, seed):
    res = CheckResult("wave-initial-values", "Φ_0{ħ||p} and Φ_0{ħ||p',p} closed forms; Cauchy identity")
    for d in _cap(max_degree, 5):
        res.record(wf.phi(0, d, ())[()] == wf.perfect0_single(d), f"single d={d}")
        res.record(wf.phi(0, d, (), 1)[()] == wf.perfect0_pair(d), f"pair d={d}")
        res.record(wf.verify_cauchy(d), f"Cauchy d={d}")
    return res


def _wave_cases(max_degree):
    for d in _cap(max_degree, 3):
        parts = enumerate_partitions(d)
        for n in (1, 2):
            for deltas in product(parts, repeat=n):
                if n == 2 and deltas[0] >= deltas[1]:
                    continue
                for k in (0, 1):
                    yield d, deltas, k


def check_pde(max_degree, seed):
    res = CheckResult("wave-equation", "∂Φ/∂u_i = D(Δ_i,ħ)Φ; Φ = ∏ exp(u_i D(Δ_i)) Φ|_{u=0}")
    for d, deltas, k in _wave_cases(max_degree):
        series = wf.phi(0, d, deltas, k, 2)
        for i in range(len(deltas)):
            res.record(wf.verify_pde(series, i), f"d={d} Δ={deltas} k={k} i={i}")
        res.record(wf.exp_action(0, d, deltas, k, 2) == series, f"exp d={d} Δ={deltas} k={k}")
        res.record(wf.phi_mh_sum(0, d, deltas, k, 2) == series, f"MH-sum d={d} Δ={deltas} k={k}")
    return res


def check_frobenius(max_degree, seed):
    res = CheckResult("frobenius", "ε_λ∘ε_μ = δ ε_λ; <ε_λ,ε_μ> = δ dim²/j; T = <x∘y,z>; unit; associativity")
    for d in _cap(max_degree, 5):
        parts = enumerate_partitions(d)
        tab = macdonald_table(d)
        eps = {lam: ca.idempotent(lam) for lam in parts}
        zero = ca.CentralElement(d, {})
        for lam, mu in product(parts, repeat=2):
            res.record(ca.circ(eps[lam], eps[mu]) == (eps[lam] if lam == mu else zero), f"ε_{lam}∘ε_{mu}")
            want = tab.dim[lam] ** 2 / j(lam) if lam == mu else 0
            res.record(ca.bilinear_qt(eps[lam], eps[mu]) == want, f"<ε_{lam},ε_{mu}>")
        unit = ca.basis_element((1,) * d)
        for a in parts:
            res.record(ca.circ(unit, ca.basis_element(a)) == ca.basis_element(a), f"unit·C_{a}")
    for d in _cap(max_degree, 4):
        parts = enumerate_partitions(d)
        for a, b, c in product(parts, repeat=3):
            x, y, w = (ca.basis_element(p) for p in (a, b, c))
            T = ca.trilinear_qt(x, y, w)
            res.record(T == ca.bilinear_qt(ca.circ(x, y), w) == ca.bilinear_qt(x, ca.circ(y, w)), f"T({a},{b},{c})")
            res.record(ca.circ(ca.circ(x, y), w) == ca.circ(x, ca.circ(y, w)), f"assoc {a},{b},{c}")
    return res


def check_cohomology(max_degree, seed):
    res = CheckResult("eta-idempotents", "ε_λ(A|B) = lim ε_λ (1-r)^{|λ|}; <ε_λ(A|B),ε_μ(A|B)> = δ/j_λ(A|B); iso")
    for d in _cap(max_degree, 4):
        for A, B in ETA_GRID:
            ok, report = ca.verify_cohomology_iso(d, A, B)
            res.record(ok, f"d={d} (A,B)=({A},{B}): {'; '.join(report[:2])}")
    return res


def check_disconnected(max_degree, seed):
    res = CheckResult("disconnected", "MH_0^{1-d,d}((1^d)) = (1/d!)((1-t)/(1-q))^d")
    for d in _cap(max_degree, 4):
        want = ((1 - t) / (1 - q)) ** d / factorial(d)
        res.record(hw.mh_disconnected(0, d, ((1,) * d,), 1 - d) == want, f"d={d}")
    return res


def check_exponential(max_degree, seed):
    res = CheckResult(
        "exponential-relation",
        "disconnected numbers = exp(connected generating function)",
        reported_only=True,
    )
    for d in _cap(max_degree, 3):
        for k in (1, 2):
            for key, (lhs, rhs) in hw.exponential_relation(0, d, k).items():
                res.record(lhs == rhs, f"d={d} {key[0]} g={key[1]}")
    return res


def _random_ratqt(rng):
    def poly():
        out = ZERO
        for _ in range(rng.randint(1, 3)):
            out = out + rng.randint(-3, 3) * q ** rng.randint(0, 2) * t ** rng.randint(0, 2)
        return out

    num, den = poly(), poly()
    while not den:
        den = poly()
    return num / den


def check_field_axioms(max_degree, seed):
    res = CheckResult("field-axioms", "ring axioms and parse∘serialize on random elements of Q(q,t)")
    rng = random.Random(seed)
    res.notes.append({"seed": seed})
    for n in range(60):
        a, b, c = (_random_ratqt(rng) for _ in range(3))
        res.record((a + b) + c == a + (b + c), f"#{n} add assoc")
        res.record((a * b) * c == a * (b * c), f"#{n} mul assoc")
        res.record(a * (b + c) == a * b + a * c, f"#{n} distributive")
        res.record(parse(serialize(a)) == a, f"#{n} round trip")
        if a:
            res.record(a * a.inverse() == ONE, f"#{n} inverse")
    return res


SUITES = {
    "field-axioms": check_field_axioms,
    "orthogonality": check_orthogonality,
    "mh-closed-forms": check_closed_forms,
    "genus-reduction": check_genus_reduction,
    "cutting": check_cutting,
    "eigen": check_eigen,
    "eigen-normalized": check_eigen_normalized,
    "closure": check_closure,
    "q-equals-t": check_q_equals_t,
    "classical-cut-join": check_classical,
    "jack-limits": check_jack,
    "wave-initial-values": check_wave_initial,
    "wave-equation": check_pde,
    "frobenius": check_frobenius,
    "eta-idempotents": check_cohomology,
    "disconnected": check_disconnected,
    "exponential-relation": check_exponential,
}


def run_suite(name, max_degree, seed):
    return SUITES[name](max_degree, seed)
