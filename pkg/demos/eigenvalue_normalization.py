"""Compare D(Δ) J_λ against the two candidate eigenvalues: the raw
coefficient a_λ(Δ) and a_λ(Δ) divided by dim_λ = a_λ(1^d)."""

from itertools import product

from mhnumbers import cutjoin as cj
from mhnumbers.partitions import enumerate_partitions

for d in range(1, 5):
    raw = norm = total = 0
    for dl, lam in product(enumerate_partitions(d), repeat=2):
        total += 1
        raw += cj.verify_eigen(dl, lam)
        norm += cj.verify_eigen(dl, lam, normalized=True)
    print(f"d={d}: raw eigenvalue {raw}/{total}, normalized {norm}/{total}")
