"""Seeded numerical checks of the defining identities, and what happens
when a weight is wrong.

Run with ``python demos/numerical_identities.py``.
"""
from dataclasses import replace

from polarweight import families as fam
from polarweight.numerics import SampleConfig, enumerate_fiber_dim1, run_checks
from polarweight.weights import compute_weights

cfg = SampleConfig(count=500, seed=0, tol=1e-9)
f = fam.cyclic((2, 3, 5), (1, 1, 1))
W = compute_weights(f)
print("f =", f)
for rep in run_checks(f, W, cfg):
    print(f"  {rep.name:20s} {rep.max_relative_residual:.2e}  {'ok' if rep.passed else 'FAIL'}")

bad = replace(W, m_p=W.m_p + 1)
print("with m_p off by one:")
for rep in run_checks(f, bad, cfg):
    print(f"  {rep.name:20s} {rep.max_relative_residual:.2e}  {'ok' if rep.passed else 'FAIL'}")

# In one variable the fiber of c z^a zbar^b is a - b points permuted
# cyclically by the monodromy.
en = enumerate_fiber_dim1(1 + 1j, 5, 2)
print("\nfiber of (1+i) z^5 zbar^2 = 1:", [f"{p:.3f}" for p in en.points])
print("monodromy permutation", en.permutation, " zeta", en.zeta)
