"""Where the isolatedness criterion fails, build an explicit singular curve
through the fiber over 0 and confirm it with the numerical singularity test.

Run with ``python demos/isolated_singularities.py``.
"""
import numpy as np

from polarweight import families as fam
from polarweight.mixed import evaluate
from polarweight.numerics import (g1_singular_family, g2_singular_family, polar_action,
                                  search_singular_points, singularity_test)
from polarweight.weights import compute_weights

for kind, a in [("g1", (2, 2)), ("g1", (1, 2)), ("g1", (2, 1, 2, 1)),
                ("g2", (2, 3)), ("g2", (2, 1)), ("g2", (1, 5, 1))]:
    f = fam.g1(a) if kind == "g1" else fam.g2(a)
    iso = fam.isolated_g1(a) if kind == "g1" else fam.isolated_g2(a)
    print(f"{kind}{a}: f = {f}")
    print("  criterion says", "isolated" if iso else "non-isolated")
    if not iso:
        make = g1_singular_family if kind == "g1" else g2_singular_family
        for phi in (0.0, 1.0):
            z = make(a, phi)
            res = singularity_test(f, z)
            print(f"  witness at phi={phi}: |f(z)|={abs(evaluate(f, z)):.1e}"
                  f"  singular={res.singular}  |alpha|={abs(res.alpha):.6f}")
    search = search_singular_points(f, compute_weights(f), starts=4, seed=0)
    print(f"  blind search: {len(search.witnesses)} witnesses,"
          f" best residual {search.best_residual:.2e}")

# The sigma-twisted verdict factors over the cycles of the permutation.
rep = fam.isolated_sigma_twisted_report((1, 0, 3, 2), (2, 2, 1, 2))
print("\nsigma = (1 2)(3 4), a = (2,2,1,2):", rep)

# The radial action moves a witness along the singular locus.
W = compute_weights(fam.g1((1, 2)))
z = g1_singular_family((1, 2), 0.4)
print("radial orbit of a witness stays singular:",
      all(singularity_test(fam.g1((1, 2)), polar_action(W, r, 1.0, z)).singular
          for r in np.linspace(0.2, 5, 9)))
