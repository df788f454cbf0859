"""Weights, strata and Milnor fiber invariants for a few classical inputs.

Run with ``python demos/invariants_tour.py``.
"""
from polarweight import families as fam
from polarweight.invariants import analyze, brieskorn_divisor
from polarweight.mixed import parse

# The trefoil z1^3 + z2^2: a holomorphic Brieskorn polynomial is polar
# weighted with p = q, so the classical answer must come out.
f = fam.brieskorn((3, 2))
W, strat, inv = analyze(f)
print("f =", f)
print("radial", W.q, W.m_r, " polar", W.p, W.m_p)
for st in strat.full_strata:
    print(f"  stratum {st.label:6s} d_I={st.d_I}  m_p,I={st.m_p_I}  exponent={st.zeta_exponent}")
print("chi =", inv.chi, " zeta =", inv.zeta, " divisor =", inv.divisor)
print("matches (-1)^n times the Brieskorn divisor:",
      inv.divisor == (-1) ** f.n * brieskorn_divisor((3, 2)))

# A genuinely mixed surface: the cyclic polynomial with d = 30 - 1 = 29.
g = fam.cyclic((2, 3, 5), (1, 1, 1))
W, strat, inv = analyze(g)
print("\ng =", g)
print("v =", [str(x) for x in W.v], " m_p =", W.m_p)
print("zeta =", inv.zeta, " b2 =", inv.middle_betti, " P2 =", inv.top_charpoly)

# Anything the parser accepts works the same way.
h = parse("z1^3*zbar2 + z2^4*zbar3 + z3^2")
W, strat, inv = analyze(h)
print("\nh =", h)
print("chi =", inv.chi, " zeta =", inv.zeta, " connectivity =", inv.connectivity)
