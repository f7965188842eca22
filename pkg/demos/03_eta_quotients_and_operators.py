"""Eta-quotient expansions and the U/V/Hecke operator calculus.

Series live on an exponent lattice (1/grain)Z with a tracked truncation:
reading past the truncation raises instead of returning a silent zero.
"""

from growthcong import EtaQuotient, hecke, u_op, v_op
from growthcong.eta import cusp_order, divisors, expand, modularity_check

# 1/eta(12z)^2: the generating function of 2-colored partitions on 12Z-1
f_quotient = EtaQuotient(144, {12: -2})
series = expand(f_quotient, 24 * 60)
print("1/eta(12z)^2 =", series)

info = modularity_check(f_quotient)
print("weight:", info.weight, "| mod-24 conditions:",
      info.condition_delta, info.condition_inverse)

carrier = EtaQuotient(25, {1: 25, 25: -1})
F = expand(carrier, 24 * 12)
print("\neta(z)^25/eta(25z) =", F)
print("orders at the cusp denominators of level 25:",
      {c: str(cusp_order(carrier, c)) for c in divisors(25)})

print("\nF reduced mod 5 (congruent to 1):", F.reduce_mod(5))

a = expand(EtaQuotient(144, {12: -2}), 24 * 120)
stream = a.extract_progression(12, 11)  # the 2-colored counts p_2(m+1)
print("\ncoefficients a(12n+11):", stream)
print("U(2) takes every other one:", u_op(stream, 2))
print("V(3) dilates exponents:", v_op(u_op(stream, 2), 3))
print("Hecke T_7 at weight 3, trivial character:", hecke(a, 7, 3, 1))
