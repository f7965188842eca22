"""The cusp-form pipeline and the search for witness primes Q.

f = 1/eta(12z)^2 carries a(12m-1) = p_2(m).  The telescoped f_m keeps
the a(ell^m n) stream off multiples of ell; multiplying by a power of
F_ell = eta(z)^(ell^2)/eta(ell^2 z) (congruent to 1 mod ell^j) yields a
form g on which vanishing Hecke output T_Q g == 0 (mod ell^j) signals a
prime Q with p_2(2 Q ell^m n + 2 delta) == 0 (mod ell^j) on the coprime
range.  The Hecke prefilter is finite-precision evidence only; every
candidate is re-verified directly against the p_2 table.
"""

import json

from growthcong import build_g, make_context, verify_sym, witness_search
from growthcong.treneer import pipeline_report

ctx = make_context(5, 1, 120)
print(f"context: ell={ctx.ell}, j={ctx.j}, m={ctx.m}, beta={ctx.beta}, "
      f"kappa={ctx.kappa}")

print("\npipeline congruence checks:")
report = pipeline_report(ctx)
for name, check in report["checks"].items():
    print(f"  {check['status']}: {name}")

g = build_g(ctx)
print("\ng =", g)

print("\nwitness search, primes Q == -1 (mod 720) up to 2000:")
candidates = witness_search(5, 1, 2000, 20)
for cand in candidates:
    recheck = verify_sym(cand.ell, cand.j, cand.q, 10)
    print(f"  Q={cand.q}: {cand.evidence} Hecke coefficients vanished; "
          f"direct check {recheck.status} "
          f"({recheck.tested} tested, {recheck.skipped} skipped)")
    print("   ", json.dumps(recheck.to_dict()["claim"]))
