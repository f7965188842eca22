"""Partition tables and conjugacy growth coefficients.

The number of conjugacy classes of word length n in the finitary
symmetric group is p(n); in the alternating group the coefficients obey
2*gamma_alt(2n) = p(n) + p_2(2n), where p_2 counts 2-colored partitions.
"""

from growthcong import GrowthTables, asymptotic_ratio, brute_force_p, partition_table

table = partition_table(100)
print("p(n) for n = 0..10:", [table[n] for n in range(11)])
print("p(100) =", table[100])
print("enumeration cross-check p(20):", brute_force_p(20), "==", table[20])

tables = GrowthTables(200)
print("\ngamma_sym(n) = p(n):", [tables.gamma_sym(n) for n in range(8)])
print("gamma_alt(n):        ", [tables.gamma_alt(n) for n in range(8)])

report = tables.check_eq7(100)
print("\nidentity 2*gamma_alt(2n) = p(n) + p_2(2n):", report.status,
      f"({report.tested} values)")

print("\nHardy-Ramanujan ratio p(n)*4n*sqrt(3)/e^(pi*sqrt(2n/3)):")
for n in (100, 500, 2000):
    print(f"  n={n:5d}: {asymptotic_ratio(n):.6f}")
