"""Verifying partition congruences and prospecting for new ones.

Every verification returns a structured report: the claim, the tested
range, counterexamples (none, hopefully), and provenance.
"""

from growthcong import (
    scan_progressions,
    example_progression_block,
    verify_examples_11_12,
    verify_ramanujan,
)

print("Classical congruences p(ell^j n + delta) == 0:")
for ell, j in ((5, 1), (5, 2), (7, 2), (11, 1)):
    print(" ", verify_ramanujan(ell, j, 2000).summary_line())

print("\n2-colored partition congruences behind the growth examples:")
for report in verify_examples_11_12(1000):
    print(" ", report.summary_line())

print("\nExplicit gamma_alt progressions (small index ranges):")
for report in example_progression_block():
    print(" ", report.summary_line())

print("\nScanner: progressions A*n+B with p(A*n+B) == 0 (mod 5), A <= 10:")
for claim in scan_progressions("p", 5, 10, 500):
    print("  conjectural:", claim.describe())
