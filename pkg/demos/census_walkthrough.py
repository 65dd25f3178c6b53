"""Exhaustive comparison of all residue pairs for small n.

A weak failure is D_k(r,t;n) < D_k(s,t;n) with r < s; a strict failure also
counts ties.  Weak failures only occur for distinct-part partitions (k = 2)
with n <= 8, and strict ones die out by n = 16 apart from a few equality
families that persist.

Run:  python demos/census_walkthrough.py
"""
from kregular import census, stable_patterns

rep = census(range(2, 11), range(2, 11), 300)
print(f"weak failures:   {len(rep.weak_counterexamples)}")
print(f"strict failures: {len(rep.strict_counterexamples)}")
for k, t, r, s, n in rep.weak_counterexamples[:6]:
    print(f"  k={k} t={t}: D({r}) < D({s}) at n={n}")
print("verdicts:", ", ".join(f"{name}={ok}" for name, ok in rep.verdicts.items()))

late = [c for c in rep.strict_counterexamples if c[4] > 16]
print(f"strict failures with n > 16: {len(late)}")

print("\nequality families D(t-1) = D(t) at small n:")
for row in stable_patterns(range(4, 8)).rows[:8]:
    print(f"  k={row['k']} t={row['t']} n={row['n']}: D={row['D_r']}")
