"""Find an explicit N past which D_k(r,t;n) >= D_k(r+1,t;n) holds for every n.

The effective inequality compares a lower bound for the gap between adjacent
residues against the total error.  The scan stops once that inequality has
held, with growing margin, across a long window and the growth rates of the
two sides guarantee it keeps holding.

Run:  python demos/threshold_search.py
"""
from kregular import EffectiveParams, find_N, inequality_check

k, t, delta = 4, 2, 2.8
res = find_N(k, t, delta)
cert = res.certificate
print(f"k={k} t={t} delta={delta}:  N = {res.N}")
print(f"  clean window {cert.window_start}..{cert.window_end}, margins increasing: {cert.margins_increasing}")
print("  exponential growth rates: " + ", ".join(f"{name}={val:.4f}" for name, val in cert.rates.items()))

for n in (res.N, res.N + 1):
    b = inequality_check(EffectiveParams(k, t, 1, delta, n))
    print(f"\n  n={n}: holds={b.holds}  log(lhs/rhs)={b.log_margin:+.3e}")
    print(f"    lhs {b.lhs.triple()}   rhs {b.rhs.triple()}")
    print("    E1, E2, E3 = " + ", ".join(e.triple() for e in b.errors[:3]))

print("\nweight conventions change N; 'reference' is the default:")
for conv in ("reference", "derived"):
    print(f"  {conv:9s} N = {find_N(k, t, delta, convention=conv).N}")
