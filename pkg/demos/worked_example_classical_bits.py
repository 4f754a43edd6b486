# Five perfectly correlated bits: the mixture (1/2)(|00000><00000| +
# |11111><11111|).  Walk the correlation orders one by one and watch
# where the dependence lives.

from corrweave import make_classical, partial_trace, profile

state = make_classical(5)
prof = profile(state)

print("state: 5 perfectly correlated bits")
print("total correlations S(1->N):", prof.total, "bits")
print()
print(" k  dist(k)  genuine(k)")
for k in range(1, 6):
    g = "" if k == 1 else f"{prof.genuine_at(k):10.4f}"
    print(f"{k:2d} {prof.dist_at(k):8.4f}  {g}")

# The genuine vector (2, 1, 0, 1) says: two bits' worth of pairwise
# dependence, one of 3-partite, none of 4-partite, and a single bit of
# irreducibly 5-partite correlation.
print()
print("genuine orders:", [round(g, 10) for g in prof.genuine])

# Discard one bit and the leftover 4-bit state keeps exactly one bit of
# top-order (4-partite) correlation.
reduced = partial_trace(state, (0, 1, 2, 3))
prof4 = profile(reduced)
print("after tracing one bit, genuine(4) =", round(prof4.genuine_at(4), 10))
