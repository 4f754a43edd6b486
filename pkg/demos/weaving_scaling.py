# How the weaving index grows with system size, family by family.  The
# closed forms stay cheap out to N in the thousands, far past anything a
# density matrix could reach.

from corrweave import cf_scaling_sweep

SIZES = [2 ** e for e in range(3, 13)]  # 8 .. 4096


def show(family, **kwargs):
    points = cf_scaling_sweep(family, SIZES, **kwargs)
    norm = points[0].normalization
    print(f"{family}  (normalized by {norm})")
    for p in points:
        print(f"  N={p.n:5d}  weaving={p.weaving:14.4f}  "
              f"coefficient={p.coefficient:.6f}")
    print()


# bell-product is exactly linear: one bit per party, coefficient 1
show("bell-product")

# ghz and classical grow like N log N; their indices differ by exactly N-1
show("ghz")
show("classical")

# half-filled Dicke states weave quadratically
show("dicke-half")

# the two-branch family interpolates: at a = 1/sqrt(2) it meets ghz
show("a-family", a=0.6)
