# A CNOT ladder converts correlation order without changing the amount:
# start from a|00> + sqrt(1-a^2)|11>, keep appending a fresh qubit and
# copying into it with CNOT.  The top-order genuine correlations stay at
# 2*h2(a^2) bits while the order k climbs.

import math

import numpy as np

from corrweave import (DensityState, KrausChannel, apply_channel,
                       binary_entropy, make_a_family, profile,
                       tensor_product)

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)
ZERO = DensityState.from_amplitudes([1.0, 0.0], (2,))


def main():
    for a in (0.3, 0.6, 1 / math.sqrt(2)):
        target = 2.0 * binary_entropy(a * a)
        print(f"a = {a:.6f}   2*h2(a^2) = {target:.6f} bits")
        state = make_a_family(2, a)
        for k in range(2, 6):
            top = profile(state).genuine_at(k)
            print(f"  k={k}: genuine({k}) = {top:.12f}")
            # append |0> and copy the last qubit into it
            state = apply_channel(tensor_product(state, ZERO),
                                  KrausChannel([CNOT], (k - 1, k)))
        print()


if __name__ == "__main__":
    main()
