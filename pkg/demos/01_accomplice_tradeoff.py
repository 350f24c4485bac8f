"""
Bob's measurement angle as a dial between two fidelities
=========================================================

Alice teleports a qubit to Charlie through a shared GHZ state, and Bob, who
holds the third qubit, must measure it before Charlie can finish.  Bob measures
in the basis ``sin(nu)|0> + cos(nu)|1>`` and its orthogonal partner.  Whatever
he learns about the input he also destroys for Charlie, so ``nu`` trades
Bob's own guess of the state against Charlie's copy.

This script tabulates both averages over ``nu`` with and without Z noise.
"""

import numpy as np

from tripartite import BlochAngles, ChannelParams, NoiseKind, bob_fidelities, charlie_average

probe = BlochAngles(0.0, 0.0)  # averages do not depend on it
nus = np.linspace(0, np.pi / 2, 9)

for kt in (0.0, 0.1, 0.5):
    ch = ChannelParams(NoiseKind.Z if kt else NoiseKind.NONE, kt)
    print(f"\n{ch.kind.value} noise, kappa t = {kt}")
    print("   nu     Charlie   Bob (m=1)")
    for nu in nus:
        fc = charlie_average(ch, nu)
        fb = bob_fidelities(probe, ch, nu, 1).average
        print(f"  {nu:5.3f}   {fc:.5f}   {fb:.5f}")

# %%
# At ``nu = pi/4`` Bob learns nothing (1/2) and Charlie gets a perfect copy
# when there is no noise.  At ``nu = 0`` Bob and Charlie both sit at the
# classical limit 2/3.  Z noise lowers Charlie's curve but leaves Bob's
# conditional fidelity untouched: Z flips never change Bob's outcome
# statistics, so the gap between the two shrinks toward ``sin^2(2 nu)/6``
# as ``kappa t`` grows.
