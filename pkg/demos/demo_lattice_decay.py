"""Walks on the integers: convolution powers flatten out and l^1 fixed
vectors vanish.

On a noncompact carrier there is no Haar probability to converge to.  For
the simple walk on Z the convolution powers pair against any fixed vector
with values that decay to zero (here checked exactly against binomial
coefficients), and the predual averaging operator truncated to a window has
trivial kernel at every size.
"""

import math
from fractions import Fraction

from muharmonic import l1_harmonic_triviality, simple_random_walk_z, weak_star_decay, z_point_mass

srw = simple_random_walk_z()
report = weak_star_decay(srw, [(0, 1.0)], 200)
vals = report.real_values()

print("P(S_n = 0) for the simple walk on Z (exact dyadic convolution):")
for n in (2, 10, 50, 100, 200):
    exact = Fraction(math.comb(n, n // 2), 4 ** (n // 2))
    print(f"   n = {n:3d}: computed {vals[n-1]:.12f}, binomial {float(exact):.12f}, "
          f"gap {abs(vals[n-1] - float(exact)):.1e}")
print("   the even-n sequence is strictly decreasing; odd powers cannot return.")

print("\nkernel of (I - averaging) on truncated windows [-L, L]:")
for L in (5, 20, 50):
    rep = l1_harmonic_triviality(srw, L)
    print(f"   L = {L:3d}: kernel rank {rep.kernel_rank}, "
          f"smallest singular value {rep.smallest_singular_value:.3e}")

deg = l1_harmonic_triviality(z_point_mass(0), 5)
print(f"\npoint mass at 0 (nothing moves): kernel rank {deg.kernel_rank} of "
      f"{2*5+1}, degenerate flag {deg.degenerate}")
print("Moving mass always kills the truncated kernel; only the identity law keeps it.")
