#!/usr/bin/env python3
"""Four independent routes to the same purity, side by side.

For the uniform OAM family behind a single centered aperture the purity
is available through:

1. the quadruple overlap sum over the renormalized input coefficients,
2. its symmetric rewrite (uniform weights, symmetric Gram matrix),
3. the Schmidt spectrum after orthonormalizing the diffracted modes,
4. angular-grid quadrature of the position-space wavefunctions.

Routes 1-3 share only the closed-form overlap matrix; route 4 never
touches mode space at all.
"""

import math

import numpy as np

from angular_qudits import (
    ApertureMask,
    grid_oracle,
    oam_coefficient_matrix,
    oam_overlap_matrix,
    oam_position_modes,
    purity,
    purity_symmetric,
    schmidt_oracle,
)

TWO_PI = 2 * math.pi

print(f"{'D':>3} {'alpha':>7} | {'quad sum':>12} {'symmetric':>12} "
      f"{'schmidt':>12} {'grid':>12} | {'max spread':>10}")
print("-" * 80)

worst = 0.0
for d in (3, 5, 7):
    for alpha in (0.6, 1.5, math.pi, 5.0):
        b = oam_overlap_matrix(d, alpha)
        c = np.full(d, 1 / math.sqrt(d))
        p1 = purity(c, b)
        p2 = purity_symmetric(b)
        p3 = schmidt_oracle(oam_coefficient_matrix(c), b, b).purity
        modes = oam_position_modes(d, ApertureMask(1, alpha, TWO_PI))
        p4 = grid_oracle(oam_coefficient_matrix(c), modes, modes, 2**14).purity
        spread = max(p1, p2, p3, p4) - min(p1, p2, p3, p4)
        worst = max(worst, spread)
        print(f"{d:>3} {alpha:>7.3f} | {p1:>12.9f} {p2:>12.9f} "
              f"{p3:>12.9f} {p4:>12.9f} | {spread:>10.2e}")

print("-" * 80)
print(f"largest spread across all routes: {worst:.2e}")
