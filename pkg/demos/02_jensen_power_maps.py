"""Jensen-type inequalities for power maps of unital positive maps.

For a unital positive map E and p in (0, 1], the power map is
E_p(Z) = E(Z^p)^{1/p}. For a doubly concave f, the matrix f(E_p(Z)) is
log-supermajorized by E_p(f(Z)). This script samples a few cases and prints
the worst log margin, then shows the p -> 0 limit exp E(log Z).
"""

import numpy as np

from matmeans.hermitian import PsdSamplerConfig, matrix_function, sample_psd
from matmeans.majorization import log_supermajorizes
from matmeans.maps import pinch_diag, power_map, two_block_average, zero_power_map
from matmeans.scalar import function_from_spec

f = function_from_spec("frac")  # t / (t + 1)
worst = np.inf
for seed in range(200):
    n = 2 + seed % 3
    e = pinch_diag(2 * n) if seed % 2 else two_block_average(n)
    z = sample_psd(PsdSamplerConfig(dim=2 * n, condition_target=50, seed=seed))
    for p in (0.25, 0.5, 1.0):
        lhs = matrix_function(power_map(e, z, p), f.func, f.domain)
        rhs = power_map(e, matrix_function(z, f.func, f.domain), p)
        worst = min(worst, log_supermajorizes(lhs, rhs).worst_margin)
print(f"worst log-supermajorization margin over 600 cases: {worst:+.2e}")

z = sample_psd(PsdSamplerConfig(dim=4, condition_target=10, seed=0))
e = two_block_average(2)
limit = zero_power_map(e, z)
for p in (1e-1, 1e-2, 1e-3):
    print(f"p = {p:g}: |E_p(Z) - E_0(Z)| = {np.linalg.norm(power_map(e, z, p) - limit):.3e}")
