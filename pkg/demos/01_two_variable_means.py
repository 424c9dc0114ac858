"""A tour of two-variable operator means.

Builds a pair of random positive definite matrices, evaluates several means,
checks the harmonic <= geometric <= logarithmic <= arithmetic chain in the
Löwner order, and shows that a mean given by a geodesic measure agrees with
the one given by its representing function.
"""

import numpy as np

from matmeans.hermitian import PsdSamplerConfig, loewner_geq, sample_psd
from matmeans.means import GeodesicMeasure, b_p, certify_geom_class, geodesic_mean, kubo_ando
from matmeans.specs import mean_from_spec

a = sample_psd(PsdSamplerConfig(dim=3, condition_target=20, seed=1))
b = sample_psd(PsdSamplerConfig(dim=3, condition_target=20, seed=2))

chain = ["mean:harm", "mean:geo:alpha=0.5", "mean:falpha:a=1", "mean:arith"]
values = [mean_from_spec(s).matrix(a, b) for s in chain]
for spec, m in zip(chain, values):
    print(f"{spec:22s} trace = {np.trace(m).real:.6f}")
for lo, hi, s_lo, s_hi in zip(values, values[1:], chain, chain[1:]):
    print(f"  {s_lo} <= {s_hi}: {loewner_geq(hi, lo, 1e-10)}")

# b_{1/2}(x) = ((sqrt(x) + 1)/2)^2 is the average of A #_t B over the atoms {0, 1/2, 1}
nu = GeodesicMeasure.from_atoms([(0.0, 0.25), (0.5, 0.5), (1.0, 0.25)])
gap = np.linalg.norm(geodesic_mean(nu, a, b) - kubo_ando(b_p(0.5), a, b))
print(f"geodesic form vs representing function: {gap:.2e}")

for p in (-1.0, 0.25, 1.0):
    print(f"b_{p}: {certify_geom_class(b_p(p)).geom_class}")
