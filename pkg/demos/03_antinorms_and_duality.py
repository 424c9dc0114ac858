"""Anti-norms, their duals and a Hölder-type pairing.

Anti-norms are superadditive where norms are subadditive. Each has a dual
||A||' = inf{Tr AB : ||B|| = 1}. The script prints a few values, compares the
closed-form duals with the numeric solver, and checks Tr AB >= ||A|| ||B||'.
"""

import numpy as np

from matmeans.antinorms import antinorm_from_spec, dual_antinorm, evaluate_antinorm, kyfan_anti_decomposition_form
from matmeans.hermitian import PsdSamplerConfig, sample_psd

a = sample_psd(PsdSamplerConfig(dim=4, condition_target=30, seed=3))
b = sample_psd(PsdSamplerConfig(dim=4, condition_target=30, seed=4))

specs = ["anorm:trace", "anorm:kyfan:k=2", "anorm:schatten:p=0.5", "anorm:negschatten:p=1", "anorm:minkowski"]
for spec in specs:
    an = antinorm_from_spec(spec)
    fa, fb, fab = (evaluate_antinorm(an, x) for x in (a, b, a + b))
    closed = dual_antinorm(an, a)
    numeric = dual_antinorm(an, a, force_numeric=True)
    dual_b = dual_antinorm(an, b).value
    print(
        f"{spec:24s} superadditive={fab >= fa + fb - 1e-12}  dual {closed.value:.6f} ({closed.method}) "
        f"vs {numeric.value:.6f} (numeric)  Tr AB >= ||A|| ||B||': {np.trace(a @ b).real >= fa * dual_b - 1e-9}"
    )

# the Ky Fan anti-norm as k * lambda_min(A) - Tr B over decompositions Z = A - B
form = kyfan_anti_decomposition_form(np.diag([3.0, 2.0, 1.0]), 2)
print("Ky Fan 2-anti-norm of diag(3,2,1):", form.value, "with B =", np.diag(form.b).real)
