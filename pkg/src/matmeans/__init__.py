"""Operator means, anti-norms and majorization for positive matrices.

The submodules are the public surface:

- :mod:`matmeans.hermitian`: eigensolver and functional calculus
- :mod:`matmeans.scalar`: scalar function catalog and class certification
- :mod:`matmeans.means`: Kubo–Ando means and representing functions
- :mod:`matmeans.maps`: positive linear maps and power maps
- :mod:`matmeans.majorization`: eigenvalue and log-majorization tests
- :mod:`matmeans.multi`: Karcher, inductive and geodesic m-variable means
- :mod:`matmeans.antinorms`: symmetric norms, anti-norms and their duals
- :mod:`matmeans.verify`: inequality registry, campaigns and searches
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .antinorms import AntiNorm, Norm, antinorm_from_spec, dual_antinorm, norm_from_spec
from .errors import ConfigError, MatmeansError
from .hermitian import eigh, eigvalsh, matrix_function
from .io import load_matrix, save_matrix
from .majorization import eigenvalue_dominates, log_majorizes, log_supermajorizes, majorizes, supermajorizes
from .means import kubo_ando, power_mean, scalar_mean, weighted_geometric
from .multi import karcher_mean
from .scalar import function_from_spec
from .specs import mean_from_spec, mmean_from_spec

__all__ = [
    "AntiNorm",
    "ConfigError",
    "MatmeansError",
    "Norm",
    "__version__",
    "antinorm_from_spec",
    "dual_antinorm",
    "eigenvalue_dominates",
    "eigh",
    "eigvalsh",
    "function_from_spec",
    "karcher_mean",
    "kubo_ando",
    "load_matrix",
    "log_majorizes",
    "log_supermajorizes",
    "majorizes",
    "matrix_function",
    "mean_from_spec",
    "mmean_from_spec",
    "norm_from_spec",
    "power_mean",
    "save_matrix",
    "scalar_mean",
    "supermajorizes",
    "weighted_geometric",
]
