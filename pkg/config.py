"""
Configuration constants for the cusp invariant toolkit

Numerical tolerances and default sizes shared by the spectral oracles.
Every function that uses one of these accepts a keyword override.
"""

# Kernel detection: singular values below KERNEL_TOL * ||M|| count as zero
KERNEL_TOL = 1e-7

# Matching float eigenvalues / D_Z scalars against closed forms
EIGEN_MATCH_TOL = 1e-8

# Hermiticity check for assembled oracle matrices
HERMITIAN_TOL = 1e-10

# Constant Dirac system axioms (T* = -T, T^2 = -1, AT = -TA)
SYSTEM_TOL = 1e-10

# Spectral windows on the half-line (eigenvalue comparisons against thresholds)
SPECTRAL_WINDOW_TOL = 1e-9

# Hermite oracle: eigenvectors with more weight than this on the top two levels are dropped
BOUNDARY_WEIGHT_TOL = 1e-6

# Hermite oracle eigenvalues vs closed-form square roots
HERMITE_MATCH_TOL = 1e-6

# Lattice sums and Hermite truncation
DEFAULT_W_MAX = 2000
DEFAULT_HERMITE_LEVELS = 60

# Hurwitz zeta series default tolerance
SERIES_TOL = 1e-12

# Weights read off numerically are snapped to fractions with this denominator bound
WEIGHT_DENOMINATOR_LIMIT = 1000

# Float rendering in CLI output
SIGNIFICANT_DIGITS = 12

# Verification suite sizes
VERIFY_RANDOM_SYSTEMS = 200
VERIFY_PIPELINE_DRAWS = 100
VERIFY_SEED = 20240601
