"""Shared constants for the Bohr radius toolkit."""

# Truncation order used when a caller does not supply one
DEFAULT_ORDER = 200

# Upper limit for automatic order raising during sharpness checks
MAX_ORDER = 512

# Root finding and quadrature tolerances (absolute, in r or in the integral)
BISECTION_TOL = 1e-12
QUADRATURE_TOL = 1e-12
MAX_BISECTION_ITERATIONS = 200
MAX_QUADRATURE_DEPTH = 60

# Gauss-Legendre nodes per quadrature panel
GAUSS_LEGENDRE_NODES = 10

# Sharpness reports
SHARPNESS_TOL = 1e-9
VIOLATION_STEP = 1e-3

# Sampled dilatation check on HarmonicPair
DILATATION_GRID = 64
DILATATION_RADIUS = 0.95
DILATATION_SLACK = 1e-9

# Class-membership grid samples
U_GRID = 128
U_RADIUS = 0.99
U_SLACK = 1e-6
PRESCHWARZIAN_GRID = 128
PRESCHWARZIAN_RADIUS = 0.995

# Schwarz function sampling
BOUNDARY_SAMPLES = 4096
POLYNOMIAL_SUP_MARGIN = 0.02
SCHWARZ_SUP_RADIUS = 0.999
MAX_BLASCHKE_DEGREE = 6
MAX_BLASCHKE_ZERO_MODULUS = 0.95
MAX_SCALED_POLYNOMIAL_DEGREE = 8

# Random series drawn by the property harness decay at least this fast
HARNESS_DECAY = 0.9
LEBEDEV_MILIN_DECAY = 0.8

# Property harness defaults
HARNESS_SEED = 20240611
HARNESS_SAMPLES = {
    "lemma1": 1000,
    "derivative_transfer": 500,
    "lebedev_milin": 500,
    "area_bound": 200,
    "rogosinski_step": 500,
    "subordination_bohr": 1000,
}
COUNTEREXAMPLE_DRAWS = 10000
COUNTEREXAMPLE_RADIUS = 0.5

# Relative floating slack allowed on top of certified tail bounds
FLOAT_SLACK = 1e-12

# Printed numbers
SIGNIFICANT_DIGITS = 12
