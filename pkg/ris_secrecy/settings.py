import os

# Settings for the contour engine
DEFAULT_CONTOUR_NODES: int = int(os.getenv('RIS_SECRECY_CONTOUR_NODES', 512))  # Minimum trapezoid nodes per contour
DEFAULT_CONTOUR_TRUNCATION: float = float(os.getenv(
    'RIS_SECRECY_CONTOUR_TRUNCATION', 40.0))  # Half-window in units of the integrand's decay scale
DEFAULT_CONTOUR_REL_TOL: float = float(os.getenv('RIS_SECRECY_CONTOUR_REL_TOL', 1e-8))
DEFAULT_CONTOUR_ABS_TOL: float = float(os.getenv('RIS_SECRECY_CONTOUR_ABS_TOL', 1e-12))
DEFAULT_CONTOUR_MAX_REFINEMENTS: int = int(os.getenv('RIS_SECRECY_CONTOUR_MAX_REFINEMENTS', 4))
CONTOUR_BLOCK_ROWS: int = int(os.getenv('RIS_SECRECY_CONTOUR_BLOCK_ROWS', 256))  # Rows per block on 2-D grids

# Settings for real-line quadrature
DEFAULT_QUAD_REL_TOL: float = float(os.getenv('RIS_SECRECY_QUAD_REL_TOL', 1e-10))
DEFAULT_QUAD_LIMIT: int = int(os.getenv('RIS_SECRECY_QUAD_LIMIT', 200))
DEFAULT_QUAD_ACCEPT_TOL: float = float(os.getenv(
    'RIS_SECRECY_QUAD_ACCEPT_TOL', 1e-6))  # Integration fails when the error estimate exceeds this

# Settings for the closed forms
CLOSED_FORM_SOP_FLOOR: float = float(os.getenv(
    'RIS_SECRECY_CLOSED_FORM_SOP_FLOOR', 1e-6))  # Smaller 1 - no_outage values go to the 1-D integral
CLOSED_FORM_REL_TOL: float = float(os.getenv(
    'RIS_SECRECY_CLOSED_FORM_REL_TOL', 2e-3))  # Largest no-outage error accepted, relative to the SOP

# Settings for Monte Carlo
DEFAULT_MC_CHUNK_SIZE: int = int(os.getenv('RIS_SECRECY_MC_CHUNK_SIZE', 1 << 16))
MC_STREAM_STRIDE: int = int(os.getenv('RIS_SECRECY_MC_STREAM_STRIDE', 1 << 32))  # Stream ids reserved per grid point
DEFAULT_SEED: int = int(os.getenv('RIS_SECRECY_DEFAULT_SEED', 20211011))

# Settings for the CLI
DEFAULT_JOBS: int = int(os.getenv('RIS_SECRECY_DEFAULT_JOBS', 1))
