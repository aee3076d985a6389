import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# ─── Dense Linear Algebra ─────────────────────────────────────────────────────
COND_LIMIT = float(os.getenv('OPLOG_COND_LIMIT', '1e14'))  # 1-norm condition estimate
PIVOT_FLOOR = 1e-300  # smallest admissible LU pivot magnitude
AMPLIFICATION_LIMIT = float(os.getenv('OPLOG_AMPLIFICATION_LIMIT', '1e8'))  # componentwise (Skeel) condition
EIGEN_ESTIMATE_MAX_N = 128  # enclosures are tightened by eigenvalues up to this size

# ─── Contour Quadrature ───────────────────────────────────────────────────────
CONTOUR_MARGIN = float(os.getenv('OPLOG_CONTOUR_MARGIN', '0.2'))  # radius = (1 + margin) * enclosure
CONTOUR_MIN_NODES = 16
QUADRATURE_NODE_START = int(os.getenv('OPLOG_NODE_START', '64'))
QUADRATURE_NODE_CAP = int(os.getenv('OPLOG_NODE_CAP', '4096'))
QUADRATURE_TOL = float(os.getenv('OPLOG_QUAD_TOL', '1e-12'))  # relative, Frobenius, unit floor
EIGENCOUNT_INTEGRALITY_TOL = 1e-6

# ─── Numerical Differentiation ────────────────────────────────────────────────
RICHARDSON_H0 = 1e-3  # scaled by max(1, |t|)
RICHARDSON_STEP_FLOOR = 1e-10
STENCIL_MAX_RELATIVE_CHANGE = 0.05  # adaptive step: ||U(t+h) - U(t-h)|| / 2||U(t)||

# ─── Shift Parameter Selection ────────────────────────────────────────────────
SELECTION_RETRIES = 8
SELECTION_JITTER = 1.37
NU_MATCH_TOL = 1e-14  # nu must equal eta / (1 - eta) to this relative accuracy

# ─── Evolution Families ───────────────────────────────────────────────────────
INVERTIBILITY_RATIO = 1e-12  # sigma_min < ratio * sigma_max => numerically non-invertible
STEPPER_RTOL = 1e-12
STEPPER_ATOL = 1e-14

# ─── Applications ─────────────────────────────────────────────────────────────
COLE_HOPF_FLOOR = 1e-10  # min |phi| for the logarithmic derivative

# ─── Verification Tolerances ──────────────────────────────────────────────────
TOLERANCES = {
    'resolvent_identity': 1e-12,
    'contour_log_oracle': 1e-10,
    'exp_log_roundtrip': 1e-9,
    'oracle_recovery': 1e-4,
    'equivalence': 1e-7,
    'advection_recovery': 1e-3,
    'commutator': 1e-8,
    'noncommuting_flag': 1e-3,
    'burgers_residual': 1e-6,
    'cole_hopf_identity': 1e-11,
    'convention_ratio': 1e-13,
    'double_log_roundtrip': 1e-9,
    'semigroup': 1e-10,
}

# ─── Logging Configuration ────────────────────────────────────────────────────
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# ─── CLI Defaults ─────────────────────────────────────────────────────────────
DEFAULT_SEED = 0
DEFAULT_OUTPUT_FORMAT = 'json'

# ─── Acceptance Suite ─────────────────────────────────────────────────────────
SUITE_LOG_BUDGET_S = float(os.getenv('OPLOG_SUITE_LOG_BUDGET', '10'))  # random contour logs
SUITE_BUDGET_S = float(os.getenv('OPLOG_SUITE_BUDGET', '120'))  # whole suite
