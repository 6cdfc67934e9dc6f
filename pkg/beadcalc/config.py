"""
Bead Calculus Engine - Configuration
Search bounds, defaults and file locations
"""

import os

# Search bounds
VERTEX_BOUND = int(os.environ.get("BEADCALC_VERTEX_BOUND", "16"))
EULER_BOUND = int(os.environ.get("BEADCALC_EULER_BOUND", "6"))

# Randomized suites
DEFAULT_SEED = 7
DEFAULT_AXIOM_COUNT = 200
MAX_DIAGRAM_CROSSINGS = 12
SIGN_AUDIT_TRIALS = 50

# Diagram conventions
HAIR_COLOR = "*"
ZERO_VERTEX_EDGE_RING = "reject"  # or "free": one free generator per loop edge

# Results store
STORE_FILE = os.environ.get("BEADCALC_STORE", "beadcalc_results.db")
