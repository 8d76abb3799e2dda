# Working precision in decimal digits. Tolerances below must stay above
# 10^-(PRECISION - 20).
PRECISION = 100

# Width of root enclosures
TOL = "1e-50"

# Radii closer than this are one tie
TIE_TOL = "1e-30"

# Largest order for exhaustive tree enumeration
TREE_CAP = 14

STABILIZATION_K = 8
SEARCH_WORKERS = 1
