"""Published reference values frozen for tests.

S3_NUMERIC is the bundled 13-node demo map's original [-1, 1] weights;
S4_BETA the published beta matrix for the same map. The beta matrix was
computed from higher-precision originals than the two-decimal numeric table,
so exact linear conversion of S3 deviates from S4 by up to 0.04 on a
handful of cells, and cell (c_11, c_6) looks like a typo (off by 0.07).
"""

import numpy as np

NODE_IDS = tuple(f"c_{i}" for i in range(1, 14))

S3_NUMERIC = np.array([
    [0, 0, 0, 0.37, 0, 0, 0, 0.68, 0, 0, 0, -0.71, -0.15],
    [0.76, 0, 0, 0, 0, 0, 0, 0.27, 0, 0, 0, -0.31, -0.26],
    [-0.71, -0.13, 0, 0, 0, 0, 0, -0.36, 0, 0, 0, 0.26, 0],
    [0, 0.04, 0, 0, 0, 0.7, 0.61, 0.11, 0.62, 0, 0, 0, 0],
    [-0.63, 0, 0, -0.34, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0.58, 0.3, -0.33, -0.48, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0.48, 0.29, -0.17, 0, -0.62, 0.62, 0, 0, 0.55, 0.34, 0.37, -0.18, -0.58],
    [-0.1, 0, 0.55, 0.48, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0.48, 0.27, -0.27, -0.47, -0.22, 0.25, 0.5, 0.14, 0, 0, 0.35, 0, 0],
    [0, 0, 0, 0, -0.09, 0.32, 0.2, 0, 0, 0, 0.41, 0, 0],
    [0, 0, -0.47, 0, -0.55, 0.26, 0.58, 0, 0.43, 0.24, 0, 0, -0.46],
    [0, -0.21, 0, 0, 0, 0, 0, -0.51, 0, 0, 0, 0, 0.26],
    [-0.17, -0.63, 0.63, -0.34, 0.31, 0, 0, 0, 0, 0, -0.17, 0.42, 0],
])

S4_BETA = np.array([
    [0, 0, 0, 2.21, 0, 0, 0, 4.09, 0, 0, 0, -4.27, -0.87],
    [4.54, 0, 0, 0, 0, 0, 0, 1.60, 0, 0, 0, -1.89, -1.59],
    [-4.28, -0.77, 0, 0, 0, 0, 0, -2.18, 0, 0, 0, 1.57, 0],
    [0, 0.24, 0, 0, 0, 4.21, 3.65, 0.64, 3.69, 0, 0, 0, 0],
    [-3.76, 0, 0, -2.07, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3.44, 1.78, -2.01, -2.89, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2.85, 1.78, -0.98, 0, -3.69, 3.72, 0, 0, 3.27, 2.07, 2.22, -1.04, -3.47],
    [-0.61, 0, 3.27, 2.88, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2.89, 1.63, -1.63, -2.80, -1.32, 1.47, 3.02, 0.80, 0, 0, 2.10, 0, 0],
    [0, 0, 0, 0, -0.56, 1.95, 1.16, 0, 0, 0, 2.48, 0, 0],
    [0, 0, -2.84, 0, -3.30, 1.49, 3.45, 0, 2.60, 1.43, 0, 0, -2.76],
    [0, -1.22, 0, 0, 0, 0, 0, -3.03, 0, 0, 0, 0, 1.55],
    [-1.01, -3.78, 3.76, -2.06, 1.90, 0, 0, 0, 0, 0, -0.98, 2.51, 0],
])

#: the one cell whose published beta cannot come from the numeric table even
#: with input rounding (suspected typo: 0.26 vs 1.49)
SUSPECT_CELL = (10, 5)  # c_11 -> c_6

# per-node centrality columns: degree, closeness, betweenness, ccm, cw
CENTRALITY_TABLE = {
    "c_1": (5.66, 4.12, 1.27, 3.69, 0.113),
    "c_2": (2.52, 5.45, 2.81, 3.59, 0.110),
    "c_3": (3.06, 0.71, 0.38, 1.38, 0.042),
    "c_4": (3.95, 3.11, 2.56, 3.21, 0.098),
    "c_5": (1.56, 0.75, 0.50, 0.94, 0.029),
    "c_6": (2.99, 0.00, 0.00, 1.00, 0.031),
    "c_7": (6.00, 1.74, 0.50, 2.75, 0.084),
    "c_8": (2.14, 3.60, 1.13, 2.29, 0.070),
    "c_9": (3.93, 3.17, 0.00, 2.37, 0.072),
    "c_10": (0.00, 2.28, 1.27, 1.18, 0.036),
    "c_11": (3.58, 3.78, 3.56, 3.64, 0.112),
    "c_12": (1.68, 2.37, 0.25, 1.43, 0.044),
    "c_13": (3.71, 6.00, 6.00, 5.24, 0.159),
}

# ranking-table criterion columns: importance, feasibility, influence (%)
RANK_KV_COHORT = {
    "FA": (32.0, 17.0, 28.0),
    "FB": (40.0, -60.0, 43.0),
    "FD": (14.0, -1.0, 15.0),
    "FC": (14.0, -22.0, 14.0),
}
RANK_KV_ORDER = ("FA", "FB", "FD", "FC")

RANK_VAR_COHORT_FA = {
    "FA3": (28.0, -2.0, 35.0),
    "FA1": (40.5, -55.0, 32.0),
    "FA2": (24.5, -42.0, 28.0),
    "FA4": (7.0, -1.0, 5.0),
}
RANK_VAR_ORDER_FA = ("FA3", "FA1", "FA2", "FA4")
RANK_VAR_PCT_FA = {"FA3": 48.0, "FA1": 25.0, "FA2": 19.0, "FA4": 8.0}

RANK_VAR_COHORT_FB = {
    "FB2": (47.5, -49.0, 54.0),
    "FB1": (52.5, -51.0, 46.0),
}
RANK_VAR_ORDER_FB = ("FB2", "FB1")
RANK_VAR_PCT_FB = {"FB2": 53.0, "FB1": 47.0}

# importance sub-columns of the key-variable cohort: cw%, mentions%
IMPORTANCE_KV_INPUTS = {
    "FA": (28.0, 36.0),
    "FB": (42.5, 37.5),
    "FD": (13.5, 14.5),
    "FC": (16.0, 12.0),
}
