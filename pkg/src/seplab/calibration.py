"""Frozen regression constants, fitted once on the desk-scale suite by scripts/calibrate.py.

Each value is the observed extreme widened by 10% and rounded to two
significant figures. Observed extremes are noted beside each constant.
"""

# sparsity * vcong_lower / log2(n) on random segment graphs; observed max 0.193785
ROUNDING_KAPPA = 0.22

# |S| / (sqrt(m) * log2(m + 2)) over segments and grids; observed max 0.289065 (K_{3,3})
SEPARATOR_KAPPA = 0.32

# vcong_lower * sqrt(m) / n^2 over segments and grids; observed min 0.291667 (K_{3,3})
LOWER_BOUND_C = 0.26

# (spread / pair-sum) * log2(n) of the chosen line embedding; observed min 1.600215 (K_{3,3})
SPREAD_C = 1.4
