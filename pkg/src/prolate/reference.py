"""Reference values that the ``verify`` command reproduces."""

from __future__ import annotations

# Weights W_1..W_21 of the rule with c = 40, n = 41 (the rest follow by symmetry).
WEIGHTS_C40_N41 = (
    0.7602931556894e-02,
    0.1716167229714e-01,
    0.2563684665002e-01,
    0.3278512460580e-01,
    0.3863462966166e-01,
    0.4334940472363e-01,
    0.4713107235981e-01,
    0.5016785516291e-01,
    0.5261660773966e-01,
    0.5460119701692e-01,
    0.5621699326080e-01,
    0.5753664411864e-01,
    0.5861531690539e-01,
    0.5949490764741e-01,
    0.6020725336886e-01,
    0.6077650804037e-01,
    0.6122088420703e-01,
    0.6155390478472e-01,
    0.6178529976346e-01,
    0.6192162112196e-01,
    0.6196665001384e-01,
)

# c = 50, n = 40: m -> (integral of psi_m, quadrature error in double precision).
PSI_ERRORS_C50_N40 = {
    0: (0.70669, 0.44409e-15),
    2: (0.49581, 0.16653e-15),
    4: (0.42581, 0.13323e-14),
    6: (0.38527, 0.21649e-14),
    8: (0.35695, 0.22760e-14),
    10: (0.33516, 0.16653e-14),
    12: (0.31730, 0.23870e-14),
    14: (0.30201, 0.24980e-14),
    16: (0.28844, 0.11102e-14),
    18: (0.27604, 0.59230e-13),
    20: (0.26435, 0.83716e-12),
    22: (0.25299, 0.89038e-11),
    24: (0.24150, 0.76862e-10),
    26: (0.22919, 0.65870e-09),
    28: (0.21377, 0.45239e-08),
    30: (0.18075, 0.19826e-07),
    32: (0.10038, 0.68548e-07),
    34: (0.27988e-01, 0.33810e-06),
    36: (0.49822e-02, 0.27232e-05),
    38: (0.70503e-03, 0.22754e-04),
}

# (c, n) -> |lambda_n|.
LAMBDA_MAGNITUDES = {
    (50, 40): 0.12915e-03,
    (40, 41): 0.69857e-08,
    (1000, 682): 0.60352e-15,
    (10000, 6393): 0.43299e-07,
}

# Further |lambda_n| at c = 10000 (not part of the default checks).
LAMBDA_MAGNITUDES_C10000 = {
    6393: 0.43299e-07,
    6401: 0.54119e-09,
    6414: 0.33602e-12,
    6425: 0.52616e-15,
}

# (c, eps) -> (n1, n2, n3, n4, |lambda_n1|, |lambda_n2|).
INDEX_SELECTION = {
    (250, 1e-10): (184, 198, 277, 303, 0.60576e-10, 0.86791e-16),
    (250, 1e-25): (216, 227, 326, 386, 0.31798e-25, 0.14863e-30),
    (250, 1e-50): (260, 270, 393, 525, 0.28910e-50, 0.75155e-56),
    (500, 1e-10): (346, 362, 460, 488, 0.49076e-10, 0.60092e-16),
    (500, 1e-25): (382, 397, 520, 583, 0.54529e-25, 0.19622e-31),
    (500, 1e-50): (433, 446, 607, 742, 0.82391e-50, 0.38217e-56),
    (1000, 1e-10): (666, 687, 803, 834, 0.95582e-10, 0.92947e-17),
    (1000, 1e-25): (707, 725, 875, 942, 0.97844e-25, 0.14241e-31),
    (1000, 1e-50): (767, 783, 981, 1120, 0.39772e-50, 0.56698e-57),
    (2000, 1e-10): (1305, 1330, 1467, 1500, 0.95177e-10, 0.25349e-17),
    (2000, 1e-25): (1351, 1373, 1550, 1619, 0.86694e-25, 0.27321e-32),
    (2000, 1e-50): (1418, 1438, 1675, 1818, 0.88841e-50, 0.22795e-57),
    (4000, 1e-10): (2581, 2610, 2768, 2804, 0.70386e-10, 0.64396e-18),
    (4000, 1e-25): (2632, 2658, 2862, 2935, 0.57213e-25, 0.53827e-33),
    (4000, 1e-50): (2707, 2730, 3007, 3154, 0.56712e-50, 0.88819e-58),
}

DEFAULT_MAX_C = 2000
