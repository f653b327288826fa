"""Recorded reference fits from three urban probe-vehicle case studies.

Each fit used K=8 with 32 bins and a point-symmetric network histogram
(25 parameters). Rows are (coefficient, std_err, t_value) keyed by the
design column name; sample counts let tests recompute degrees of freedom
and two-sided p-values from the t values.
"""

CASE_A = {
    "n_samples": 10969,
    "gamma": (133.08, 0.51, 258.96),
    "coefficients": {
        "a_c1": (263.11, 5.63, 46.76), "a_s1": (52.58, 6.86, 7.66),
        "a_c2": (-18.40, 2.01, -9.14), "a_s2": (21.84, 1.89, 11.58),
        "a_c3": (54.03, 12.33, 4.38), "a_s3": (85.40, 11.56, 7.39),
        "a_c4": (1.47, 0.46, 3.23), "a_s4": (-6.62, 0.43, -15.24),
        "a_c5": (-54.29, 6.61, -8.21), "a_s5": (55.51, 6.81, 8.15),
        "a_c6": (-3.14, 4.38, -0.72), "a_s6": (6.27, 5.02, 1.25),
        "a_c7": (61.55, 14.11, 4.36), "a_s7": (108.00, 13.98, 7.72),
        "a_c8": (-21.25, 2.01, -10.58), "a_s8": (17.16, 2.06, 8.32),
        "b_c2": (-14.4, 1.17, -12.30), "b_s2": (8.22, 1.09, 7.52),
        "b_c4": (43.93, 3.14, 14.01), "b_s4": (18.34, 3.12, 5.87),
        "b_c6": (1.54, 1.13, 1.36), "b_s6": (-0.54, 1.06, -0.50),
        "b_c8": (-0.49, 1.75, -0.28), "b_s8": (-23.37, 1.73, -13.51),
    },
    "significant_alpha": 14,
    "significant_beta": 5,
    "r_squared": 0.307,
    "f_statistic": 302.8,
}

CASE_B = {
    "n_samples": 9557,
    "gamma": (127.39, 0.64, 198.93),
    "coefficients": {
        "a_c1": (298.21, 35.85, 8.32), "a_s1": (-158.73, 33.74, -4.70),
        "a_c2": (-49.84, 2.53, -19.70), "a_s2": (-3.55, 2.38, -1.49),
        "a_c3": (263.20, 88.45, 2.98), "a_s3": (979.97, 80.58, 12.16),
        "a_c4": (-6.82, 0.36, -19.09), "a_s4": (0.33, 0.39, 0.85),
        "a_c5": (-196.84, 54.38, -3.62), "a_s5": (162.29, 54.16, 3.00),
        "a_c6": (-48.58, 4.80, -10.12), "a_s6": (19.50, 5.39, 3.62),
        "a_c7": (193.99, 60.28, 3.22), "a_s7": (14.78, 64.19, 0.23),
        "a_c8": (-39.92, 2.44, -16.33), "a_s8": (22.32, 2.47, 9.02),
        "b_c2": (-28.49, 1.53, -18.65), "b_s2": (-9.76, 1.43, -6.82),
        "b_c4": (69.37, 3.96, 17.52), "b_s4": (17.30, 3.89, 4.45),
        "b_c6": (6.89, 1.04, 6.63), "b_s6": (7.89, 1.00, 7.86),
        "b_c8": (7.61, 1.83, 4.15), "b_s8": (-32.95, 1.80, -18.28),
    },
    "significant_alpha": 13,
    "significant_beta": 8,
    "r_squared": 0.174,
    "f_statistic": 126.0,
}

CASE_C = {
    "n_samples": 3517,
    "gamma": (216.41, 0.81, 268.16),
    "coefficients": {
        "a_c1": (161.30, 9.51, 16.97), "a_s1": (138.52, 11.52, 12.02),
        "a_c2": (-30.96, 2.67, -11.61), "a_s2": (1.29, 3.13, 0.41),
        "a_c3": (-2.75, 18.46, -0.15), "a_s3": (-46.88, 20.04, -2.34),
        "a_c4": (-12.54, 1.53, -8.19), "a_s4": (-4.75, 1.61, -2.95),
        "a_c5": (95.96, 41.68, 2.30), "a_s5": (35.37, 41.88, 0.84),
        "a_c6": (-9.17, 5.14, -1.78), "a_s6": (-9.70, 4.93, -1.97),
        "a_c7": (71.91, 35.59, 2.02), "a_s7": (30.41, 34.64, 0.88),
        "a_c8": (-30.56, 6.18, -4.95), "a_s8": (3.95, 6.10, 0.65),
        "b_c2": (-16.49, 1.42, -11.61), "b_s2": (-0.36, 1.67, -0.21),
        "b_c4": (-14.96, 2.03, -7.38), "b_s4": (-10.02, 2.19, -4.58),
        "b_c6": (-11.45, 5.64, -2.03), "b_s6": (10.08, 5.88, 1.71),
        "b_c8": (-20.13, 6.34, -3.18), "b_s8": (-25.09, 6.48, -3.87),
    },
    "significant_alpha": 10,
    "significant_beta": 6,
    "r_squared": 0.206,
    "f_statistic": 56.6,
}

ALL_CASES = {"case_a": CASE_A, "case_b": CASE_B, "case_c": CASE_C}

PARAMETER_COUNT = 25

# hand-derived: sum of the 5%-significant cosine coefficients of case A,
# 263.11 - 18.40 + 54.03 + 1.47 - 54.29 + 61.55 - 21.25
CASE_A_ALPHA_AT_ZERO = 286.22
