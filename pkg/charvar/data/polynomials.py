"""
Closed-form polynomial tables, kept as text in the parser's syntax.

Each table is parsed once by RelationStore; the checks in the verification
suites compare these tables against independent reconstructions.
"""

P_TEXT = (
    "t1*t-1*t2*t-2 - t1*t2*t-3 - t-1*t-2*t3 - t1*t-2*t-4 - t-1*t2*t4"
    " + t1*t-1 + t2*t-2 + t3*t-3 + t4*t-4 - 3"
)

Q_TEXT = (
    "9 - 6*t1*t-1 - 6*t2*t-2 - 6*t3*t-3 - 6*t4*t-4 + t1^3 + t2^3 + t3^3"
    " + t4^3 + t-1^3 + t-2^3 + t-3^3 + t-4^3 - 3*t-4*t-3*t-1 - 3*t4*t3*t1"
    " - 3*t-4*t2*t3 - 3*t4*t-2*t-3 + 3*t-4*t-2*t1 + 3*t4*t2*t-1 + 3*t1*t2*t-3"
    " + 3*t-1*t-2*t3 + t-2*t-1*t2*t1 + t-3*t-2*t3*t2 + t-4*t-1*t4*t1"
    " + t-4*t-2*t4*t2 + t-3*t-1*t3*t1 + t-3*t-4*t3*t4 + t-4^2*t-3*t-2"
    " + t4^2*t3*t2 + t-1^2*t-2*t-4 + t1^2*t2*t4 + t1*t-2^2*t-3 + t-1*t2^2*t3"
    " + t-4*t-3*t1^2 + t4*t3*t-1^2 + t-4*t2*t-3^2 + t4*t-2*t3^2"
    " + t-1^2*t-3*t2 + t1^2*t3*t-2 + t-4*t1*t2^2 + t4*t-1*t-2^2"
    " + t-4*t3*t-2^2 + t4*t-3*t2^2 + t1*t3*t-4^2 + t-1*t-3*t4^2"
    " + t-1*t-4*t3^2 + t1*t4*t-3^2 - 2*t-3^2*t-2*t-1 - 2*t3^2*t2*t1"
    " - 2*t-4^2*t-1*t2 - 2*t4^2*t1*t-2 + t-1^2*t-2^2*t-3 + t1^2*t2^2*t3"
    " + t-4*t-1^2*t2^2 + t4*t1^2*t-2^2 - t-4*t-2^2*t2*t1 - t4*t2^2*t-2*t-1"
    " - t-3*t1^2*t-1*t2 - t3*t-1^2*t1*t-2 - t-3*t2^2*t-2*t1 - t3*t-2^2*t2*t-1"
    " - t-4*t-2*t-1*t1^2 - t4*t2*t1*t-1^2 - t-1*t-2^3*t1 - t-1*t2^3*t1"
    " - t-1^3*t-2*t2 - t1^3*t-2*t2 - t-4*t-3*t-2*t-1*t2 - t4*t3*t2*t1*t-2"
    " - t-1*t1*t2*t-4*t3 - t-1*t1*t-2*t4*t-3 + t-2*t-1^2*t1^2*t2"
    " + t-1*t-2^2*t2^2*t1"
)

# sum over the dihedral group of p (resp. q) gives P + 3 (resp. Q - 9)
SYMMETRIZER_P_TEXT = "1/8*(t1*t-1*t2*t-2 - 4*t1*t-2*t-4 + 2*t1*t-1 + 2*t3*t-3)"
SYMMETRIZER_Q_TEXT = (
    "1/8*(2*t-2*t-1^2*t1^2*t2 + 4*t1^2*t2^2*t3 - 4*t1^3*t-2*t2"
    " - 8*t-4*t-2*t-1*t1^2 - 4*t4*t3*t2*t1*t-2 + 8*t1*t3*t-4^2"
    " + 8*t-4*t1*t2^2 - 8*t3^2*t2*t1 + 4*t4*t-3*t2^2 + t-2*t-1*t2*t1"
    " + t-3*t-4*t3*t4 + 4*t-3*t-1*t3*t1 + 4*t1^3 + 4*t3^3 + 12*t-4*t-2*t1"
    " - 12*t-4*t2*t3 - 12*t1*t-1 - 12*t3*t-3)"
)

PARTIAL_P_TEXTS = {
    1: "-t-4*t-2 + t-1 - t-3*t2 + t-2*t-1*t2",
    2: "t-2 - t-3*t1 + t-2*t-1*t1 - t-1*t4",
    3: "t-3 - t-2*t-1",
    4: "t-4 - t-1*t2",
    -4: "-t-2*t1 + t4",
    -3: "-t1*t2 + t3",
    -2: "-t-4*t1 + t2 + t-1*t1*t2 - t-1*t3",
    -1: "t1 + t-2*t1*t2 - t-2*t3 - t2*t4",
}

# only the positive indices are tabulated; the negative ones are mirror images
PARTIAL_Q_TEXTS = {
    1: (
        "3*t-4*t-2 + t-3*t-2^2 - 6*t-1 - t-2^3*t-1 + 2*t-4*t-3*t1"
        " - 2*t-4*t-2*t-1*t1 + 3*t1^2 + 3*t-3*t2 - t-4*t-2^2*t2 + t-2*t-1*t2"
        " - 2*t-3*t-1*t1*t2 + 2*t-2*t-1^2*t1*t2 - 3*t-2*t1^2*t2 + t-4*t2^2"
        " - t-3*t-2*t2^2 + t-2^2*t-1*t2^2 - t-1*t2^3 + t-4^2*t3 + t-3*t-1*t3"
        " - t-2*t-1^2*t3 + 2*t-2*t1*t3 - t-4*t-1*t2*t3 + 2*t1*t2^2*t3 - 2*t2*t3^2"
        " + t-3^2*t4 + t-4*t-1*t4 - t-3*t-2*t-1*t4 + 2*t-2^2*t1*t4 - t-1^2*t2*t4"
        " + 2*t1*t2*t4 - 3*t3*t4 - t-2*t2*t3*t4 - 2*t-2*t4^2"
    ),
    2: (
        "t-4*t-3^2 - 6*t-2 - 2*t-4^2*t-1 - t-4*t-3*t-2*t-1 + t-3*t-1^2"
        " - t-2*t-1^3 + 3*t-3*t1 - t-4*t-2^2*t1 + t-2*t-1*t1 - t-3*t-1*t1^2"
        " + t-2*t-1^2*t1^2 - t-2*t1^3 + 2*t-4*t-1^2*t2 + 2*t-4*t1*t2"
        " - 2*t-3*t-2*t1*t2 + 2*t-2^2*t-1*t1*t2 + 3*t2^2 - 3*t-1*t1*t2^2"
        " - 3*t-4*t3 + t-3*t-2*t3 - t-2^2*t-1*t3 - t-4*t-1*t1*t3 + 2*t-1*t2*t3"
        " + 2*t1^2*t2*t3 - 2*t1*t3^2 + t-4*t-2*t4 + 3*t-1*t4 - t-1^2*t1*t4"
        " + t1^2*t4 + 2*t-3*t2*t4 - 2*t-2*t-1*t2*t4 - t-2*t1*t3*t4 + t3*t4^2"
    ),
    3: (
        "-6*t-3 + t-4*t-2^2 + 3*t-2*t-1 + t-4^2*t1 + t-3*t-1*t1 - t-2*t-1^2*t1"
        " + t-2*t1^2 - 3*t-4*t2 + t-3*t-2*t2 - t-2^2*t-1*t2 - t-4*t-1*t1*t2"
        " + t-1*t2^2 + t1^2*t2^2 + 2*t-4*t-1*t3 - 4*t1*t2*t3 + 3*t3^2"
        " + t-4*t-3*t4 + t-1^2*t4 - 3*t1*t4 - t-2*t1*t2*t4 + 2*t-2*t3*t4"
        " + t2*t4^2"
    ),
    4: (
        "-6*t-4 - 3*t-3*t-2 + t-2^2*t-1 + t-3^2*t1 + t-4*t-1*t1 - t-3*t-2*t-1*t1"
        " + t-2^2*t1^2 + t-4*t-2*t2 + 3*t-1*t2 - t-1^2*t1*t2 + t1^2*t2 + t-3*t2^2"
        " - t-2*t-1*t2^2 + t-4*t-3*t3 + t-1^2*t3 - 3*t1*t3 - t-2*t1*t2*t3"
        " + t-2*t3^2 + 2*t-3*t-1*t4 - 4*t-2*t1*t4 + 2*t2*t3*t4 + 3*t4^2"
    ),
}

SL2_BINDING_TEXTS = {
    4: "t1*t2 - t3 - t1 - t2 + 3",
    5: "3 - 3*t1 + t1^2 - 3*t2 + t1*t2 + t2^2 - 3*t3 + t1*t3 + t2*t3 - t1*t2*t3 + t3^2",
}

BRACKET_T4_T5_TEXT = (
    "t4*(t1*t-1 + t2*t-2 + t3*t-3 - t5 - 6) + t-4*(2*t1*t3 + 2*t-2*t-3"
    " - 4*t-1*t2) + t5*t1*t-2 + 3*t-4^2 - 3*t-1*t-3 - 3*t2*t3 + 3*t1*t-2"
    " + t-1^2*t-2 + t1^2*t-3 + t2*t-3^2 + t1*t2^2 + t3*t-2^2 + t-1*t3^2"
    " + t-1^2*t2^2 - t1*t-1*t2*t3 - t-3*t-2*t-1*t2 - t1*t2*t-2^2"
    " - t-2*t-1*t1^2"
)

BRACKET_TM4_T5_TEXT = (
    "t-4*(t5 - t-1*t1 - t2*t-2 - t3*t-3 + 6) + t4*(4*t1*t-2 - 2*t-1*t-3"
    " - 2*t2*t3) - t5*t-1*t2 - 3*t4^2 + 3*t1*t3 + 3*t-2*t-3 - 3*t-1*t2"
    " - t1^2*t2 - t-1^2*t3 - t-2*t3^2 - t-1*t-2^2 - t-3*t2^2 - t1*t-3^2"
    " - t1^2*t-2^2 + t-1*t1*t-2*t-3 + t3*t2*t1*t-2 + t-1*t-2*t2^2"
    " + t2*t1*t-1^2"
)

# {t4, Q} = (P - 2*t5) * C4 and {t-4, Q} = (2*t5 - P) * C-4
BRACKET_T4_Q_FACTOR_TEXT = (
    "-6*t4 + 3*t-4^2 - 3*t-1*t-3 - 3*t2*t3 + 3*t1*t-2 + t1*t-1*t4 + t2*t-2*t4"
    " + t3*t-3*t4 + t-1^2*t-2 + t1^2*t-3 + t2*t-3^2 + t1*t2^2 + t3*t-2^2"
    " + t-1*t3^2 + t-1^2*t2^2 - t1*t-1*t2*t3 - t-3*t-2*t-1*t2 - t1*t2*t-2^2"
    " - t-2*t-1*t1^2 + 2*t1*t3*t-4 + 2*t-2*t-3*t-4 - 4*t-1*t2*t-4"
)
BRACKET_TM4_Q_FACTOR_TEXT = (
    "-6*t-4 + 3*t4^2 - 3*t1*t3 - 3*t-2*t-3 + 3*t-1*t2 + t1*t-1*t-4"
    " + t2*t-2*t-4 + t3*t-3*t-4 + t1^2*t2 + t-1^2*t3 + t-2*t3^2 + t-1*t-2^2"
    " + t-3*t2^2 + t1*t-3^2 + t1^2*t-2^2 - t1*t-1*t-2*t-3 - t3*t-2*t1*t2"
    " - t-1*t-2*t2^2 - t2*t1*t-1^2 + 2*t-1*t-3*t4 + 2*t2*t3*t4 - 4*t1*t-2*t4"
)

BRACKET_T4_P_FACTOR_TEXT = "t4 - t1*t-2"
BRACKET_TM4_P_FACTOR_TEXT = "t-4 - t-1*t2"

# Jacobian generators on the (a, c) family, indices 1 and -1
FAMILY_AC_JACOBIAN = {
    1: lambda a: -(-1 + a ** 3) ** 3 / (4 * a ** 4),
    -1: lambda a: (-1 + a ** 3) ** 3 / (4 * a ** 5),
}
