"""
Closed forms for the traces of short words in the nine generators.

Keys are words in the parser's syntax; RelationStore canonicalises them to
their cyclic class at load time, so any rotation may be written here.
"""

TRACE_RULES = {
    "x1": "t1",
    "X1": "t-1",
    "x2": "t2",
    "X2": "t-2",
    "x1x2": "t3",
    "X1X2": "t-3",
    "x1X2": "t4",
    "X1x2": "t-4",
    "x1x2X1X2": "t5",
    "x1x2x1x2": "t3^2 - 2*t-3",
    "x1X2x1X2": "t4^2 - 2*t-4",
    "X1x2X1x2": "t-4^2 - 2*t4",
    "X1X2X1X2": "t-3^2 - 2*t3",
    "x1x2x1X2": "t3*t4 + t2*t-3 - t-1*t2*t-2 + t-2*t-4 + t-1",
    "x2x1x2X1": "t3*t-4 + t1*t-3 - t1*t-1*t-2 + t-1*t4 + t-2",
    "x1x2x1x2x1x2": "t3^3 - 3*t3*t-3 + 3",
}

# the inverse commutator reduces through P; kept apart since it needs P
INVERSE_COMMUTATOR_WORD = "x2x1X2X1"

# the nine coordinates and t(-5), as words
GENERATOR_WORDS = {
    1: "x1",
    -1: "X1",
    2: "x2",
    -2: "X2",
    3: "x1x2",
    -3: "X2X1",
    4: "x1X2",
    -4: "x2X1",
    5: "x1x2X1X2",
    -5: "x2x1X2X1",
}

# basis of the bilinear-form matrix, in order A1..A9
LAMBDA_BASIS_WORDS = ("x1", "x2", "X1", "X2", "x1x2", "x2x1", "x1X2", "X2x1", "x2X1")

# signed trace words whose sum is the bracket {t4, t5}
BRACKET_WORD_SUM = (
    ("x1X2X1X2x1x2", 1),
    ("x1X2", -1),
    ("X2^2 x1^2 x2X1", 1),
    ("X2x1X2x1x2X1", -1),
)
