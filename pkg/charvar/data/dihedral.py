"""
The order-8 group generated by tau and iota acting on the subscripts of the
eight R-generators.  Names spell the element as a product, read left to
right, with i for iota and t for tau.
"""

ELEMENT_NAMES = ("id", "i", "t", "it", "ti", "tit", "iti", "titi")

# cycle notation on the subscripts +-1..+-4
ELEMENT_CYCLES = {
    "id": (),
    "i": ((1, -1), (3, -4), (-3, 4)),
    "t": ((1, 2), (-1, -2), (4, -4)),
    "it": ((1, 2, -1, -2), (3, -4, -3, 4)),
    "ti": ((1, -2, -1, 2), (3, 4, -3, -4)),
    "tit": ((2, -2), (3, 4), (-3, -4)),
    "iti": ((1, -2), (2, -1), (3, -3)),
    "titi": ((1, -1), (2, -2), (3, -3), (4, -4)),
}

# row element composed with column element
CAYLEY_TABLE = {
    "id": ("id", "i", "t", "it", "ti", "tit", "iti", "titi"),
    "i": ("i", "id", "it", "t", "iti", "titi", "ti", "tit"),
    "t": ("t", "ti", "id", "tit", "i", "it", "titi", "iti"),
    "it": ("it", "iti", "i", "titi", "id", "t", "tit", "ti"),
    "ti": ("ti", "t", "tit", "id", "titi", "iti", "i", "it"),
    "tit": ("tit", "titi", "ti", "iti", "t", "id", "it", "i"),
    "iti": ("iti", "it", "titi", "i", "tit", "ti", "id", "t"),
    "titi": ("titi", "tit", "iti", "ti", "it", "i", "t", "id"),
}
