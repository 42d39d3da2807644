"""
Characteristic sequences
========================

Any integer power series with constant term 1 factors as an infinite
product of powers of (1 - q^k).  The exponents can be read off in two
independent ways, and for 1 - n q they are the dimensions of the free Lie
algebra on n generators.
"""

from kacmoody import (
    RationalFunction,
    Series,
    char_sequence,
    char_sequence_log,
    expand,
    rebuild,
    witt_dim,
)

# 1 - 2q, known through q^18
f = Series.from_coeffs([1, -2], 18)

peeled = char_sequence(f, 18)      # divide off one factor per degree
via_log = char_sequence_log(f, 18)  # logarithm plus Moebius inversion
print("peeling:  ", peeled.i)
print("logarithm:", via_log.i)
print("Witt:     ", tuple(witt_dim(2, k) for k in range(1, 19)))

# the product of the factors gives the series back
print(rebuild(peeled, 18) == f)

# exponents add under multiplication
g = Series.from_coeffs([1, 1, -3, 2], 18)
print(char_sequence(f * g, 18) == peeled + char_sequence(g, 18))

# a rational input: 1/(1 - q) is a single factor with exponent -1
h = expand(RationalFunction.from_polys((1,), (1, -1)), 6)
print(char_sequence(h, 6).i)
