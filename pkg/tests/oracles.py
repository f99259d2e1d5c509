"""Brute-force reference functions written straight from the function definitions.

These never touch gates or circuits, so they stay independent of the code
they check.  Input layout: block i of width k holds inputs [i*k, (i+1)*k);
an EQ/COMP block is the n bits of X followed by the n bits of Y, MSB first.
"""


def to_int(bits):
    v = 0
    for b in bits:
        v = 2 * v + b
    return v


def blocks(X, width):
    return [tuple(X[i:i + width]) for i in range(0, len(X), width)]


def eq_bits(X, n):
    return [int(to_int(b[:n]) == to_int(b[n:])) for b in blocks(X, 2 * n)]


def comp_bits(X, n):
    return [int(to_int(b[:n]) >= to_int(b[n:])) for b in blocks(X, 2 * n)]


def and_eq(X, n):
    return int(all(eq_bits(X, n)))


def or_eq(X, n):
    return int(any(eq_bits(X, n)))


def parity_eq(X, n):
    return sum(eq_bits(X, n)) % 2


def parity_comp(X, n):
    return sum(comp_bits(X, n)) % 2


def ip2(X):
    # pairs (x_i, y_i) interleaved
    return sum(x * y for x, y in blocks(X, 2)) % 2


def omb(Z):
    for i, z in enumerate(Z, start=1):
        if z:
            return i % 2
    return 0


def omb_eq(X, n):
    return omb(eq_bits(X, n))


def family_oracle(family, n):
    return {
        "and-eq": lambda X: and_eq(X, n),
        "or-eq": lambda X: or_eq(X, n),
        "parity-eq": lambda X: parity_eq(X, n),
        "parity-comp": lambda X: parity_comp(X, n),
        "ip2": ip2,
        "omb-eq": lambda X: omb_eq(X, n),
    }[family]


def sample_ldl(X):
    x1, x2, x3, x4, x5 = X
    if x1 + x2 >= 1:
        return 1
    if 2 * x1 + x3 + x4 >= 2:
        return 0
    if x2 - x5 >= 0:
        return 0
    return 1


def symmetric_sample(X):
    return [1, 0, 1, 1, 1, 1, 1, 0, 1][sum(X)]
