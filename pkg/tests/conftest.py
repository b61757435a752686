"""Shared brute-force oracles and hypothesis strategies.

The helpers here deliberately avoid the package's own series arithmetic:
plain-list convolution, naive products, and explicit enumeration serve as
independent reference routes for the derived expected values.
"""

from fractions import Fraction

import pytest
from hypothesis import strategies as st


def naive_convolve(a, b, order):
    """Schoolbook product of coefficient lists, truncated to the order."""
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += Fraction(x) * Fraction(y)
    return out


def naive_pochhammer(a, step, order):
    """(q^a; q^step) by multiplying out the binomials one at a time."""
    out = [Fraction(1)] + [Fraction(0)] * order
    e = a
    while e <= order:
        factor = [Fraction(0)] * (order + 1)
        factor[0] = Fraction(1)
        factor[e] = Fraction(-1)
        out = naive_convolve(out, factor, order)
        e += step
    return out


def naive_geometric_power(a, m, order):
    """1/(1-q^a)^m by repeated naive multiplication of geometric series."""
    geo = [Fraction(1 if i % a == 0 else 0) for i in range(order + 1)]
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(m):
        out = naive_convolve(out, geo, order)
    return out


def divisor_sum(n):
    """sigma_1 by a full trial loop (independent of the package's version)."""
    return sum(d for d in range(1, n + 1) if n % d == 0)


def count_set_partitions_by_blocks(n):
    """counts[j] = number of partitions of an n-set into exactly j blocks,
    by explicit enumeration (element-by-element placement)."""
    counts = [0] * (n + 1)
    if n == 0:
        counts[0] = 1
        return counts

    def place(i, nblocks):
        if i == n:
            counts[nblocks] += 1
            return
        for _ in range(nblocks):
            place(i + 1, nblocks)
        place(i + 1, nblocks + 1)

    place(1, 1)
    return counts


def reduced_forms(D):
    """All reduced binary quadratic forms of discriminant D < 0, by a direct
    scan over a and b (independent of the package's divisor-based count)."""
    forms = []
    a = 1
    while 4 * a * a <= 3 * (-D):
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=8)


@st.composite
def qseries_coeffs(draw, length=41):
    return draw(st.lists(small_fractions, min_size=length, max_size=length))


@pytest.fixture(scope="session")
def goswami_cache():
    """Session-shared exact expansions, keyed (k, order)."""
    from gseries import goswami_series

    cache = {}

    def get(k, order):
        key = (k, order)
        if key not in cache:
            cache[key] = goswami_series(k, order)
        return cache[key]

    return get
