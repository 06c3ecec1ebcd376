"""Valuations, exact roots and factorisation of integers."""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Sequence
from fractions import Fraction
from functools import reduce

from sympy import factorint, integer_nthroot, isprime, multiplicity
from sympy.ntheory.factor_ import perfect_power, pollard_rho

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from genusone.errors import ArgumentError, IncompleteFactorisationError

logger = logging.getLogger(__name__)

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_FACTOR_BUDGET = 10**7

Valuation = int | float


def vp(x: Fraction | int, p: int) -> Valuation:
    """
    p-adic valuation of a rational number.

    Args:
        x: The rational number
        p: A prime

    Returns:
        v_p(numerator) - v_p(denominator), or math.inf for zero
    """
    if p < 2 or not isprime(p):
        raise ArgumentError(f"{p} is not prime")
    value = Fraction(x)
    if value == 0:
        return math.inf
    return int(multiplicity(p, abs(value.numerator))) - int(
        multiplicity(p, value.denominator)
    )


def vp_all(values: list[Fraction] | tuple[Fraction, ...], p: int) -> Valuation:
    """Minimum valuation over a coefficient vector (inf when all vanish)."""
    return min((vp(v, p) for v in values), default=math.inf)


def iroot(x: int, k: int) -> int | None:
    """Exact k-th root of a positive integer, or None if x is not a k-th power."""
    if x <= 0 or k < 1:
        raise ArgumentError(f"iroot needs x > 0 and k >= 1, got ({x}, {k})")
    root, exact = integer_nthroot(x, k)
    return int(root) if exact else None


def factor(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> list[tuple[int, int]]:
    """
    Complete factorisation of a nonzero integer.

    Trial division up to 10**6 is followed by Pollard rho on each composite
    cofactor with at most ``budget`` iterations per attempt.

    Args:
        n: Nonzero integer
        budget: Pollard rho iteration cap

    Returns:
        Sorted list of (prime, exponent) pairs for |n|

    Raises:
        IncompleteFactorisationError: a cofactor resisted Pollard rho
    """
    if n == 0:
        raise ArgumentError("cannot factor 0")

    found: Counter[int] = Counter()
    pending: list[int] = []
    for q, e in factorint(abs(n), limit=TRIAL_DIVISION_LIMIT).items():
        if isprime(q):
            found[int(q)] += int(e)
        else:
            pending.extend([int(q)] * int(e))

    while pending:
        m = pending.pop()
        if m == 1:
            continue
        if isprime(m):
            found[m] += 1
            continue
        power = perfect_power(m)
        if power:
            base, exponent = power
            pending.extend([int(base)] * int(exponent))
            continue
        logger.debug("pollard rho on %d-digit cofactor", len(str(m)))
        divisor = None
        for attempt in range(3):
            divisor = pollard_rho(m, a=1 + 2 * attempt, max_steps=budget)
            if divisor:
                break
        if not divisor:
            raise IncompleteFactorisationError(m)
        divisor = int(divisor)
        pending.extend([divisor, m // divisor])

    return sorted(found.items())


def prime_divisors(n: int, budget: int = DEFAULT_FACTOR_BUDGET) -> list[int]:
    """Primes dividing a nonzero integer."""
    return [q for q, _ in factor(n, budget)]


def _unimodular_completion(v: list[int]) -> list[list[int]]:
    n = len(v)
    if n == 1:
        if v[0] != 1:
            raise ArgumentError(f"cannot complete {v} to a matrix of determinant 1")
        return [[1]]
    if n == 2:
        a, b = v
        x, y, g = igcdex(a, b)
        if g != 1:
            raise ArgumentError(f"vector {v} is not primitive")
        return [[a, -int(y)], [b, int(x)]]

    head, last = v[:-1], v[-1]
    d = reduce(math.gcd, head, 0)
    if d == 0:
        if abs(last) != 1:
            raise ArgumentError(f"vector {v} is not primitive")
        inner = [[int(i == j) for j in range(n - 1)] for i in range(n - 1)]
        s, t = 0, last
    else:
        s_, t_, g = igcdex(d, last)
        if g != 1:
            raise ArgumentError(f"vector {v} is not primitive")
        s, t = int(s_), int(t_)
        inner = _unimodular_completion([x // d for x in head])

    # U = diag(inner, 1) * V with V = I except V00 = d, V0n = -t, Vn0 = last, Vnn = s
    v_rows = [[int(i == j) for j in range(n)] for i in range(n)]
    v_rows[0][0], v_rows[0][n - 1] = d, -t
    v_rows[n - 1][0], v_rows[n - 1][n - 1] = last, s
    big = [row + [0] for row in inner] + [[0] * (n - 1) + [1]]
    return [
        [sum(big[i][k] * v_rows[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def complete_to_unimodular(v: Sequence[int], column: int = 0) -> list[list[int]]:
    """
    Integer matrix of determinant 1 with a given primitive vector as a column.

    Args:
        v: Primitive integer vector (gcd of entries is 1)
        column: Index of the column that should equal v

    Returns:
        Row-major integer matrix U with det U = 1
    """
    values = [int(x) for x in v]
    n = len(values)
    if not 0 <= column < n:
        raise ArgumentError(f"column {column} out of range for length {n}")
    u = _unimodular_completion(values)
    if column:
        for row in u:
            row[0], row[column] = -row[column], row[0]
    return u


def primitive(values: Sequence[Fraction | int]) -> tuple[list[int], Fraction]:
    """
    Scale a nonzero rational vector to a primitive integer vector.

    Returns:
        Tuple of (primitive vector, scale) with vector = scale * values
    """
    fracs = [Fraction(x) for x in values]
    if not any(fracs):
        raise ArgumentError("zero vector has no primitive representative")
    lcm = reduce(math.lcm, (f.denominator for f in fracs), 1)
    ints = [int(f * lcm) for f in fracs]
    g = reduce(math.gcd, ints, 0)
    return [x // g for x in ints], Fraction(lcm, g)
