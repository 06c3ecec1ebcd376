"""Linear algebra and binary forms over the prime field F_p."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from sympy import Poly, Symbol, isprime

from genusone.arith.integers import complete_to_unimodular
from genusone.errors import ArgumentError, InvariantViolationError

logger = logging.getLogger(__name__)

IntMatrix = list[list[int]]
Point = tuple[int, ...]

_X = Symbol("X")


def _check_prime(p: int) -> None:
    if p < 2 or not isprime(p):
        raise ArgumentError(f"{p} is not prime")


def reduce_vector(v: Sequence[int], p: int) -> tuple[int, ...]:
    """Reduce an integer vector mod p."""
    return tuple(int(x) % p for x in v)


def gf_rref(rows: Sequence[Sequence[int]], p: int) -> tuple[IntMatrix, list[int]]:
    """
    Reduced row echelon form over F_p.

    Args:
        rows: Integer matrix (row-major)
        p: Prime modulus

    Returns:
        Tuple of (nonzero rows of the rref, pivot columns)
    """
    _check_prime(p)
    m = [[int(x) % p for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r], strict=True)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def gf_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p."""
    return len(gf_rref(rows, p)[1])


def gf_kernel(
    rows: Sequence[Sequence[int]], p: int, ncols: int | None = None
) -> IntMatrix:
    """
    Basis of the right kernel over F_p, in echelon form.

    Args:
        rows: Integer matrix (may be empty if ncols is given)
        p: Prime modulus
        ncols: Number of columns when rows is empty

    Returns:
        List of kernel vectors; its length is ncols - rank
    """
    width = len(rows[0]) if rows else (ncols or 0)
    reduced, pivots = gf_rref(rows, p) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis: IntMatrix = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for row, c in zip(reduced, pivots, strict=True):
            v[c] = (-row[f]) % p
        basis.append(v)
    return basis


def gf_solve(
    rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int
) -> list[int] | None:
    """
    One solution of rows · x = rhs over F_p.

    Free variables are set to zero.

    Returns:
        The solution reduced mod p, or None when the system is inconsistent
    """
    if len(rows) != len(rhs):
        raise ArgumentError("right-hand side length does not match the matrix")
    width = len(rows[0]) if rows else 0
    augmented = [[*row, b] for row, b in zip(rows, rhs, strict=True)]
    reduced, pivots = gf_rref(augmented, p) if augmented else ([], [])
    if width in pivots:
        return None
    x = [0] * width
    for row, c in zip(reduced, pivots, strict=True):
        x[c] = row[width]
    return x


def gf_intersect(
    first: Sequence[Sequence[int]], second: Sequence[Sequence[int]], p: int
) -> IntMatrix:
    """Basis of the intersection of two row spaces over F_p."""
    if not first or not second:
        return []
    k = len(first)
    # a·first = b·second  <=>  (a, b) in the left kernel of [first; -second]
    stacked = [list(r) for r in first] + [[-x for x in r] for r in second]
    transposed = [list(col) for col in zip(*stacked, strict=True)]
    vectors = []
    for sol in gf_kernel(transposed, p):
        v = [
            sum(sol[i] * first[i][j] for i in range(k)) % p
            for j in range(len(first[0]))
        ]
        if any(v):
            vectors.append(v)
    reduced, _ = gf_rref(vectors, p) if vectors else ([], [])
    return reduced


def gf_matmul(a: IntMatrix, b: IntMatrix, p: int) -> IntMatrix:
    """Matrix product over F_p."""
    return [
        [
            sum(x * y for x, y in zip(row, col, strict=True)) % p
            for col in zip(*b, strict=True)
        ]
        for row in a
    ]


def gf_det(rows: IntMatrix, p: int) -> int:
    """Determinant over F_p by elimination."""
    m = [[x % p for x in row] for row in rows]
    n = len(m)
    det = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], -1, p)
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[c], strict=True)]
    return det % p


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _lift_point(point: Point, p: int) -> IntMatrix:
    lead = next(x for x in point if x)
    inv = pow(lead, -1, p)
    u = complete_to_unimodular([x * inv % p for x in point], column=0)
    if gf_rank([list(point), [row[0] for row in u]], p) != 1:
        raise InvariantViolationError("sl_lift produced the wrong image mod p")
    return u


def sl_lift(targets: Sequence[Sequence[int]], p: int, n: int) -> IntMatrix:
    """
    Lift a point or flag of P^{n-1}(F_p) to a matrix in SL_n(Z).

    The returned U has det(U) = 1 exactly and its first len(targets)
    columns reduce mod p to the targets. A single point is scaled so its
    first nonzero coordinate is 1, lifted with entries in [0, p) and
    completed by Hermite completion; U e_1 then spans the point mod p.

    Args:
        targets: One to n-1 integer vectors, independent mod p
        p: Prime modulus
        n: Dimension

    Returns:
        Integer matrix U (row-major)
    """
    _check_prime(p)
    cols = [reduce_vector(t, p) for t in targets]
    if not cols or len(cols) >= n + 1 or any(len(c) != n for c in cols):
        raise ArgumentError(f"sl_lift needs 1..{n} vectors of length {n}")
    if gf_rank([list(c) for c in cols], p) != len(cols):
        raise ArgumentError("sl_lift targets are zero or dependent mod p")
    if len(cols) == 1:
        return _lift_point(cols[0], p)

    basis = [list(c) for c in cols]
    for i in range(n):
        if len(basis) == n:
            break
        e = [int(i == j) for j in range(n)]
        if gf_rank([*basis, e], p) > len(basis):
            basis.append(e)

    b = [[basis[j][i] for j in range(n)] for i in range(n)]
    d = gf_det(b, p)
    if d != 1:
        if len(cols) == n:
            raise ArgumentError("sl_lift targets span a matrix with det != 1 mod p")
        inv = pow(d, -1, p)
        for i in range(n):
            b[i][n - 1] = b[i][n - 1] * inv % p

    # Row-reduce b to the identity with transvections row_i += c*row_j only.
    ops: list[tuple[int, int, int]] = []
    m = [row[:] for row in b]

    def add_row(i: int, j: int, c: int) -> None:
        c %= p
        if c:
            m[i] = [(a + c * x) % p for a, x in zip(m[i], m[j], strict=True)]
            ops.append((i, j, c))

    for c in range(n):
        if m[c][c] == 0:
            src = next(i for i in range(c + 1, n) if m[i][c])
            add_row(c, src, 1)
        if m[c][c] != 1:
            if c == n - 1:
                raise InvariantViolationError("sl_lift: determinant not 1 mod p")
            a = m[c][c]
            add_row(c + 1, c, (1 - a - m[c + 1][c]) * pow(a, -1, p))
            add_row(c, c + 1, 1)
        for i in range(n):
            if i != c and m[i][c]:
                add_row(i, c, -m[i][c])

    # b = E_1^{-1} ... E_k^{-1}; each inverse is an integral transvection.
    u = _identity(n)
    for i, j, c in ops:
        # right-multiply by (I - c e_i e_j^t): column j -= c * column i
        for r in range(n):
            u[r][j] -= c * u[r][i]

    for k, col in enumerate(cols):
        if reduce_vector([u[r][k] for r in range(n)], p) != col:
            raise InvariantViolationError("sl_lift produced the wrong image mod p")
    return u


def _form_poly(coeffs: Sequence[int], p: int) -> Poly:
    d = len(coeffs) - 1
    return Poly(
        sum(int(c) * _X ** (d - i) for i, c in enumerate(coeffs)), _X, modulus=p
    )


def binary_form_roots(coeffs: Sequence[int], p: int) -> list[tuple[Point, int]]:
    """
    Roots in P^1(F_p) of a binary form, with multiplicities.

    Args:
        coeffs: Coefficients of x^d, x^{d-1} z, ..., z^d
        p: Prime modulus

    Returns:
        List of ((x, z), multiplicity); the point at infinity is (1, 0)
    """
    _check_prime(p)
    d = len(coeffs) - 1
    reduced = [int(c) % p for c in coeffs]
    if not any(reduced):
        raise ArgumentError("binary form vanishes identically mod p")
    poly = _form_poly(reduced, p)
    degree = poly.degree()
    roots: list[tuple[Point, int]] = []
    if degree < d:
        roots.append(((1, 0), d - degree))
    if degree > 0:
        _, factors = poly.factor_list()
        for fac, mult in factors:
            if fac.degree() == 1:
                a, b = (int(c) % p for c in fac.all_coeffs())
                roots.append(((-b * pow(a, -1, p) % p, 1), int(mult)))
    return roots


def eval_binary_form(coeffs: Sequence[int], point: Point, p: int) -> int:
    """Evaluate a binary form at (x, z) mod p."""
    d = len(coeffs) - 1
    x, z = point
    return sum(int(c) * x ** (d - i) * z**i for i, c in enumerate(coeffs)) % p


def binary_common_root(
    f: Sequence[int], g: Sequence[int], p: int
) -> Point | None:
    """A common root in P^1(F_p) of two binary forms, or None."""
    f_zero = not any(int(c) % p for c in f)
    g_zero = not any(int(c) % p for c in g)
    if f_zero and g_zero:
        return (1, 0)
    if f_zero:
        f, g = g, f
    for root, _ in binary_form_roots(f, p):
        if eval_binary_form(g, root, p) == 0:
            return root
    return None


def binary_quadratic_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of a1 x^2 + b1 xz + c1 z^2 and a2 x^2 + b2 xz + c2 z^2."""
    a1, b1, c1 = (int(c) for c in f)
    a2, b2, c2 = (int(c) for c in g)
    return (a1 * c2 - a2 * c1) ** 2 - (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1)


def gf_inverse(rows: IntMatrix, p: int) -> IntMatrix:
    """Inverse of a square matrix over F_p."""
    n = len(rows)
    augmented = [[*row, *(int(i == j) for j in range(n))] for i, row in enumerate(rows)]
    reduced, pivots = gf_rref(augmented, p)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ArgumentError("matrix is singular mod p")
    return [row[n:] for row in reduced]


def sl_lift_at(
    targets: Sequence[Sequence[int]], positions: Sequence[int], p: int, n: int
) -> IntMatrix:
    """
    Matrix in SL_n(Z) whose columns at the given positions reduce mod p to
    a basis of the span of the targets.

    Returns the identity when the span already equals that of the
    corresponding coordinate vectors; a single target keeps its direction.

    Args:
        targets: Independent vectors mod p
        positions: Distinct column indices, one per target
        p: Prime modulus
        n: Dimension

    Returns:
        Integer matrix U (row-major) with det(U) = 1
    """
    if len(positions) != len(targets) or len(set(positions)) != len(positions):
        raise ArgumentError("sl_lift_at needs one distinct position per target")
    units = [[int(i == k) for i in range(n)] for k in positions]
    rank = len(targets)
    if gf_rank([*(list(t) for t in targets), *units], p) == rank:
        return _identity(n)
    u = sl_lift(targets, p, n)
    rest = [k for k in range(n) if k not in positions]
    order = [0] * n
    for src, dst in enumerate(positions):
        order[dst] = src
    for src, dst in enumerate(rest, start=rank):
        order[dst] = src
    moved = [[row[order[c]] for c in range(n)] for row in u]
    if _permutation_sign(order) < 0:
        flip = rest[0] if rest else positions[-1]
        for row in moved:
            row[flip] = -row[flip]
    return moved


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
