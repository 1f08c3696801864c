"""\
Dense linear algebra over the field with two elements.

Matrices are C{numpy} arrays of C{uint8} holding 0 and 1. Row reduction is
plain Gaussian elimination with XOR row operations; the sizes met in this
package (a few hundred chords at most) keep dense storage cheap.

@author: lchkit developers
@license: GPL-3
"""

import numpy as np


def asmatrix(M, shape=None):
    """\
    Coerce to an F2 matrix.

    @param M: Array-like of integers (reduced mod 2).
    @type M: C{object}
    @param shape: Shape to use when C{M} is empty.
    @type shape: C{tuple}
    @return: The F2 matrix.
    @rtype: C{numpy.ndarray}
    """
    A = np.asarray(M, dtype=np.int64)
    if A.size == 0 and shape is not None:
        return np.zeros(shape, dtype=np.uint8)
    return (A % 2).astype(np.uint8)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n):
    return np.eye(n, dtype=np.uint8)


def matmul(*factors):
    """\
    Product of F2 matrices, reduced mod 2 after each step.

    @return: The product matrix.
    @rtype: C{numpy.ndarray}
    """
    product = factors[0].astype(np.int64)
    for B in factors[1:]:
        product = (product @ B.astype(np.int64)) % 2
    return product.astype(np.uint8)


def row_echelon(M):
    """\
    Row-reduce to reduced row-echelon form.

    @param M: The matrix.
    @type M: C{numpy.ndarray}
    @return: The reduced matrix and its pivot columns.
    @rtype: C{tuple} of C{numpy.ndarray} and C{list}
    """
    R = asmatrix(M).copy()
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.where(R[r:, c])[0]
        if not rows.size:
            continue
        p = r + int(rows[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        ones = np.where(R[:, c])[0]
        ones = ones[ones != r]
        if ones.size:
            R[ones] ^= R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M):
    if 0 in M.shape:
        return 0
    return len(row_echelon(M)[1])


def nullspace(M):
    """\
    Basis of the kernel of C{M}, as the columns of the returned matrix.

    @param M: An m x n matrix.
    @type M: C{numpy.ndarray}
    @return: An n x k matrix whose columns span ker(M).
    @rtype: C{numpy.ndarray}
    """
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    R, pivots = row_echelon(M)
    free = [c for c in range(n) if c not in pivots]
    N = zeros(n, len(free))
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, p in enumerate(pivots):
            N[p, j] = R[i, f]
    return N


def colspace(M):
    """\
    An independent set of columns spanning the image of C{M}.
    """
    if 0 in M.shape:
        return zeros(M.shape[0], 0)
    pivots = row_echelon(M)[1]
    return M[:, pivots].copy()


def span_rank(*blocks):
    """\
    Dimension of the sum of the column spans of the given matrices, which
    must share their row count.
    """
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return 0
    return rank(np.hstack(blocks))


def in_span(v, M):
    return span_rank(M, v.reshape(-1, 1)) == span_rank(M)


def inverse(M):
    """\
    Inverse of a square F2 matrix.

    @raise ValueError: If the matrix is singular.
    """
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError('matrix is not square')
    R, pivots = row_echelon(np.hstack([asmatrix(M), identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ValueError('matrix is singular')
    return R[:, n:].copy()


def is_zero(M):
    return not M.any()
