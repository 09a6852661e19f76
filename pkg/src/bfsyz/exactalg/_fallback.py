"""Pure-Python twin of the compiled elimination kernel.

Same pivoting discipline as ``_speedups.pyx`` (leftmost column, first nonzero
row), operating on the same uint64 numpy buffers but doing the arithmetic with
Python integers so 62-bit primes cannot overflow.
"""

BACKEND_NAME = "python"


def rank_mod_p_dense(a, p: int) -> int:
    """Return the rank of ``a`` (2-D uint64 numpy array) over F_p."""
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return 0
    rows = a.tolist()
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        row_r = rows[r]
        inv = pow(row_r[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                row_r[j] = row_r[j] * inv % p
        for i in range(r + 1, nrows):
            row_i = rows[i]
            f = row_i[c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, ncols):
                row_i[j] = (row_r[j] * f + row_i[j]) % p
        r += 1
    return r
