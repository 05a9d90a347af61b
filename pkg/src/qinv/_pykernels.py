"""Pure-Python reference implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module.
"""

import numpy as np


def box_points(base, basis, lo, hi, qn, lin, bound):
    """Points P = base + sum a_i * basis_i with lo <= a <= hi (lexicographic
    in a, last coordinate fastest) such that qn*|P|^2 + lin.P <= bound."""
    base = [int(x) for x in base]
    basis = [[int(x) for x in row] for row in basis]
    lo = [int(x) for x in lo]
    hi = [int(x) for x in hi]
    lin = [int(x) for x in lin]
    k, r = len(basis), len(base)
    out = []
    if k == 0 or any(l > h for l, h in zip(lo, hi)):
        return np.zeros((0, r), dtype=np.int64)
    a = list(lo)
    # partial sums: rows[i] = base + sum_{j<i} a_j basis_j
    rows = [None] * (k + 1)
    rows[0] = base
    for i in range(k):
        rows[i + 1] = [x + a[i] * y for x, y in zip(rows[i], basis[i])]
    while True:
        P = rows[k]
        if qn * sum(x * x for x in P) + sum(x * y for x, y in zip(P, lin)) <= bound:
            out.append(P)
        i = k - 1
        while i >= 0 and a[i] == hi[i]:
            i -= 1
        if i < 0:
            break
        a[i] += 1
        rows[i + 1] = [x + y for x, y in zip(rows[i + 1], basis[i])]
        for j in range(i + 1, k):
            a[j] = lo[j]
            rows[j + 1] = [x + a[j] * y for x, y in zip(rows[j], basis[j])]
    return np.asarray(out, dtype=np.int64).reshape(len(out), r)


def accumulate(points, qn, lins, consts, signs, emin, length):
    """counts[e - emin] += sign_s for e = qn*|P|^2 + lins[s].P + consts[s]."""
    pts = np.asarray(points).tolist()
    lins = np.asarray(lins).tolist()
    consts = [int(c) for c in consts]
    signs = [int(s) for s in signs]
    counts = [0] * length
    for P in pts:
        q = qn * sum(x * x for x in P)
        for L, c, s in zip(lins, consts, signs):
            idx = q + sum(x * y for x, y in zip(P, L)) + c - emin
            if 0 <= idx < length:
                counts[idx] += s
    return np.asarray(counts, dtype=np.int64)


def mul_trunc(a, b, n):
    """First n coefficients of the product of dense integer sequences."""
    out = [0] * n
    # Python ints: this is also the exact fallback when int64 overflows
    a = [int(x) for x in a[:n]]
    b = [int(y) for y in b[:n]]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: n - i]):
                if y:
                    out[i + j] += x * y
    return out
