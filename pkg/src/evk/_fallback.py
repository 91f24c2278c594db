"""Pure-Python (numpy) versions of the hot kernels in ``_kernels.pyx``."""
import numpy as np

_CHUNK = 1 << 15


def enumerate_solutions(B, b, m, n):
    """All x in Z_m^n with B x = b (mod m); rows of an (N, n) int64 array."""
    Bt = np.asarray(B, dtype=np.int64).reshape(-1, n).T % m  # (n, rows)
    rhs = np.asarray(b, dtype=np.int64) % m
    total = m ** n
    powers = m ** np.arange(n, dtype=np.int64)
    found = []
    for start in range(0, total, _CHUNK):
        lin = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = (lin[:, None] // powers) % m
        if Bt.shape[1] == 0:
            found.append(digits)
            continue
        res = (digits @ Bt - rhs) % m
        found.append(digits[~res.any(axis=1)])
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(found)


def apply_terms(idx, term_entry, term_skip, term_vertex, term_coef, x, n):
    """Sum coef * prod_{q != skip} x[idx[e, q]] into out[vertex] for every term."""
    x = np.asarray(x)
    out = np.zeros(n, dtype=x.dtype)
    if len(term_entry) == 0:
        return out
    X = x[idx]
    E, m = X.shape
    ones = np.ones((E, 1), dtype=X.dtype)
    pre = np.concatenate([ones, np.cumprod(X, axis=1)], axis=1)
    suf = np.concatenate([np.cumprod(X[:, ::-1], axis=1)[:, ::-1], ones], axis=1)
    excl = pre[term_entry, term_skip] * suf[term_entry, term_skip + 1]
    np.add.at(out, term_vertex, term_coef * excl)
    return out
