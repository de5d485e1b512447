"""Search kernels over relations encoded as bitmasks.

A relation on at most 62 variables is an ``int64`` whose bit ``i`` says that
variable ``i`` holds.  The rules are Horn clauses: ``unary[i]`` is the mask
forced by ``i`` alone and ``(b, c)`` in ``binary[i]`` says ``i and b => c``.
Both kernels are plain Python over numpy arrays; numba compiles them when it
is installed, which is what makes groups with millions of models tractable.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a soft accelerator
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _close(inc, var, unary, bin_ptr, bin_b, bin_c, work):
    one = np.int64(1)
    inc |= one << var
    top = 0
    work[top] = var
    top += 1
    while top > 0:
        top -= 1
        q = work[top]
        new = unary[q] & ~inc
        for j in range(bin_ptr[q], bin_ptr[q + 1]):
            if (inc >> bin_b[j]) & one:
                new |= (one << bin_c[j]) & ~inc
        inc |= new
        while new:
            low = new & -new
            bit = 0
            while (low >> bit) != one:
                bit += 1
            work[top] = bit
            top += 1
            new ^= low
    return inc


@njit(cache=True)
def enumerate_models(n, start, unary, bin_ptr, bin_b, bin_c, out):
    """Write every closed relation containing ``start`` into ``out``.

    Returns the number of models; if ``out`` is too small the count keeps
    going but only the first ``len(out)`` are stored.  Each model is reached
    exactly once: variables are decided in order, and the exclusion branch
    is always consistent because the included set is kept closed.
    """
    one = np.int64(1)
    cap = out.shape[0]
    stack_inc = np.zeros(2 * n + 2, dtype=np.int64)
    stack_exc = np.zeros(2 * n + 2, dtype=np.int64)
    stack_pos = np.zeros(2 * n + 2, dtype=np.int64)
    work = np.zeros(64 * (n + 1), dtype=np.int64)
    count = 0
    top = 0
    stack_inc[0] = start
    stack_exc[0] = 0
    stack_pos[0] = 0
    top = 1
    while top > 0:
        top -= 1
        inc = stack_inc[top]
        exc = stack_exc[top]
        i = stack_pos[top]
        while i < n and (((inc >> i) & one) or ((exc >> i) & one)):
            i += 1
        if i == n:
            if count < cap:
                out[count] = inc
            count += 1
            continue
        stack_inc[top] = inc
        stack_exc[top] = exc | (one << i)
        stack_pos[top] = i + 1
        top += 1
        c = _close(inc, i, unary, bin_ptr, bin_b, bin_c, work)
        if (c & exc) == 0:
            stack_inc[top] = c
            stack_exc[top] = exc
            stack_pos[top] = i + 1
            top += 1
    return count


@njit(cache=True)
def first_violation(models, prem, concl):
    """For each model, the index of the first implication ``prem => concl`` it breaks, or -1."""
    m = models.shape[0]
    k = prem.shape[0]
    res = np.full(m, -1, dtype=np.int64)
    for s in range(m):
        S = models[s]
        for j in range(k):
            if (S & prem[j]) == prem[j] and (S & concl[j]) != concl[j]:
                res[s] = j
                break
    return res
