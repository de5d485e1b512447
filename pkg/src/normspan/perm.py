"""Permutations as tuples: ``p[i]`` is where ``i`` goes.

``compose(a, b)`` is ``a`` after ``b``.  A block permutation
``block(sigma, sizes)`` moves the ``i``-th block (of length ``sizes[i]``)
into slot ``sigma[i]``, keeping the order inside each block.
"""

from __future__ import annotations

from typing import Sequence


def identity(n: int) -> tuple:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(a[x] for x in b)


def inverse(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def block(sigma: Sequence[int], sizes: Sequence[int]) -> tuple:
    n = len(sigma)
    slot_size = [0] * n
    for i in range(n):
        slot_size[sigma[i]] = sizes[i]
    start, acc = [0] * n, 0
    for j in range(n):
        start[j] = acc
        acc += slot_size[j]
    out = []
    for i in range(n):
        s = start[sigma[i]]
        out.extend(range(s, s + sizes[i]))
    return tuple(out)


def direct_sum(perms: Sequence[Sequence[int]]) -> tuple:
    out, off = [], 0
    for p in perms:
        out.extend(off + x for x in p)
        off += len(p)
    return tuple(out)


def block_map(alpha: Sequence[int], src_sizes: Sequence[int], tgt_sizes: Sequence[int]) -> tuple:
    """Send position ``o`` of source block ``i`` to position ``o`` of target block ``alpha[i]``.

    Needs ``src_sizes[i] == tgt_sizes[alpha[i]]``.
    """
    tstart, acc = [], 0
    for s in tgt_sizes:
        tstart.append(acc)
        acc += s
    out = []
    for i, a in enumerate(alpha):
        if src_sizes[i] != tgt_sizes[a]:
            raise ValueError("block_map: block sizes do not match")
        out.extend(range(tstart[a], tstart[a] + src_sizes[i]))
    return tuple(out)


def disjoint_union_maps(maps: Sequence[Sequence[int]], tgt_sizes: Sequence[int]) -> tuple:
    """``f_1 + ... + f_n`` for maps ``f_i: [k_i] -> [tgt_sizes[i]]``."""
    out, off = [], 0
    for f, t in zip(maps, tgt_sizes):
        out.extend(off + x for x in f)
        off += t
    return tuple(out)
