import itertools

import numpy as np
import pytest


def dense_rank(rows):
    """Textbook elimination on a list-of-lists 0/1 matrix; independent of gf2."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(nrows):
            if i != rank and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def brute_monomial_value(mask, point):
    """M(u) straight from the definition: product of selected coordinates."""
    m = mask.bit_length()
    val = 1
    for j in range(m):
        if (mask >> j) & 1:
            val *= (point >> j) & 1
    return val


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def subsets_up_to(items, k):
    for size in range(k + 1):
        yield from itertools.combinations(items, size)
