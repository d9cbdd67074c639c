"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the library's own algorithms: the Mobius number
comes from chain counting, invariant factors from gcds of minors, and
comparability from transitive closure over the cover relation.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def hall_mobius(poset) -> int:
    """Mobius number as the signed count of bottom-to-top chains."""
    below = poset.below
    total = 0
    stack = [(poset.bottom, 0)]
    while stack:
        x, length = stack.pop()
        if x == poset.top:
            total += -1 if length % 2 else 1
            continue
        for y in range(len(poset)):
            if y != x and (below[y] >> x) & 1:
                stack.append((y, length + 1))
    return total


def closure_from_covers(poset):
    """Strict comparability pairs obtained by closing the cover relation."""
    n = len(poset)
    reach = [set(poset.upcovers[i]) for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set()
            for j in reach[i]:
                extra |= reach[j]
            if not extra <= reach[i]:
                reach[i] |= extra
                changed = True
    return {(i, j) for i in range(n) for j in reach[i]}


def _det(mat) -> int:
    """Exact determinant by fraction-full elimination on small matrices."""
    n = len(mat)
    m = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    assert det.denominator == 1
    return det.numerator


def snf_by_minors(rows):
    """(invariant factors, rank) from gcds of k x k minors."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    gcds = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rsel in combinations(range(nr), k):
            for csel in combinations(range(nc), k):
                minor = _det([[rows[i][j] for j in csel] for i in rsel])
                g = gcd(g, minor)
        if g == 0:
            break
        gcds.append(g)
    rank = len(gcds) - 1
    factors = [gcds[k] // gcds[k - 1] for k in range(1, rank + 1)]
    return factors, rank


def count_chains_by_length(poset):
    """Number of nonempty chains of each size, by dynamic programming."""
    n = len(poset)
    below = poset.below
    order = sorted(range(n), key=lambda i: bin(below[i]).count("1"))
    ending = {i: {1: 1} for i in range(n)}
    for j in order:
        for i in range(n):
            if i != j and (below[j] >> i) & 1:
                for size, cnt in ending[i].items():
                    ending[j][size + 1] = ending[j].get(size + 1, 0) + cnt
    totals = {}
    for table in ending.values():
        for size, cnt in table.items():
            totals[size] = totals.get(size, 0) + cnt
    return totals
