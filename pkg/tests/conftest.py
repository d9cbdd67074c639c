import pytest

import properdiv as pd


@pytest.fixture(scope="session")
def pab_reduced():
    """Reduced homology summaries (with torsion) for all P(a, b), 2 <= a <= b <= 8."""
    out = {}
    for a in range(2, 9):
        for b in range(a, 9):
            cx = pd.order_complex(pd.proper_divisibility_poset((a, b)))
            out[(a, b)] = pd.homology(cx, reduced=True, torsion=True)
    return out
