"""Published reference values for H^3 (arity 3), embedded as data.

Both tables cover 0 <= lambda <= 30; outside that window there is no
reference and no divergence can be flagged.
"""

from __future__ import annotations

from typing import Optional

REFERENCE_RANGE = range(0, 31)

RELATIVE_H3 = {9: 1, 11: 1}
ABSOLUTE_H3 = {5: 1, 6: 1, 7: 2, 8: 2, 9: 1, 11: 1}

# graded piece -> (tuple, coefficient) fixing the scale of the representative
REPRESENTATIVE_NORMALIZATION = {
    (3, 9, True): ((3, 4, 5), 1),
    (3, 11, True): ((3, 5, 6), -14),
}


def reference_dim(arity: int, lam, relative: bool) -> Optional[int]:
    if arity != 3 or not isinstance(lam, int) or lam not in REFERENCE_RANGE:
        return None
    table = RELATIVE_H3 if relative else ABSOLUTE_H3
    return table.get(lam, 0)
