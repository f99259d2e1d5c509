"""Backend selection for the exhaustive cube scan.

The compiled extension (``nnrep._scan``) is used when it was built and the
scaled keys fit in int64; otherwise the pure-Python scan runs on unbounded
ints.  Set ``NNREP_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

from . import _scan_py

try:
    from . import _scan as _compiled
except ImportError:  # extension not built
    _compiled = None

if os.environ.get("NNREP_PURE_PYTHON"):
    _compiled = None

INT64_LIMIT = 2**62


def compiled_available() -> bool:
    return _compiled is not None


def scale_anchors(anchors):
    """Clear denominators: returns (L, integer rows L*a, |L*a|^2)."""
    L = 1
    for row in anchors:
        for x in row:
            L = lcm(L, Fraction(x).denominator)
    points = [[int(Fraction(x) * L) for x in row] for row in anchors]
    sq = [sum(p * p for p in row) for row in points]
    return L, points, sq


def fits_int64(points, sq, scale) -> bool:
    bound = max(sq, default=0) + 2 * scale * max((sum(abs(p) for p in row) for row in points), default=0)
    return bound < INT64_LIMIT and scale < INT64_LIMIT


def scan(anchors, labels, types, nbits, backend: str = "auto"):
    """Scan every input of the cube; returns (L, argmin, best_pos, best_neg, type_mask)."""
    L, points, sq = scale_anchors(anchors)
    types = list(types) if types is not None else [None] * len(points)
    if backend not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    use_compiled = backend != "python" and _compiled is not None and fits_int64(points, sq, L)
    if backend == "compiled" and not use_compiled:
        raise RuntimeError("compiled backend unavailable for this input")
    impl = _compiled.scan_cube if use_compiled else _scan_py.scan_cube
    return (L,) + tuple(impl(points, sq, L, list(labels), types, nbits))
