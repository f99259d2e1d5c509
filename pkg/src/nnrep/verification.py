"""Exhaustive nearest-neighbour verification over the Boolean cube."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import kernel
from .errors import DimensionMismatch, EmptyAnchorSet, InputSpaceTooLarge
from .numerics import resolution_matrix
from .representations import AnchorSet

DEFAULT_MAX_BITS = 24


def bits_of(v: int, n: int) -> tuple[int, ...]:
    """Input number v as (x_1, ..., x_n), x_1 the most significant bit."""
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


@dataclass(frozen=True)
class Failure:
    x: str
    expected: int
    got: int
    anchor: int


@dataclass
class VerificationReport:
    passed: bool
    total_inputs: int
    failures: list[Failure] = field(default_factory=list)
    min_margin: Optional[Fraction] = None
    tie_violations: int = 0
    type_trace_ok: Optional[bool] = None

    def __bool__(self):
        return self.passed


def _sqdist(a: Sequence[Fraction], X: Sequence[int]) -> Fraction:
    return sum(((x - y) ** 2 for x, y in zip(X, a)), Fraction(0))


def nearest_anchor(A: AnchorSet, X: Sequence[int]) -> tuple[int, Fraction, bool]:
    """Lowest-index nearest anchor, its squared distance, and whether it wins strictly.

    Ties among anchors of the same label are fine; ``strict`` is False only when
    an anchor of the other label is exactly as close.
    """
    if A.size == 0:
        raise EmptyAnchorSet("anchor set is empty")
    if len(X) != A.n:
        raise DimensionMismatch(f"anchors live in dimension {A.n}, input has {len(X)}")
    dists = [_sqdist(a, X) for a in A.anchors]
    best = min(dists)
    idx = dists.index(best)
    label = A.labels[idx]
    strict = all(d > best for d, z in zip(dists, A.labels) if z != label)
    return idx, best, strict


def verify_exhaustive(
    A: AnchorSet,
    oracle: Callable[[tuple[int, ...]], int],
    *,
    max_bits: int = DEFAULT_MAX_BITS,
    type_rule: Optional[Callable[[tuple[int, ...]], set]] = None,
    backend: str = "auto",
) -> VerificationReport:
    """Check that the nearest anchor reproduces ``oracle`` on every binary input.

    ``type_rule`` maps an input to the set of anchor types allowed to be
    nearest; when given, ``type_trace_ok`` records whether every input obeyed it.
    """
    if A.size == 0:
        raise EmptyAnchorSet("anchor set is empty")
    n = A.n
    if n > max_bits:
        raise InputSpaceTooLarge(f"{n} input bits exceed the cap of {max_bits}")
    types = A.types if A.types is not None and all(0 <= t < 63 for t in A.types) else None
    L, argmin, best_pos, best_neg, type_mask = kernel.scan(
        A.anchors, A.labels, types, n, backend=backend
    )
    denom = L * L
    failures = []
    ties = 0
    margin = None
    trace_ok = True if type_rule is not None else None
    labels = A.labels
    for v in range(1 << n):
        X = bits_of(v, n)
        expected = oracle(X)
        bp, bn = best_pos[v], best_neg[v]
        if bp is not None and bn is not None:
            diff = bn - bp if expected == 1 else bp - bn
            if margin is None or diff < margin:
                margin = diff
            tied = bp == bn
        else:
            tied = False
        got = labels[argmin[v]]
        if tied:
            ties += 1
        if tied or got != expected:
            failures.append(Failure(format(v, f"0{n}b") if n else "", expected, got, argmin[v]))
        if type_rule is not None and trace_ok:
            mask = type_mask[v]
            allowed = type_rule(X)
            if mask == 0 or any((mask >> t) & 1 and t not in allowed for t in range(mask.bit_length())):
                trace_ok = False
    return VerificationReport(
        passed=not failures and ties == 0,
        total_inputs=1 << n,
        failures=failures,
        min_margin=None if margin is None else Fraction(margin, denom),
        tie_violations=ties,
        type_trace_ok=trace_ok,
    )


def size_and_resolution(A: AnchorSet) -> tuple[int, int]:
    return A.size, resolution_matrix(A.anchors)
