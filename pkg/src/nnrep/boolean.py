"""Threshold gates, depth-2 circuits, decision lists and the named function families.

Inputs are tuples of 0/1 ints.  Everything here is immutable and exact; these
evaluators are the ground truth the verifier compares anchor sets against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .errors import DimensionMismatch

LINEAR = "linear"
EXACT = "exact"
GateKind = Literal["linear", "exact"]


@dataclass(frozen=True)
class ThresholdGate:
    """``1{w.X >= b}`` (linear) or ``1{w.X == b}`` (exact) with integer ``w``."""

    weights: tuple[int, ...]
    bias: Fraction
    kind: GateKind = LINEAR

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "bias", Fraction(self.bias))
        if not self.weights:
            raise ValueError("a gate needs at least one weight")
        if self.kind not in (LINEAR, EXACT):
            raise ValueError(f"unknown gate kind {self.kind!r}")

    @property
    def arity(self) -> int:
        return len(self.weights)

    @property
    def norm2(self) -> int:
        return sum(w * w for w in self.weights)

    def value(self, X: Sequence[int]) -> int:
        if len(X) != len(self.weights):
            raise DimensionMismatch(f"gate has {len(self.weights)} inputs, got {len(X)}")
        return sum(w * x for w, x in zip(self.weights, X))

    def __call__(self, X: Sequence[int]) -> int:
        s = self.value(X)
        if self.kind == LINEAR:
            return int(s >= self.bias)
        return int(s == self.bias)


def eval_gate(g: ThresholdGate, X: Sequence[int]) -> int:
    return g(X)


@dataclass(frozen=True)
class SymmetricProfile:
    """Values of a symmetric top gate g(Z) indexed by |Z| = 0..m."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("profile must have at least one value")
        if any(v not in (0, 1) for v in vals):
            raise ValueError("profile values must be bits")
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def __call__(self, weight: int) -> int:
        return self.values[weight]

    @classmethod
    def from_intervals(cls, boundaries: Sequence[int], first_value: int) -> "SymmetricProfile":
        """Inverse of :func:`intervals`: alternate values over consecutive runs."""
        values = []
        prev, v = -1, int(first_value)
        for b in boundaries:
            values.extend([v] * (b - prev))
            prev, v = b, 1 - v
        return cls(tuple(values))


def intervals(p: SymmetricProfile) -> list[int]:
    """Right endpoints I_1 < ... < I_{I(g)} = m of the maximal constant runs."""
    vals = p.values
    ends = [i for i in range(len(vals) - 1) if vals[i] != vals[i + 1]]
    ends.append(len(vals) - 1)
    return ends


def interval_index(boundaries: Sequence[int], weight: int) -> int:
    """1-based index l of the interval [I_{l-1}+1, I_l] holding ``weight``."""
    for l, right in enumerate(boundaries, start=1):
        if weight <= right:
            return l
    raise ValueError(f"weight {weight} beyond last boundary {boundaries[-1]}")


def _check_shared_arity(gates: Sequence[ThresholdGate]) -> int:
    if not gates:
        raise ValueError("need at least one gate")
    n = gates[0].arity
    if any(g.arity != n for g in gates):
        raise DimensionMismatch("all gates must read the same number of inputs")
    return n


@dataclass(frozen=True)
class Depth2Circuit:
    """A first layer of threshold gates feeding a symmetric top gate.

    ``xstar_hint`` is an optional binary X* with W X* = b supplied by a family
    builder; it lets regularity checks skip the exhaustive search.
    """

    gates: tuple[ThresholdGate, ...]
    top: SymmetricProfile
    xstar_hint: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        _check_shared_arity(self.gates)
        if self.top.m != len(self.gates):
            raise DimensionMismatch(
                f"top profile covers {self.top.m} gates but circuit has {len(self.gates)}"
            )

    @property
    def n(self) -> int:
        return self.gates[0].arity

    @property
    def m(self) -> int:
        return len(self.gates)

    def layer(self, X: Sequence[int]) -> tuple[int, ...]:
        return tuple(g(X) for g in self.gates)

    def __call__(self, X: Sequence[int]) -> int:
        return self.top(sum(self.layer(X)))


def eval_depth2(c: Depth2Circuit, X: Sequence[int]) -> int:
    return c(X)


LDL = "LDL"
EDL = "EDL"


@dataclass(frozen=True)
class DecisionList:
    """Ordered gates; the first firing gate k outputs ``outputs[k]``, else ``default``."""

    gates: tuple[ThresholdGate, ...]
    outputs: tuple[int, ...]
    default: int
    xstar_hint: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(int(z) for z in self.outputs))
        object.__setattr__(self, "default", int(self.default))
        _check_shared_arity(self.gates)
        if len(self.outputs) != len(self.gates):
            raise DimensionMismatch("one output label per gate is required")
        kinds = {g.kind for g in self.gates}
        if len(kinds) != 1:
            raise ValueError("decision list gates must all be linear or all exact")

    @property
    def kind(self) -> str:
        return LDL if self.gates[0].kind == LINEAR else EDL

    @property
    def n(self) -> int:
        return self.gates[0].arity

    @property
    def m(self) -> int:
        return len(self.gates)

    def labels(self) -> tuple[int, ...]:
        """z_1..z_m followed by the default z_{m+1}."""
        return self.outputs + (self.default,)

    def __call__(self, X: Sequence[int]) -> int:
        for g, z in zip(self.gates, self.outputs):
            if g(X):
                return z
        return self.default


def eval_decision_list(l: DecisionList, X: Sequence[int]) -> int:
    return l(X)


@dataclass(frozen=True)
class DomCircuit:
    """First-layer gates feeding ``1{sum_i top_weights[i] * f_i(X) >= threshold}``."""

    gates: tuple[ThresholdGate, ...]
    top_weights: tuple[int, ...]
    threshold: int

    def __call__(self, X: Sequence[int]) -> int:
        s = sum(w * g(X) for w, g in zip(self.top_weights, self.gates))
        return int(s >= self.threshold)


def dl_to_dom_circuit(l: DecisionList) -> DomCircuit:
    """Compile a decision list to a depth-2 circuit with a DOM top gate."""
    m = l.m
    weights = tuple((1 if z == 1 else -1) * 2 ** (m - i) for i, z in enumerate(l.outputs, start=1))
    return DomCircuit(l.gates, weights, 1 - l.default)


# --- named families -------------------------------------------------------


def _binary_weights(n: int) -> list[int]:
    return [2 ** (n - 1 - i) for i in range(n)]


def build_eq(n: int) -> ThresholdGate:
    """EQ_2n on (X, Y), X and Y n-bit unsigned integers, most significant bit first."""
    w = _binary_weights(n)
    return ThresholdGate(tuple(w + [-x for x in w]), 0, EXACT)


def build_comp(n: int) -> ThresholdGate:
    """COMP_2n: 1{X >= Y}."""
    w = _binary_weights(n)
    return ThresholdGate(tuple(w + [-x for x in w]), 0, LINEAR)


def build_and2() -> ThresholdGate:
    return ThresholdGate((1, 1), 2, LINEAR)


def build_parity(m: int) -> SymmetricProfile:
    return SymmetricProfile(tuple(k % 2 for k in range(m + 1)))


def build_or(m: int) -> SymmetricProfile:
    return SymmetricProfile((0,) + (1,) * m)


def build_and(m: int) -> SymmetricProfile:
    return SymmetricProfile((0,) * m + (1,))


def _place(gate: ThresholdGate, block: int, m: int) -> ThresholdGate:
    k = gate.arity
    weights = [0] * (k * m)
    weights[block * k:(block + 1) * k] = gate.weights
    return ThresholdGate(tuple(weights), gate.bias, gate.kind)


def _template_xstar(gate: ThresholdGate) -> Optional[tuple[int, ...]]:
    # analytic X* for the known templates: EQ/COMP -> zeros, AND_2 -> ones
    if gate == build_and2():
        return (1, 1)
    if gate.bias == 0:
        return (0,) * gate.arity
    return None


def _disjoint_gates(gate_template: ThresholdGate, m: int):
    gates = tuple(_place(gate_template, i, m) for i in range(m))
    block = _template_xstar(gate_template)
    hint = block * m if block is not None else None
    return gates, hint


def compose_disjoint(top: SymmetricProfile, gate_template: ThresholdGate, m: int) -> Depth2Circuit:
    """m copies of ``gate_template``; copy i reads inputs [i*k, (i+1)*k)."""
    gates, hint = _disjoint_gates(gate_template, m)
    return Depth2Circuit(gates, top, hint)


def build_omb_list(m: int, gate_template: Optional[ThresholdGate] = None) -> DecisionList:
    """ODD-MAX-BIT as a decision list with labels 1, 0, 1, ... and default 0.

    Without a template the list reads Z directly through gates 1{z_i >= 1}.
    """
    outputs = tuple((i + 1) % 2 for i in range(m))
    if gate_template is None:
        gates = tuple(
            ThresholdGate(tuple(1 if j == i else 0 for j in range(m)), 1, LINEAR) for i in range(m)
        )
        return DecisionList(gates, outputs, 0)
    gates, hint = _disjoint_gates(gate_template, m)
    return DecisionList(gates, outputs, 0, hint)


FAMILIES = ("and-eq", "or-eq", "parity-eq", "parity-comp", "ip2", "omb-eq")


def build_family(name: str, m: int, n: int):
    """Circuit (or decision list) for a named family; ``ip2`` uses n pairs and ignores m."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if name == "and-eq":
        return compose_disjoint(build_and(m), build_eq(n), m)
    if name == "or-eq":
        return compose_disjoint(build_or(m), build_eq(n), m)
    if name == "parity-eq":
        return compose_disjoint(build_parity(m), build_eq(n), m)
    if name == "parity-comp":
        return compose_disjoint(build_parity(m), build_comp(n), m)
    if name == "ip2":
        return compose_disjoint(build_parity(n), build_and2(), n)
    if name == "omb-eq":
        return build_omb_list(m, build_eq(n))
    raise ValueError(f"unknown family {name!r}")


# Small worked examples, used by the tests.


def sample_ldl() -> DecisionList:
    """Depth-3 LDL over x1..x5: x1+x2>=1 -> 1; 2x1+x3+x4>=2 -> 0; x2-x5>=0 -> 0; else 1."""
    gates = (
        ThresholdGate((1, 1, 0, 0, 0), 1),
        ThresholdGate((2, 0, 1, 1, 0), 2),
        ThresholdGate((0, 1, 0, 0, -1), 0),
    )
    return DecisionList(gates, (1, 0, 0), 1)


def symmetric_ldl(profile: SymmetricProfile, n: Optional[int] = None) -> DecisionList:
    """LDL with one gate 1{|X| <= I_j} per interval boundary below the last."""
    n = profile.m if n is None else n
    bounds = intervals(profile)
    gates = tuple(ThresholdGate((-1,) * n, -b, LINEAR) for b in bounds[:-1])
    outputs = tuple(profile(b) for b in bounds[:-1])
    return DecisionList(gates, outputs, profile(bounds[-1]))


def symmetric_sample_profile() -> SymmetricProfile:
    """8-input symmetric function with intervals ending at 0, 1, 6, 7, 8."""
    return SymmetricProfile((1, 0, 1, 1, 1, 1, 1, 0, 1))


def symmetric_sample_ldl() -> DecisionList:
    return symmetric_ldl(symmetric_sample_profile())
