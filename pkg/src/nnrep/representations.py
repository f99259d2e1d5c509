"""Anchor constructions for depth-2 threshold circuits and decision lists.

Every construction returns an :class:`AnchorSet`.  Nothing here checks that
the result is correct; that is the verifier's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Optional, Sequence

from . import numerics
from .boolean import (
    EXACT,
    LINEAR,
    DecisionList,
    Depth2Circuit,
    ThresholdGate,
    build_and,
    intervals,
    interval_index,
)
from .errors import (
    DepthExceedsArity,
    DimensionMismatch,
    InputSpaceTooLarge,
    RankDeficient,
    RegularityViolated,
    XStarNotFound,
)
from .numerics import RationalMatrix, dot

XSTAR_SEARCH_LIMIT = 24


@dataclass(frozen=True)
class ConstructionParams:
    d: Optional[Fraction] = None
    c: tuple[Fraction, ...] = ()
    xstar: Optional[tuple[Fraction, ...]] = None
    T: tuple[int, ...] = ()
    epsilon: Optional[Fraction] = None


@dataclass(frozen=True)
class AnchorSet:
    anchors: RationalMatrix
    labels: tuple[int, ...]
    types: Optional[tuple[int, ...]] = None
    construction: str = "custom"
    params: ConstructionParams = field(default_factory=ConstructionParams)

    def __post_init__(self):
        anchors = self.anchors
        if not isinstance(anchors, RationalMatrix):
            anchors = RationalMatrix(anchors)
            object.__setattr__(self, "anchors", anchors)
        labels = tuple(int(z) for z in self.labels)
        if len(labels) != anchors.rows:
            raise DimensionMismatch(f"{anchors.rows} anchors but {len(labels)} labels")
        if any(z not in (0, 1) for z in labels):
            raise ValueError("labels must be bits")
        object.__setattr__(self, "labels", labels)
        if self.types is not None:
            types = tuple(int(t) for t in self.types)
            if len(types) != anchors.rows:
                raise DimensionMismatch("one type per anchor is required")
            object.__setattr__(self, "types", types)

    @property
    def size(self) -> int:
        return self.anchors.rows

    @property
    def n(self) -> int:
        return self.anchors.cols

    @property
    def positive(self) -> list[int]:
        return [i for i, z in enumerate(self.labels) if z == 1]

    @property
    def negative(self) -> list[int]:
        return [i for i, z in enumerate(self.labels) if z == 0]

    def complement(self) -> "AnchorSet":
        return replace(self, labels=tuple(1 - z for z in self.labels))

    def permuted(self, order: Sequence[int]) -> "AnchorSet":
        rows = [self.anchors[i] for i in order]
        types = None if self.types is None else tuple(self.types[i] for i in order)
        return replace(
            self,
            anchors=RationalMatrix(rows, cols=self.n),
            labels=tuple(self.labels[i] for i in order),
            types=types,
        )


@dataclass(frozen=True)
class RegularityReport:
    equal_norms: bool
    mutually_orthogonal: bool
    xstar: Optional[tuple[int, ...]]
    shared_norm: Optional[int]

    @property
    def regular(self) -> bool:
        return self.equal_norms and self.mutually_orthogonal and self.xstar is not None


# --- helpers --------------------------------------------------------------


def _binary_vectors(n: int):
    """All of {0,1}^n in counter order, x_1 most significant."""
    return product((0, 1), repeat=n)


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(k, v):
    return tuple(k * a for a in v)


def _signed_sum(vectors, signs, n):
    acc = [0] * n
    for s, w in zip(signs, vectors):
        for i, x in enumerate(w):
            acc[i] += s * x
    return tuple(acc)


def _sign_patterns(bits: int):
    """Signs for j-1 = 0 .. 2^bits - 1, expansion most significant first; bit 1 means -1."""
    for j in range(1 << bits):
        yield tuple(-1 if (j >> (bits - 1 - i)) & 1 else 1 for i in range(bits))


def _find_binary_solution(n: int, accept: Callable[[tuple[int, ...]], bool]):
    if n > XSTAR_SEARCH_LIMIT:
        raise InputSpaceTooLarge(f"binary search over 2^{n} points exceeds 2^{XSTAR_SEARCH_LIMIT}")
    return next((X for X in _binary_vectors(n) if accept(X)), None)


def constant_representation(n: int, value: int, construction: str = "constant") -> AnchorSet:
    """Two anchors whose nearest-neighbour rule is constant on the cube.

    The anchor at the cube centre carries ``value``; the other sits n+1 units
    away along the first axis, which every binary input is strictly farther from.
    """
    half = Fraction(1, 2)
    centre = (half,) * n
    far = (half + n + 1,) + (half,) * (n - 1)
    return AnchorSet(RationalMatrix([centre, far]), (value, 1 - value), construction=construction)


# --- regularity -----------------------------------------------------------


def check_regularity(circuit, find_xstar: bool = True) -> RegularityReport:
    """Equal norms, pairwise orthogonality and a binary X* with W X* = b.

    ``circuit`` is anything with ``gates`` (a Depth2Circuit or DecisionList).
    Raises XStarNotFound when ``find_xstar`` is set and no binary X* exists.
    """
    gates = circuit.gates
    norms = [g.norm2 for g in gates]
    equal = len(set(norms)) == 1
    orthogonal = all(
        dot(gates[i].weights, gates[j].weights) == 0
        for i in range(len(gates))
        for j in range(i + 1, len(gates))
    )

    def solves(X):
        return all(g.value(X) == g.bias for g in gates)

    xstar = None
    if find_xstar:
        hint = getattr(circuit, "xstar_hint", None)
        if hint is not None and len(hint) == gates[0].arity and solves(hint):
            xstar = tuple(hint)
        else:
            xstar = _find_binary_solution(gates[0].arity, solves)
        if xstar is None:
            raise XStarNotFound("no binary X* satisfies W X* = b")
    return RegularityReport(equal, orthogonal, xstar, norms[0] if equal else None)


def _require_regular(circuit) -> RegularityReport:
    report = check_regularity(circuit, find_xstar=False)
    if not report.equal_norms:
        raise RegularityViolated("first-layer weight norms differ")
    if not report.mutually_orthogonal:
        raise RegularityViolated("first-layer weights are not mutually orthogonal")
    return check_regularity(circuit, find_xstar=True)


# --- convex polytopes (AND of threshold gates) ----------------------------


def _reflections(a0, rows, rhs):
    anchors = [tuple(Fraction(x) for x in a0)]
    cs = []
    for row, r in zip(rows, rhs):
        norm2 = sum(x * x for x in row)
        c = (r - dot(row, a0)) / norm2
        cs.append(c)
        anchors.append(_vec_add(anchors[0], _vec_scale(2 * c, row)))
    return anchors, cs


def _validate_system(A, b):
    A = [tuple(int(x) for x in row) for row in A]
    b = [int(x) for x in b]
    if not A or len(A) != len(b):
        raise DimensionMismatch("A must have one row per entry of b")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise DimensionMismatch("ragged constraint matrix")
    if any(not any(row) for row in A):
        raise ValueError("constraint rows must be nonzero")
    return A, b, n


def construct_polytope(A, b) -> AnchorSet:
    """Represent 1{A X <= b} with one positive anchor and m reflected negatives."""
    A, b, n = _validate_system(A, b)
    a0 = _find_binary_solution(n, lambda X: all(dot(row, X) <= bi for row, bi in zip(A, b)))
    if a0 is None:
        return constant_representation(n, 0)
    half = Fraction(1, 2)
    anchors, cs = _reflections(a0, A, [bi + half for bi in b])
    labels = (1,) + (0,) * len(A)
    params = ConstructionParams(c=tuple(cs), xstar=tuple(Fraction(x) for x in a0))
    return AnchorSet(RationalMatrix(anchors), labels, construction="polytope", params=params)


def construct_equality_system(A, b) -> AnchorSet:
    """Represent 1{A X = b}: each row becomes a slab between b_i - 1/2 and b_i + 1/2."""
    A, b, n = _validate_system(A, b)
    a0 = _find_binary_solution(n, lambda X: all(dot(row, X) == bi for row, bi in zip(A, b)))
    if a0 is None:
        return constant_representation(n, 0)
    half = Fraction(1, 2)
    rows, rhs = [], []
    for row, bi in zip(A, b):
        rows += [row, tuple(-x for x in row)]
        rhs += [bi + half, -bi + half]
    anchors, cs = _reflections(a0, rows, rhs)
    labels = (1,) + (0,) * len(rows)
    params = ConstructionParams(c=tuple(cs), xstar=tuple(Fraction(x) for x in a0))
    return AnchorSet(RationalMatrix(anchors), labels, construction="equality_system", params=params)


def polytope_circuit(A, b, equality: bool = False) -> Depth2Circuit:
    """The AND-of-threshold-gates circuit that the polytope constructions represent."""
    A, b, _ = _validate_system(A, b)
    if equality:
        gates = [ThresholdGate(row, bi, EXACT) for row, bi in zip(A, b)]
    else:
        gates = [ThresholdGate(tuple(-x for x in row), -bi, LINEAR) for row, bi in zip(A, b)]
    return Depth2Circuit(tuple(gates), build_and(len(gates)))


# --- symmetric top gate ---------------------------------------------------


def elt_types(bounds: Sequence[int]) -> list[int]:
    """Left interval boundaries I_0+1, ..., I_{I(g)-1}+1."""
    return [0] + [right + 1 for right in bounds[:-1]]


def lt_types(bounds: Sequence[int], m: int) -> list[int]:
    """All boundaries I_1, I_1+1, ..., I_{I(g)-1}, I_{I(g)-1}+1, deduplicated."""
    ts = set()
    for right in bounds[:-1]:
        ts.update(t for t in (right, right + 1) if 0 <= t <= m)
    return sorted(ts)


def _weights(circuit):
    return [g.weights for g in circuit.gates]


def construct_sym_elt(c: Depth2Circuit) -> AnchorSet:
    """SYM of exact gates under the regularity conditions.

    Type-t anchors are X* + d * (signed sum of an (m-t)-subset of the weights),
    labelled with the top gate's value on the interval starting at t.
    """
    if any(g.kind != EXACT for g in c.gates):
        raise ValueError("construct_sym_elt needs exact first-layer gates")
    report = _require_regular(c)
    m, n = c.m, c.n
    W = _weights(c)
    d = Fraction(1, m * report.shared_norm)
    T = elt_types(intervals(c.top))
    xstar = tuple(Fraction(x) for x in report.xstar)
    anchors, labels, types = [], [], []
    for t in T:
        for subset in combinations(range(m), m - t):
            for signs in _sign_patterns(m - t):
                u = _signed_sum([W[i] for i in subset], signs, n)
                anchors.append(_vec_add(xstar, _vec_scale(d, u)))
                labels.append(c.top(t))
                types.append(t)
    params = ConstructionParams(d=d, xstar=xstar, T=tuple(T))
    return AnchorSet(RationalMatrix(anchors), tuple(labels), tuple(types), "sym_elt", params)


def construct_sym_lt(c: Depth2Circuit) -> AnchorSet:
    """SYM of linear gates under the regularity conditions (biases moved to b - 1/2).

    Anchors are X*' - d * (sum of an (m-t)-subset of the weights) around the
    shifted base point X*' = X* - (w_1 + ... + w_m) / (2 |w|^2).
    """
    if any(g.kind != LINEAR for g in c.gates):
        raise ValueError("construct_sym_lt needs linear first-layer gates")
    report = _require_regular(c)
    m, n = c.m, c.n
    W = _weights(c)
    norm2 = report.shared_norm
    bounds = intervals(c.top)
    if len(bounds) == 1:
        return constant_representation(n, c.top(0), "sym_lt")
    # 1/(2|w|^2) rather than 1/(m|w|^2): the latter ties across labels at m = 1
    d = Fraction(1, 2 * norm2)
    shift = _signed_sum(W, [1] * m, n)
    xs = tuple(Fraction(x) - Fraction(s, 2 * norm2) for x, s in zip(report.xstar, shift))
    T = lt_types(bounds, m)
    anchors, labels, types = [], [], []
    for t in T:
        for subset in combinations(range(m), m - t):
            u = _signed_sum([W[i] for i in subset], [-1] * (m - t), n)
            anchors.append(_vec_add(xs, _vec_scale(d, u)))
            labels.append(c.top(t))
            types.append(t)
    params = ConstructionParams(d=d, xstar=xs, T=tuple(T))
    return AnchorSet(RationalMatrix(anchors), tuple(labels), tuple(types), "sym_lt", params)


def sym_elt_size(bounds: Sequence[int], m: int) -> int:
    return sum(comb(m, m - t) * 2 ** (m - t) for t in elt_types(bounds))


def sym_lt_size(bounds: Sequence[int], m: int) -> int:
    return sum(comb(m, m - t) for t in lt_types(bounds, m))


def type_rule_for(anchor_set: AnchorSet, circuit) -> Optional[Callable]:
    """Allowed nearest-anchor types as a function of X, or None when no claim applies."""
    if anchor_set.types is None or not isinstance(circuit, Depth2Circuit):
        return None
    bounds = intervals(circuit.top)
    if anchor_set.construction == "sym_elt":

        def rule(X):
            l = interval_index(bounds, sum(circuit.layer(X)))
            left = bounds[l - 2] + 1 if l > 1 else 0
            return {left}

        return rule
    if anchor_set.construction == "sym_lt":

        def rule(X):
            l = interval_index(bounds, sum(circuit.layer(X)))
            left = bounds[l - 2] + 1 if l > 1 else 0
            return {left, bounds[l - 1]}

        return rule
    return None


# --- decision lists -------------------------------------------------------


def _dl_anchors(base, W, cs):
    """a_i = base - sum_{j<i} c_j w_j + c_i w_i, and a_{m+1} with the last sign flipped."""
    m = len(W)
    anchors = []
    running = tuple(Fraction(x) for x in base)
    for i in range(m):
        anchors.append(_vec_add(running, _vec_scale(cs[i], W[i])))
        if i < m - 1:
            running = _vec_add(running, _vec_scale(-cs[i], W[i]))
    anchors.append(_vec_add(running, _vec_scale(-cs[m - 1], W[m - 1])))
    return anchors


def construct_ldl_regular(l: DecisionList) -> AnchorSet:
    """LDL under the regularity conditions, m+1 anchors with geometric coefficients.

    The gates are rewritten as 1{2w.X >= 2b - 1} so that no binary input sits
    on a hyperplane; the base point X' = X* - (w_1 + ... + w_m)/(2|w|^2)
    satisfies 2W X' = 2b - 1.
    """
    if l.kind != "LDL":
        raise ValueError("construct_ldl_regular needs a linear decision list")
    report = _require_regular(l)
    m, n = l.m, l.n
    norm2 = report.shared_norm
    W2 = [tuple(2 * x for x in w) for w in _weights(l)]
    shift = _signed_sum(_weights(l), [1] * m, n)
    base = tuple(Fraction(x) - Fraction(s, 2 * norm2) for x, s in zip(report.xstar, shift))
    ratio = Fraction(1, 2 * 4 * norm2)  # 1/(2|2w|^2)
    cs = tuple(ratio ** (i + 1) for i in range(m))
    anchors = _dl_anchors(base, W2, cs)
    params = ConstructionParams(c=cs, xstar=base)
    return AnchorSet(RationalMatrix(anchors), l.labels(), None, "ldl_regular", params)


def _sub_identity(m: int, n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(m)]


def full_rank_perturbation(W) -> tuple[RationalMatrix, Fraction]:
    """W + eps * I_{m,n} for the first eps in 0, 1/4, 1/8, ... giving full row rank."""
    W = RationalMatrix(W)
    m, n = W.shape
    if numerics.det(W @ W.T) != 0:
        return W, Fraction(0)
    I = RationalMatrix(_sub_identity(m, n), cols=n)
    eps = Fraction(1, 4)
    # det(W'W'^T) is a nonzero polynomial of degree 2m in eps
    for _ in range(2 * m + 1):
        Wp = W + I.scale(eps)
        if numerics.det(Wp @ Wp.T) != 0:
            return Wp, eps
        eps /= 2
    raise RankDeficient("no full-rank perturbation found")


def construct_ldl_general(l: DecisionList) -> AnchorSet:
    """Any LDL with depth m <= n, via X* = W^+ B on a full-rank perturbation of W."""
    if l.kind != "LDL":
        raise ValueError("construct_ldl_general needs a linear decision list")
    m, n = l.m, l.n
    if m > n:
        raise DepthExceedsArity(f"depth {m} exceeds input count {n}")
    half = Fraction(1, 2)
    bias = [g.bias - half for g in l.gates]
    Wp, eps = full_rank_perturbation(_weights(l))
    W = [tuple(row) for row in Wp]
    max_norm = max(dot(w, w) for w in W)
    ratio = 1 / (2 * max_norm)
    cs = tuple(ratio ** (i + 1) for i in range(m))
    B = [bias[i] + sum(cs[j] * dot(W[i], W[j]) for j in range(i)) for i in range(m)]
    xstar = numerics.mp_inverse(Wp) @ B
    anchors = _dl_anchors(xstar, W, cs)
    params = ConstructionParams(c=cs, xstar=tuple(xstar), epsilon=eps)
    return AnchorSet(RationalMatrix(anchors), l.labels(), None, "ldl_general", params)


def construct_ldl(l: DecisionList) -> AnchorSet:
    """Regular construction when it applies, otherwise the general one."""
    try:
        return construct_ldl_regular(l)
    except RegularityViolated:
        return construct_ldl_general(l)


def construct_edl(l: DecisionList) -> AnchorSet:
    """EDL under the regularity conditions, (m+1) 2^m anchors.

    Anchor (j, k) is X* + d * u_jk +/- c_k w_k where u_jk signs every weight
    but w_k (w_m for k = m+1) and the last bit of j picks the +/- sign.
    """
    if l.kind != "EDL":
        raise ValueError("construct_edl needs an exact decision list")
    report = _require_regular(l)
    m, n = l.m, l.n
    W = _weights(l)
    norm2 = report.shared_norm
    d = Fraction(1, norm2)
    cs = tuple(Fraction(i, (m + 1) * norm2) for i in range(1, m + 1)) + (d,)
    xstar = tuple(Fraction(x) for x in report.xstar)
    labels = l.labels()
    anchors, out_labels, types = [], [], []
    for k in range(m + 1):
        excluded = min(k, m - 1)
        others = [W[i] for i in range(m) if i != excluded]
        for signs in _sign_patterns(m):
            u = _signed_sum(others, signs[:-1], n)
            point = _vec_add(xstar, _vec_scale(d, u))
            anchors.append(_vec_add(point, _vec_scale(signs[-1] * cs[k], W[excluded])))
            out_labels.append(labels[k])
            types.append(k + 1)
    params = ConstructionParams(d=d, c=cs, xstar=xstar)
    return AnchorSet(RationalMatrix(anchors), tuple(out_labels), tuple(types), "edl", params)


def construct(obj) -> AnchorSet:
    """Pick the construction matching a circuit or decision list."""
    if isinstance(obj, DecisionList):
        return construct_edl(obj) if obj.kind == "EDL" else construct_ldl(obj)
    if isinstance(obj, Depth2Circuit):
        if all(g.kind == EXACT for g in obj.gates):
            return construct_sym_elt(obj)
        if all(g.kind == LINEAR for g in obj.gates):
            return construct_sym_lt(obj)
        raise ValueError("mixed gate kinds are not supported")
    raise TypeError(f"cannot construct a representation for {type(obj).__name__}")
