"""Domain types for expansion schemes, intervals, and curvature bounds.

A scheme is a set of barycentric nodes t_0 <= ... <= t_n in [0, 1] (with
t_0 = 0 and t_n = 1 pinned) together with one weight per node.  Schemes are
dimensionless: they map onto a concrete interval [a, b] through
``map_nodes``.  All types are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import (
    InvalidInterval,
    LengthMismatch,
    NonMonotoneNodes,
    OutOfRangeNode,
)

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b strictly."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidInterval(f"endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise InvalidInterval(f"need a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class CurvatureBounds:
    """Uniform bounds m2 <= f''(x) <= M2 over the working interval."""

    m2: float
    M2: float

    def __post_init__(self):
        if not (math.isfinite(self.m2) and math.isfinite(self.M2)):
            raise InvalidInterval(f"curvature bounds must be finite, got ({self.m2}, {self.M2})")
        if self.m2 > self.M2:
            raise InvalidInterval(f"need m2 <= M2, got ({self.m2}, {self.M2})")

    @property
    def spread(self) -> float:
        return self.M2 - self.m2


@dataclass(frozen=True)
class ExpansionScheme:
    """Nodes and weights of one first-order expansion formula.

    ``nodes`` holds t_0..t_n and ``weights`` holds the matching w_0..w_n.
    Weights may be negative or unnormalized; operations that need
    sum(w) = 1 check ``is_normalized`` themselves.  Duplicate nodes are
    allowed (a zero-length span contributes nothing to any integral).
    """

    n: int
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if self.n < 1:
            raise LengthMismatch(f"need n >= 1, got {self.n}")
        if len(self.nodes) != self.n + 1:
            raise LengthMismatch(f"expected {self.n + 1} nodes, got {len(self.nodes)}")
        if len(self.weights) != self.n + 1:
            raise LengthMismatch(f"expected {self.n + 1} weights, got {len(self.weights)}")
        if self.nodes[0] != 0.0 or self.nodes[-1] != 1.0:
            raise OutOfRangeNode(f"endpoints must be t_0 = 0 and t_n = 1, got {self.nodes[0]}, {self.nodes[-1]}")
        for k, t in enumerate(self.nodes):
            if not 0.0 <= t <= 1.0:
                raise OutOfRangeNode(f"node t_{k} = {t} outside [0, 1]")
            if k > 0 and t < self.nodes[k - 1]:
                raise NonMonotoneNodes(f"node t_{k} = {t} < t_{k - 1} = {self.nodes[k - 1]}")

    @property
    def weight_sum(self) -> float:
        return math.fsum(self.weights)

    @property
    def is_normalized(self) -> bool:
        return abs(self.weight_sum - 1.0) <= NORMALIZATION_TOL

    def to_json(self) -> str:
        """Serialize to the interchange schema {"n": ..., "t": [...], "omega": [...]}."""
        return json.dumps({"n": self.n, "t": list(self.nodes), "omega": list(self.weights)})

    @classmethod
    def from_json(cls, text: str) -> "ExpansionScheme":
        obj = json.loads(text)
        return cls(
            n=int(obj["n"]),
            nodes=tuple(float(t) for t in obj["t"]),
            weights=tuple(float(w) for w in obj["omega"]),
        )


@dataclass(frozen=True)
class PartialSums:
    """Cumulative weight sums S_k = w_0 + ... + w_k for k = 0..n-1."""

    values: tuple[float, ...]


def make_scheme(n: int, interior_nodes: list[float], weights: list[float]) -> ExpansionScheme:
    """Build a scheme from its n-1 interior nodes and n+1 weights.

    The boundary nodes t_0 = 0 and t_n = 1 are supplied automatically.
    """
    if n < 1:
        raise LengthMismatch(f"need n >= 1, got {n}")
    if len(interior_nodes) != n - 1:
        raise LengthMismatch(f"expected {n - 1} interior nodes, got {len(interior_nodes)}")
    if len(weights) != n + 1:
        raise LengthMismatch(f"expected {n + 1} weights, got {len(weights)}")
    nodes = (0.0, *(float(t) for t in interior_nodes), 1.0)
    return ExpansionScheme(n=n, nodes=nodes, weights=tuple(float(w) for w in weights))


def classical_scheme() -> ExpansionScheme:
    """The n = 1 scheme with all weight on the left endpoint.

    Reduces the expansion to the plain first-order Taylor formula; its
    envelope recovers the textbook [m2/2, M2/2] remainder bracket.
    """
    return make_scheme(1, [], [1.0, 0.0])


def partial_sums(s: ExpansionScheme) -> PartialSums:
    """Left-to-right running sums of the weights, S_0..S_{n-1}."""
    values = []
    acc = 0.0
    for w in s.weights[:-1]:
        acc += w
        values.append(acc)
    return PartialSums(values=tuple(values))


def map_nodes(s: ExpansionScheme, iv: Interval) -> list[float]:
    """Concrete evaluation points x_k = a + t_k * (b - a).

    The endpoints are pinned to a and b exactly (no roundoff).
    """
    xs = [iv.a + t * iv.width for t in s.nodes]
    xs[0] = iv.a
    xs[-1] = iv.b
    return xs
