"""Filling multicurve configurations as labelled bipartite graphs.

Curves are never realised geometrically.  A configuration is the bipartite
graph whose red vertices are the curves of ``A``, blue vertices the curves of
``B``, and whose edge labels are (upper bounds on) intersection numbers.  All
three constructions cut ``S_g`` into one-boundary subsurfaces, fill each with
an Aougab-Taylor pair ``(alpha_i, beta_i)`` and join them with red curves
``c_i`` that bound punctured discs.
"""

from __future__ import annotations

import enum
import functools
import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .pf import (
    DEFAULT_TOLERANCE,
    DilatationEstimate,
    IntersectionMatrix,
    dilatation_from_mu,
    gram,
    max_row_sum,
    pf_eigenvalue,
)


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"


class CurveKind(enum.Enum):
    AT_ALPHA = "at-alpha"
    AT_BETA = "at-beta"
    PUNCTURE_BOUNDING = "puncture-bounding"


class Case(enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"


_COLOR_OF_KIND = {
    CurveKind.AT_ALPHA: Color.RED,
    CurveKind.PUNCTURE_BOUNDING: Color.RED,
    CurveKind.AT_BETA: Color.BLUE,
}

_NAME_OF_KIND = {
    CurveKind.AT_ALPHA: "alpha",
    CurveKind.AT_BETA: "beta",
    CurveKind.PUNCTURE_BOUNDING: "c",
}


class UnsupportedParameters(ValueError):
    """(g, n) outside the range covered by the multicurve constructions."""


@dataclass(frozen=True)
class CurveVertex:
    color: Color
    kind: CurveKind
    subsurface: int

    def __post_init__(self):
        if _COLOR_OF_KIND[self.kind] is not self.color:
            raise ValueError(f"{self.kind.value} curves are {_COLOR_OF_KIND[self.kind].value}")
        if self.subsurface < 0:
            raise ValueError("subsurface index must be nonnegative")

    @classmethod
    def of(cls, kind: CurveKind, subsurface: int) -> "CurveVertex":
        return cls(_COLOR_OF_KIND[kind], kind, subsurface)

    @property
    def name(self) -> str:
        return f"{_NAME_OF_KIND[self.kind]}_{self.subsurface + 1}"


@dataclass(frozen=True)
class BipartiteCurveGraph:
    red: tuple[CurveVertex, ...]
    blue: tuple[CurveVertex, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if any(v.color is not Color.RED for v in self.red):
            raise ValueError("red side holds a blue curve")
        if any(v.color is not Color.BLUE for v in self.blue):
            raise ValueError("blue side holds a red curve")
        seen = set()
        for r, b, label in self.edges:
            if not (0 <= r < len(self.red) and 0 <= b < len(self.blue)):
                raise ValueError(f"edge ({r}, {b}) does not join a red and a blue vertex")
            if label < 1:
                raise ValueError(f"edge ({r}, {b}) has label {label} < 1")
            if (r, b) in seen:
                raise ValueError(f"duplicate edge ({r}, {b})")
            seen.add((r, b))
        if not self.is_connected():
            raise ValueError("intersection graph is disconnected")

    def is_connected(self) -> bool:
        total = len(self.red) + len(self.blue)
        if total == 0:
            return False
        adj = {k: [] for k in range(total)}
        offset = len(self.red)
        for r, b, _ in self.edges:
            adj[r].append(offset + b)
            adj[offset + b].append(r)
        seen = {0}
        queue = deque([0])
        while queue:
            for k in adj[queue.popleft()]:
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        return len(seen) == total

    @functools.cached_property
    def _matrix(self) -> IntersectionMatrix:
        rows = [[0] * len(self.blue) for _ in self.red]
        for r, b, label in self.edges:
            rows[r][b] = label
        return IntersectionMatrix(tuple(tuple(row) for row in rows))

    def matrix(self) -> IntersectionMatrix:
        return self._matrix

    @functools.cached_property
    def gram(self) -> np.ndarray:
        G = gram(self._matrix)
        G.flags.writeable = False
        return G

    def red_valence(self, r: int) -> int:
        return sum(1 for e in self.edges if e[0] == r)

    def blue_valence(self, b: int) -> int:
        return sum(1 for e in self.edges if e[1] == b)

    def labels(self) -> set[int]:
        return {label for _, _, label in self.edges}

    def to_dot(self, name: str = "curves", comment: str | None = None) -> str:
        lines = [f"graph {name} {{"]
        if comment:
            lines.append(f"  // {comment}")
        lines.append("  node [style=filled, fontcolor=white];")
        for i, v in enumerate(self.red):
            lines.append(f'  r{i} [label="{v.name}", color=red, fillcolor=red];')
        for j, v in enumerate(self.blue):
            lines.append(f'  b{j} [label="{v.name}", color=blue, fillcolor=blue];')
        for r, b, label in self.edges:
            lines.append(f'  r{r} -- b{b} [label="{label}", weight={label}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Configuration:
    """A filling pair of multicurves on ``S_{g,n}``.

    ``subsurface_punctures[i]`` counts the punctures placed in subsurface
    ``i``; ``disc_punctures`` counts those sitting in discs of the central
    region without changing any intersection number.
    """

    genus: int
    punctures: int
    case: Case
    subsurface_genera: tuple[int, ...]
    subsurface_punctures: tuple[int, ...]
    disc_punctures: int
    graph: BipartiteCurveGraph

    def __post_init__(self):
        if sum(self.subsurface_genera) != self.genus:
            raise ValueError("subsurface genera do not sum to the genus")
        if sum(self.subsurface_punctures) + self.disc_punctures != self.punctures:
            raise ValueError("puncture bookkeeping does not add up")
        if case_for(self.genus, self.punctures) is not self.case:
            raise ValueError(f"{self.case.value} does not cover (g, n) = ({self.genus}, {self.punctures})")

    @functools.cached_property
    def matrix(self) -> IntersectionMatrix:
        return self.graph.matrix()

    @property
    def gram(self) -> np.ndarray:
        return self.graph.gram

    @property
    def genus_cap(self) -> int:
        """Largest subsurface genus the upper-bound argument allows."""
        if self.case is Case.CASE1:
            return -(-self.genus // 2)
        if self.case is Case.CASE2:
            return -(-2 * self.genus // self.punctures)
        return 1

    @property
    def within_genus_cap(self) -> bool:
        # Fails for odd n in case 2: floor(n/2) parts of size <= ceil(2g/n) can sum to less than g.
        return max(self.subsurface_genera) <= self.genus_cap

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "case": self.case.value,
            "subsurface_genera": list(self.subsurface_genera),
            "edges": [list(e) for e in self.graph.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        return self.graph.to_dot(
            name=f"config_g{self.genus}_n{self.punctures}",
            comment=f"g={self.genus} n={self.punctures} {self.case.value}",
        )


def configuration_from_json(text: str) -> Configuration:
    """Rebuild a configuration from its JSON form, checking it matches the
    deterministic construction for the recorded ``(g, n)``."""
    data = json.loads(text)
    config = build_configuration(int(data["genus"]), int(data["punctures"]))
    if data["case"] != config.case.value:
        raise ValueError(f"case {data['case']!r} does not match {config.case.value!r}")
    if [int(x) for x in data["subsurface_genera"]] != list(config.subsurface_genera):
        raise ValueError("subsurface genera differ from the construction")
    if [tuple(int(x) for x in e) for e in data["edges"]] != list(config.graph.edges):
        raise ValueError("edges differ from the construction")
    return config


def at_pair_intersection(h: int) -> int:
    """Bound on ``i(alpha, tau)`` for an Aougab-Taylor pair on a genus ``h``
    surface with one boundary component."""
    if h < 1:
        raise ValueError("subsurface genus must be at least 1")
    if h == 1:
        return 6
    if h == 2:
        return 24
    return 24 * h * h - 24 * h + 6


def case_for(g: int, n: int) -> Case:
    if g < 2:
        raise UnsupportedParameters("genus must be ≥ 2")
    if n == 1:
        raise UnsupportedParameters("n = 1 is the point-pushing subgroup; use the bounds calculators")
    if n < 1:
        raise UnsupportedParameters("need at least one puncture")
    if n in (2, 3):
        return Case.CASE1
    if n < 2 * g:
        return Case.CASE2
    return Case.CASE3


def split_genus(g: int, parts: int) -> tuple[int, ...]:
    """``g`` as ``parts`` near-equal positive integers, larger ones first."""
    if not 1 <= parts <= g:
        raise ValueError(f"cannot split genus {g} into {parts} positive parts")
    q, r = divmod(g, parts)
    return (q + 1,) * r + (q,) * (parts - r)


@functools.lru_cache(maxsize=4096)
def _cyclic_graph(genera: tuple[int, ...], light: int = 2) -> BipartiteCurveGraph:
    """``alpha_i -- beta_i`` labelled ``D_i``, ``c_i -- beta_i`` labelled
    ``D_i + 2`` and ``c_i -- beta_{i+1}`` labelled ``light``.  For tori
    ``D_i + 2 = 8``, the case-3 label.  Cached: many ``(g, n)`` share a graph."""
    m = len(genera)
    red = tuple(CurveVertex.of(CurveKind.AT_ALPHA, i) for i in range(m))
    red += tuple(CurveVertex.of(CurveKind.PUNCTURE_BOUNDING, i) for i in range(m))
    blue = tuple(CurveVertex.of(CurveKind.AT_BETA, i) for i in range(m))
    edges = []
    for i, h in enumerate(genera):
        d = at_pair_intersection(h)
        edges.append((i, i, d))
    for i, h in enumerate(genera):
        d = at_pair_intersection(h)
        edges.append((m + i, i, d + 2))
        edges.append((m + i, (i + 1) % m, light))
    return BipartiteCurveGraph(red, blue, tuple(edges))


def build_case1(g: int, n: int) -> Configuration:
    """Two subsurfaces of genera ``ceil(g/2)``, ``floor(g/2)`` and one red
    curve around the two (or three) punctures."""
    if g < 2 or n not in (2, 3):
        raise UnsupportedParameters(f"case 1 needs g >= 2 and n in {{2, 3}}, got ({g}, {n})")
    genera = ((g + 1) // 2, g // 2)
    d = [at_pair_intersection(h) for h in genera]
    red = (
        CurveVertex.of(CurveKind.AT_ALPHA, 0),
        CurveVertex.of(CurveKind.AT_ALPHA, 1),
        CurveVertex.of(CurveKind.PUNCTURE_BOUNDING, 0),
    )
    blue = (CurveVertex.of(CurveKind.AT_BETA, 0), CurveVertex.of(CurveKind.AT_BETA, 1))
    edges = ((0, 0, d[0]), (1, 1, d[1]), (2, 0, d[0] + 2), (2, 1, d[1] + 2))
    return Configuration(
        genus=g,
        punctures=n,
        case=Case.CASE1,
        subsurface_genera=genera,
        subsurface_punctures=(1, 1),
        disc_punctures=n - 2,
        graph=BipartiteCurveGraph(red, blue, edges),
    )


def build_case2(g: int, n: int) -> Configuration:
    """``floor(n/2)`` subsurfaces around a punctured sphere, two punctures
    each, plus one in a disc when ``n`` is odd."""
    if not 4 <= n < 2 * g:
        raise UnsupportedParameters(f"case 2 needs 4 <= n < 2g, got ({g}, {n})")
    m = n // 2
    genera = split_genus(g, m)
    return Configuration(
        genus=g,
        punctures=n,
        case=Case.CASE2,
        subsurface_genera=genera,
        subsurface_punctures=(2,) * m,
        disc_punctures=n % 2,
        graph=_cyclic_graph(genera),
    )


def build_case3(g: int, n: int) -> Configuration:
    """``g`` one-holed tori; punctures beyond ``2g`` go in central discs."""
    if g < 2 or n < 2 * g:
        raise UnsupportedParameters(f"case 3 needs g >= 2 and n >= 2g, got ({g}, {n})")
    genera = (1,) * g
    return Configuration(
        genus=g,
        punctures=n,
        case=Case.CASE3,
        subsurface_genera=genera,
        subsurface_punctures=(2,) * g,
        disc_punctures=n - 2 * g,
        graph=_cyclic_graph(genera),
    )


_BUILDERS = {Case.CASE1: build_case1, Case.CASE2: build_case2, Case.CASE3: build_case3}


def build_configuration(g: int, n: int) -> Configuration:
    return _BUILDERS[case_for(g, n)](g, n)


def configuration_dilatation(config: Configuration, tolerance: float = DEFAULT_TOLERANCE) -> DilatationEstimate:
    """Entropy of ``T_A T_B^{-1}`` taking ``mu`` as the upper end of the
    Perron-Frobenius bracket, hence an upper bound."""
    return _graph_dilatation(config.graph, float(tolerance))


@functools.lru_cache(maxsize=4096)
def _graph_dilatation(graph: BipartiteCurveGraph, tolerance: float) -> DilatationEstimate:
    # Case-3 graphs do not depend on n, so sweeps hit this cache often.
    bracket = pf_eigenvalue(graph.gram, tolerance)
    return dilatation_from_mu(bracket.upper_float)


# Closed forms for the case-2 row sums of N N^T.

def case2_row_sums(config: Configuration) -> dict[str, list[int]]:
    """Row sums of ``N N^T`` predicted from the subsurface genera alone.

    With ``D_i`` the pair bound of subsurface ``i`` and ``E_i = D_i + 2``,
    column ``beta_i`` sums to ``D_i + E_i + 2``, so the ``alpha_i`` row is
    ``D_i (D_i + E_i + 2)`` and the ``c_i`` row is
    ``E_i (D_i + E_i + 2) + 2 (D_{i+1} + E_{i+1} + 2)``.
    """
    if config.case is not Case.CASE2:
        raise ValueError("closed forms only cover case 2")
    d = [at_pair_intersection(h) for h in config.subsurface_genera]
    m = len(d)
    column = [di + (di + 2) + 2 for di in d]
    alpha = [d[i] * column[i] for i in range(m)]
    c = [(d[i] + 2) * column[i] + 2 * column[(i + 1) % m] for i in range(m)]
    return {"alpha": alpha, "c": c}


def equal_genus_row_sums(h: int) -> tuple[int, int]:
    """``(alpha row, c row)`` when every subsurface has genus ``h``; with
    ``E = D + 2`` these are ``2E^2 - 4E`` and ``2E^2 + 4E``."""
    e = at_pair_intersection(h) + 2
    return 2 * e * e - 4 * e, 2 * e * e + 4 * e


def case2_row_ceilings(g: int, n: int) -> tuple[int, int]:
    """Row-sum ceilings from labelling every dashed edge
    ``D' = 24k^2 - 24k + 8`` with ``k = ceil(2g/n)``: ``(2D'^2 + 2D', 2D'^2 + 6D' + 4)``
    for the valence-one and valence-two red rows."""
    k = -(-2 * g // n)
    dp = 24 * k * k - 24 * k + 8
    return 2 * dp * dp + 2 * dp, 2 * dp * dp + 6 * dp + 4


CASE3_MAX_ROW_SUM = 160
# Figure-level value quoted for case 3; the 6/8/2 cyclic graph gives 160.
CASE3_QUOTED_ROW_SUM = 152


def entropy_ceiling(g: int, n: int) -> float:
    """Closed-form entropy ceiling ``log(max row sum + 2)`` for a configuration."""
    return math.log(max_row_sum(build_configuration(g, n).gram) + 2)
