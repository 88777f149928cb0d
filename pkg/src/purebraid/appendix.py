"""Hyperbolic trigonometry and the counting behind the graph-diameter bound.

Everything here is a real-valued function of its parameters; no surface,
triangulation or geodesic is ever built.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .bounds import varkappa_lower

TOLERANCE = 1e-9


@dataclass(frozen=True)
class TrigonModelConstants:
    max_side: float = math.log(4)
    min_triangle_side: float = math.log(2)
    min_area: float = 0.19
    max_area: float = 1.36
    min_width: float = 0.25
    max_width: float = math.log(2)
    combinatorial_slope: int = 40
    combinatorial_offset: int = 2

    def __post_init__(self):
        if not self.min_width < self.max_width:
            raise ValueError("min_width must be below max_width")
        if not self.min_triangle_side <= self.max_side:
            raise ValueError("min_triangle_side must not exceed max_side")


TRIGON = TrigonModelConstants()


def constants_json(constants: TrigonModelConstants = TRIGON) -> str:
    return json.dumps(asdict(constants), indent=2, sort_keys=True) + "\n"


class NoSuchTriangle(ValueError):
    pass


def angle_from_sides(a: float, b: float, c: float) -> float:
    """Angle opposite ``c`` in a hyperbolic triangle with sides ``a, b, c``."""
    if min(a, b, c) <= 0:
        raise NoSuchTriangle("side lengths must be positive")
    cos_gamma = (math.cosh(c) - math.cosh(a) * math.cosh(b)) / (-math.sinh(a) * math.sinh(b))
    if abs(cos_gamma) > 1:
        if abs(cos_gamma) - 1 > 1e-12:
            raise NoSuchTriangle(f"cos(gamma) = {cos_gamma} is outside [-1, 1]")
        cos_gamma = math.copysign(1.0, cos_gamma)
    return math.acos(cos_gamma)


def side_from_sides_angle(a: float, b: float, gamma: float) -> float:
    """Side opposite the angle ``gamma`` enclosed by sides ``a`` and ``b``."""
    if min(a, b) <= 0 or not 0 < gamma < math.pi:
        raise ValueError("need a, b > 0 and 0 < gamma < pi")
    arg = math.cosh(a) * math.cosh(b) - math.sinh(a) * math.sinh(b) * math.cos(gamma)
    if arg < 1:
        raise ValueError(f"arccosh argument {arg} < 1")
    return math.acosh(arg)


def isoperimetric_stages(p: float) -> tuple[float, float, float]:
    """The three successive upper bounds on the area enclosed by a loop of
    length ``p`` in the hyperbolic plane: disc of equal perimeter, the
    logarithmic relaxation, and its simplified form ``p^2 / (p + pi)``."""
    if p <= 0:
        raise ValueError("perimeter must be positive")
    disc = 4 * math.pi * math.sinh(math.asinh(p / (2 * math.pi)) / 2) ** 2
    relaxed = 4 * math.pi * math.sinh(0.5 * math.log1p(p / math.pi)) ** 2
    return disc, relaxed, p * p / (p + math.pi)


def isoperimetric_area_bound(p: float) -> float:
    return isoperimetric_stages(p)[2]


def graph_length_lower(g: int) -> float:
    """Total length of a filling graph on a closed genus ``g`` surface
    exceeds ``2 pi (g - 1)``."""
    if g < 2:
        raise ValueError("genus must be ≥ 2")
    return 2 * math.pi * (g - 1)


def piece_length_comparison() -> tuple[float, float]:
    """``(3 log 4, 2 pi)``: claimed per-piece boundary length versus the
    per-unit-genus length.  The first is the smaller; reported, not asserted."""
    return 3 * TRIGON.max_side, 2 * math.pi


def combinatorial_length_upper(ell_s: float) -> float:
    if ell_s < 0:
        raise ValueError("length must be nonnegative")
    return TRIGON.combinatorial_slope * ell_s + TRIGON.combinatorial_offset


def hyperbolic_length_lower(ell_c: float) -> float:
    """Inverse of :func:`combinatorial_length_upper`."""
    return (ell_c - TRIGON.combinatorial_offset) / TRIGON.combinatorial_slope


def ball_size_bound(d: int) -> int:
    """Pieces within combinatorial distance ``d`` of a base piece when the
    dual graph has valence at most 3."""
    if d < 0:
        raise ValueError("radius must be nonnegative")
    if d == 0:
        return 1
    return 3 * 2 ** (d - 1) + 1


def min_covering_radius(g: int) -> int:
    """Least ``d`` with ``g - 1 < ball_size_bound(d)``: below it, ``g - 1``
    pieces cannot all fit in one ball."""
    if g < 3:
        raise ValueError("genus must be ≥ 3")
    return ((g - 2) // 3).bit_length() + 1


@dataclass(frozen=True)
class DiameterBound:
    genus: int
    lower_bound: float

    @property
    def valid(self) -> bool:
        return self.genus > 5


def diameter_lower(g: int) -> DiameterBound:
    """``(log((g - 2)/3) - 2) / 40`` lower bound on the diameter of a filling
    graph; negative for small ``g`` and only claimed for ``g > 5``."""
    if g < 3:
        raise ValueError("genus must be ≥ 3")
    return DiameterBound(g, hyperbolic_length_lower(math.log((g - 2) / 3)))


def entropy_lower_from_diameter(g: int, n: int) -> float:
    """Entropy lower bound from the diameter bound: an isotopy moves some
    puncture by at least ``diam / (2n)`` after halving for the 2-Lipschitz
    covering, and ``3 log lambda`` dominates ``varkappa`` of that distance.
    A diameter is nonnegative, so a negative bound is replaced by 0."""
    if g <= 5:
        raise ValueError("requires genus > 5")
    if n < 1:
        raise ValueError("number of punctures must be >= 1")
    diam = max(diameter_lower(g).lower_bound, 0.0)
    return varkappa_lower(diam / (2 * n)) / 3


@dataclass(frozen=True)
class AppendixCheck:
    name: str
    lhs: float
    relation: str
    rhs: float
    status: str


def appendix_checks() -> list[AppendixCheck]:
    """Every numeric inequality of the appendix, evaluated."""
    out = []
    angle = angle_from_sides(TRIGON.max_side, TRIGON.max_side, TRIGON.min_triangle_side)
    out.append(AppendixCheck("min-angle", angle, ">", math.pi / 9, _status(angle > math.pi / 9 + TOLERANCE)))
    side = side_from_sides_angle(TRIGON.min_triangle_side, TRIGON.min_triangle_side, math.pi / 9)
    out.append(AppendixCheck("good-segment", side, ">=", TRIGON.min_width, _status(side >= TRIGON.min_width - TOLERANCE)))
    half_arc = TRIGON.min_triangle_side / 2
    out.append(AppendixCheck("trigon-arc", half_arc, ">", TRIGON.min_width, _status(half_arc > TRIGON.min_width)))
    out.append(AppendixCheck("max-width", TRIGON.max_width, ">", 0.5, _status(TRIGON.max_width > 0.5)))
    for p in (0.1, 1.0, 10.0, 100.0):
        s1, s2, s3 = isoperimetric_stages(p)
        ok = s1 <= s2 + TOLERANCE and s2 <= s3 + TOLERANCE and s3 < p
        out.append(AppendixCheck(f"isoperimetric p={p:g}", s1, "<=", s3, _status(ok)))
    piece, circle = piece_length_comparison()
    out.append(AppendixCheck("piece-length", piece, "vs", circle, "INFO-DISCREPANCY"))
    for g in (6, 27, 1000):
        d = min_covering_radius(g)
        target = math.log2((g - 2) / 3)
        ok = ball_size_bound(d) > g - 1 and d >= target >= math.log((g - 2) / 3)
        out.append(AppendixCheck(f"ball-radius g={g}", float(d), ">=", target, _status(ok)))
    return out


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"
