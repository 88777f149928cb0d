"""Closed-form entropy bounds for pseudo-Anosov pure surface braids.

All values are entropies in nats.  Each calculator checks the hypotheses of
the inequality it evaluates; :func:`bound_profile` gathers them for a given
``(g, n)`` with validity flags instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .curves import at_pair_intersection

Side = Literal["lower", "upper"]
Variant = Literal["statement", "proof"]

# Quantity an entry bounds; only entries on the same quantity are comparable.
PURE_BRAID = "L(PB_n(S_g))"
MOD_CLOSED = "L(Mod(S_g))"
MOD_PUNCTURED = "L(Mod(S_g,n))"

CONSTANT_LOWER = 0.000155
ALM_COEFFICIENT = 0.00031


def _check_genus(g: int, minimum: int = 2):
    if g < minimum:
        raise ValueError(f"genus must be ≥ {minimum}")


def _check_punctures(n: int):
    if n < 1:
        raise ValueError("number of punctures must be >= 1")


def main_upper(g: int, n: int) -> float:
    """``4 log ceil(2g/n) + 4 log 7`` for ``n <= 2g``; the constant
    ``4 log 6`` once ``n > 2g``."""
    _check_genus(g)
    _check_punctures(n)
    if n > 2 * g:
        return 4 * math.log(6)
    return 4 * math.log(-(-2 * g // n)) + 4 * math.log(7)


def constant_lower() -> float:
    return CONSTANT_LOWER


def alm_lower(kappa: int, chi: int) -> float:
    """Agol-Leininger-Margalit: ``0.00031 (kappa + 1) / |chi|``."""
    if chi >= 0:
        raise ValueError("Euler characteristic must be negative")
    if kappa < 0:
        raise ValueError("kappa is a dimension and cannot be negative")
    return ALM_COEFFICIENT * (kappa + 1) / abs(chi)


def kappa_lower(g: int, n: int) -> int:
    """Lower bound on the dimension of the fixed subspace of ``H_1``."""
    return max(2 * g, n - 1)


def euler_characteristic(g: int, n: int) -> int:
    return 2 - 2 * g - n


def thm61_lower(g: int, n: int, variant: Variant = "proof") -> float:
    """``(1/3) log(1 + (log((g-2)/3) +- 2) / (160 n))`` for ``g > 5``.

    The ``statement`` variant adds 2, the ``proof`` variant subtracts 2 and
    is clamped to 0 when the numerator goes negative (``g <= 3e^2 + 2``).
    """
    if g <= 5:
        raise ValueError("requires genus > 5")
    _check_punctures(n)
    base = math.log((g - 2) / 3)
    if variant == "statement":
        numerator = base + 2
    elif variant == "proof":
        numerator = max(base - 2, 0.0)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return math.log1p(numerator / (160 * n)) / 3


def varkappa_lower(t: float) -> float:
    """Lower bound ``log(1 + t/2)`` for Kra's extremal-dilatation function."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return math.log1p(t / 2)


@dataclass(frozen=True)
class IvanovInput:
    exponents: tuple[int, ...]
    rho_c: tuple[int, ...]
    c_gamma: tuple[int, ...]
    rho_gamma: int

    def __post_init__(self):
        if not len(self.exponents) == len(self.rho_c) == len(self.c_gamma):
            raise ValueError("exponents and intersection lists must share one length")
        if min(self.rho_c + self.c_gamma + (self.rho_gamma,), default=0) < 0:
            raise ValueError("intersection numbers must be nonnegative")


def ivanov_bounds(data: IvanovInput) -> tuple[int, int]:
    """Bounds on ``i(T_{c_1}^{s_1} ... T_{c_m}^{s_m}(rho), gamma)``."""
    terms = [a * b for a, b in zip(data.rho_c, data.c_gamma)]
    lower = sum((abs(s) - 2) * t for s, t in zip(data.exponents, terms)) - data.rho_gamma
    upper = sum(abs(s) * t for s, t in zip(data.exponents, terms)) + data.rho_gamma
    return lower, upper


def pointpush_intersection(g: int) -> int:
    """``i(alpha, f_beta(alpha))`` bound from pushing three times around a
    minimally intersecting filling pair (``i(alpha, beta) = 2g - 1``)."""
    _check_genus(g)
    i = 2 * g - 1
    _, upper = ivanov_bounds(IvanovInput((3, -3), (i, i), (i, i), 0))
    return upper


def pointpush_dilatation_upper(g: int) -> int:
    """``lambda <= i(alpha, tau)^2 + 2`` with ``i = 24g^2 - 24g + 6``."""
    _check_genus(g)
    i = 24 * g * g - 24 * g + 6
    return i * i + 2


def pointpush_upper(g: int) -> float:
    _check_genus(g)
    return 4 * math.log(g) + 2 * math.log(24)


def dowdall_lower(g: int) -> float:
    _check_genus(g)
    return math.log(2 * g) / 5


def penner_bounds(g: int) -> tuple[float, float]:
    _check_genus(g)
    return math.log(2) / (12 * g - 12), math.log(11) / g


def tsai_bounds(n: int, c_g: float) -> tuple[float, float]:
    if n < 3:
        raise ValueError("requires n >= 3")
    if c_g < 1:
        raise ValueError("c_g must be >= 1")
    return math.log(n) / (c_g * n), c_g * math.log(n) / n


@dataclass(frozen=True)
class BoundEntry:
    value: float
    valid: bool
    side: Side
    quantity: str = PURE_BRAID
    note: str = ""


@dataclass
class BoundProfile:
    genus: int
    punctures: int
    entries: dict[str, BoundEntry] = field(default_factory=dict)

    def valid(self, side: Side, quantity: str = PURE_BRAID) -> dict[str, float]:
        return {
            name: e.value
            for name, e in self.entries.items()
            if e.valid and e.side == side and e.quantity == quantity
        }

    def best_lower(self) -> tuple[str, float]:
        lows = self.valid("lower")
        name = max(lows, key=lows.get)
        return name, lows[name]

    def inconsistencies(self) -> list[tuple[str, str, float, float]]:
        """Pairs (lower, upper) on the same quantity with lower > upper."""
        out = []
        quantities = {e.quantity for e in self.entries.values()}
        for q in sorted(quantities):
            for lname, lval in sorted(self.valid("lower", q).items()):
                for uname, uval in sorted(self.valid("upper", q).items()):
                    if lval > uval:
                        out.append((lname, uname, lval, uval))
        return out

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "entries": {
                name: {
                    "value": e.value if e.valid else None,
                    "valid": e.valid,
                    "side": e.side,
                    "quantity": e.quantity,
                    "note": e.note,
                }
                for name, e in self.entries.items()
            },
        }


def _guarded(fn, *args) -> tuple[float, bool]:
    try:
        return fn(*args), True
    except ValueError:
        return math.nan, False


def context_bounds(g: int, n: int, tsai_cg: float | None = None) -> dict[str, BoundEntry]:
    """Published bounds that frame the pure braid bounds: Penner (closed
    surface), Aougab-Taylor/Dowdall (``n = 1``) and Tsai (parametric)."""
    _check_genus(g)
    plo, pup = penner_bounds(g)
    out = {
        "penner_lower": BoundEntry(plo, True, "lower", MOD_CLOSED),
        "penner_upper": BoundEntry(pup, True, "upper", MOD_CLOSED),
        "dowdall_lower": BoundEntry(dowdall_lower(g), n == 1, "lower"),
        "pointpush_upper": BoundEntry(pointpush_upper(g), n == 1, "upper"),
    }
    if tsai_cg is not None and n >= 3 and tsai_cg >= 1:
        tlo, tup = tsai_bounds(n, tsai_cg)
        ok = True
    else:
        tlo = tup = math.nan
        ok = False
    out["tsai_lower"] = BoundEntry(tlo, ok, "lower", MOD_PUNCTURED, "parametric in c_g")
    out["tsai_upper"] = BoundEntry(tup, ok, "upper", MOD_PUNCTURED, "parametric in c_g")
    return out


def bound_profile(g: int, n: int, tsai_cg: float | None = None) -> BoundProfile:
    _check_genus(g)
    _check_punctures(n)
    profile = BoundProfile(g, n)
    e = profile.entries
    e["main_upper"] = BoundEntry(main_upper(g, n), True, "upper")
    e["constant_lower"] = BoundEntry(constant_lower(), True, "lower")
    e["alm_lower"] = BoundEntry(alm_lower(kappa_lower(g, n), euler_characteristic(g, n)), True, "lower")
    for variant in ("proof", "statement"):
        value, ok = _guarded(thm61_lower, g, n, variant)
        e[f"thm61_{variant}"] = BoundEntry(value, ok, "lower", note="requires g > 5")
    e.update(context_bounds(g, n, tsai_cg))
    return profile


def at_pair_is_ivanov_upper(h: int) -> bool:
    """For ``h >= 3`` the pair bound equals Ivanov's upper bound
    ``6 (2h - 1)^2`` for a triple push."""
    return at_pair_intersection(h) == pointpush_intersection(h)


def ivanov_input(exponents: Sequence[int], rho_c: Sequence[int], c_gamma: Sequence[int], rho_gamma: int) -> IvanovInput:
    return IvanovInput(tuple(exponents), tuple(rho_c), tuple(c_gamma), rho_gamma)
