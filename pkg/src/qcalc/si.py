"""The SI: base units, named derived units, prefixes, accepted units,
defining constants, astronomical units and imperial units expressed in SI.

Decimal values are written as strings so they enter as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

from .dimension import BaseQuantity as BQ
from .errors import PiClosureError
from .quantity import (
    Quantity,
    bunit,
    dnorm,
    is_base_unit,
    q_div,
    q_equiv,
    q_inv,
    q_one,
    scale_q,
)
from .scalar import ExactScalar, ScalarLike, scalar, s_add

__all__ = [
    "CATEGORIES",
    "UnitEntry",
    "PrefixEntry",
    "UnitTable",
    "PREFIXES",
    "prefix",
    "prefix_table",
    "apply_prefix",
    "si_registry",
    "constants",
    "celsius",
    "foundational_check",
]

CATEGORIES = ("base", "derived", "accepted", "constant", "astronomical", "imperial-in-si")


@dataclass(frozen=True)
class UnitEntry:
    name: str
    value: Quantity
    aliases: tuple[str, ...] = ()
    prefixable: bool = False
    category: str = "derived"
    note: str = ""

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown unit category {self.category!r}")
        if self.category == "base" and not is_base_unit(self.value):
            raise ValueError(f"{self.name} is registered as a base unit but is not one")

    @property
    def system(self) -> str:
        return self.value.system

    def to_json(self) -> dict:
        m = self.value.mag
        out = {
            "name": self.name,
            "aliases": list(self.aliases),
            "system": self.system,
            "category": self.category,
            "magnitude": {
                "num": m.coeff.numerator,
                "den": m.coeff.denominator,
                "piexp": m.piexp,
            },
            "dim": list(self.value.dim.exps),
            "prefixable": self.prefixable,
        }
        if self.note:
            out["note"] = self.note
        return out


class UnitTable(Mapping[str, UnitEntry]):
    """Read-only name -> entry map for one unit system; aliases resolve too."""

    def __init__(self, system: str, entries: Iterable[UnitEntry]):
        self.system = system
        self._entries: dict[str, UnitEntry] = {}
        self._index: dict[str, UnitEntry] = {}
        for e in entries:
            if e.system != system:
                raise ValueError(f"{e.name} belongs to {e.system}, not {system}")
            for key in (e.name, *e.aliases):
                if key in self._index:
                    raise ValueError(f"duplicate unit name {key!r} in {system}")
                self._index[key] = e
            self._entries[e.name] = e

    def __getitem__(self, name: str) -> UnitEntry:
        return self._entries[name]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, name: str) -> UnitEntry | None:
        """Resolve a canonical name or alias."""
        return self._index.get(name)

    def quantity(self, name: str) -> Quantity:
        entry = self.lookup(name)
        if entry is None:
            raise KeyError(name)
        return entry.value


@dataclass(frozen=True)
class PrefixEntry:
    name: str
    symbol: str
    exponent: int
    aliases: tuple[str, ...] = ()

    @property
    def factor(self) -> ExactScalar:
        return ExactScalar.of(10) ** self.exponent


PREFIXES: tuple[PrefixEntry, ...] = (
    PrefixEntry("quecto", "q", -30),
    PrefixEntry("ronto", "r", -27),
    PrefixEntry("yocto", "y", -24),
    PrefixEntry("zepto", "z", -21),
    PrefixEntry("atto", "a", -18),
    PrefixEntry("femto", "f", -15),
    PrefixEntry("pico", "p", -12),
    PrefixEntry("nano", "n", -9),
    PrefixEntry("micro", "µ", -6, ("μ", "u")),
    PrefixEntry("milli", "m", -3),
    PrefixEntry("centi", "c", -2),
    PrefixEntry("deci", "d", -1),
    PrefixEntry("deca", "da", 1, ("deka",)),
    PrefixEntry("hecto", "h", 2),
    PrefixEntry("kilo", "k", 3),
    PrefixEntry("mega", "M", 6),
    PrefixEntry("giga", "G", 9),
    PrefixEntry("tera", "T", 12),
    PrefixEntry("peta", "P", 15),
    PrefixEntry("exa", "E", 18),
    PrefixEntry("zetta", "Z", 21),
    PrefixEntry("yotta", "Y", 24),
    PrefixEntry("ronna", "R", 27),
    PrefixEntry("quetta", "Q", 30),
)


@lru_cache(maxsize=None)
def prefix_table() -> Mapping[str, PrefixEntry]:
    """Every spelling (name, symbol, alias) of every prefix."""
    table: dict[str, PrefixEntry] = {}
    for p in PREFIXES:
        for key in (p.name, p.symbol, *p.aliases):
            table[key] = p
    return MappingProxyType(table)


def prefix(name: str) -> PrefixEntry:
    return prefix_table()[name]


def apply_prefix(p: PrefixEntry | str, u: Quantity) -> Quantity:
    if isinstance(p, str):
        p = prefix(p)
    return scale_q(p.factor, u)


def _q(n: ScalarLike, u: Quantity) -> Quantity:
    return scale_q(n, u)


@lru_cache(maxsize=None)
def _build() -> tuple[UnitTable, Mapping[str, Quantity]]:
    metre = bunit(BQ.Length, "SI")
    kilogram = bunit(BQ.Mass, "SI")
    second = bunit(BQ.Time, "SI")
    ampere = bunit(BQ.Current, "SI")
    kelvin = bunit(BQ.Temperature, "SI")
    mole = bunit(BQ.Amount, "SI")
    candela = bunit(BQ.Intensity, "SI")

    entries: list[UnitEntry] = []

    def add(name, value, aliases=(), prefixable=False, category="derived", note=""):
        entries.append(UnitEntry(name, value, tuple(aliases), prefixable, category, note))
        return value

    add("metre", metre, ("meter", "m"), True, "base")
    add("kilogram", kilogram, ("kg",), False, "base")
    add("second", second, ("s", "sec"), True, "base")
    add("ampere", ampere, ("A", "amp"), True, "base")
    add("kelvin", kelvin, ("K",), True, "base")
    add("mole", mole, ("mol",), True, "base")
    add("candela", candela, ("cd",), True, "base")

    hertz = add("hertz", q_inv(second), ("Hz",), True)
    radian = add("radian", metre * metre**-1, ("rad",), True)
    steradian = add("steradian", metre**2 * metre**-2, ("sr",), True)
    joule = add("joule", kilogram * metre**2 * second**-2, ("J",), True)
    watt = add("watt", kilogram * metre**2 * second**-3, ("W",), True)
    coulomb = add("coulomb", ampere * second, ("C",), True)
    lumen = add("lumen", candela * steradian, ("lm",), True)
    add("newton", kilogram * metre * second**-2, ("N",), True)
    add("pascal", kilogram * metre**-1 * second**-2, ("Pa",), True)
    volt = add("volt", kilogram * metre**2 * second**-3 * ampere**-1, ("V",), True)
    add(
        "farad",
        kilogram**-1 * metre**-2 * second**4 * ampere**2,
        ("F",),
        True,
        note="mass exponent -1 so that farad = coulomb/volt holds",
    )
    ohm = add("ohm", kilogram * metre**2 * second**-3 * ampere**-2, ("Ω", "Ohm"), True)
    add("siemens", q_inv(ohm), ("S",), True)
    weber = add("weber", volt * second, ("Wb",), True)
    add("tesla", weber * metre**-2, ("T",), True)
    add("henry", weber * ampere**-1, ("H",), True)
    add("lux", lumen * metre**-2, ("lx",), True)
    add("becquerel", q_inv(second), ("Bq",), True)
    add("gray", joule * kilogram**-1, ("Gy",), True)
    add("sievert", joule * kilogram**-1, ("Sv",), True)
    add("katal", mole * second**-1, ("kat",), True)

    minute = add("minute", _q(60, second), ("min",), False, "accepted")
    hour = add("hour", _q(60, minute), ("h", "hr"), False, "accepted")
    day = add("day", _q(24, hour), ("d",), False, "accepted")
    add("degree", _q(scalar(1, 1) / 180, radian), ("deg", "°"), False, "accepted")
    add("arcminute", _q(scalar(1, 1) / 10800, radian), ("arcmin",), False, "accepted")
    add("arcsecond", _q(scalar(1, 1) / 648000, radian), ("arcsec",), True, "accepted")
    litre = add("litre", _q("1/1000", metre**3), ("liter", "L", "l"), True, "accepted")
    add("tonne", _q(1000, kilogram), ("t",), True, "accepted")
    add("hectare", _q(1, (_q(100, metre)) ** 2), ("ha",), False, "accepted")
    add("gram", _q("1/1000", kilogram), ("g",), True, "accepted")
    add("electronvolt", _q("1.602176634e-19", joule), ("eV",), True, "accepted")

    consts: dict[str, Quantity] = {
        "Delta_nu_Cs": _q(9192631770, hertz),
        "c": _q(299792458, metre * second**-1),
        "h": _q("6.62607015e-34", joule * second),
        "e": _q("1.602176634e-19", coulomb),
        "k": _q("1.380649e-23", q_div(joule, kelvin)),
        "N_A": _q("6.02214076e23", mole**-1),
        "K_cd": _q(683, q_div(lumen, watt)),
    }
    add("caesium-frequency", consts["Delta_nu_Cs"], ("Delta_nu_Cs",), False, "constant")
    add("speed-of-light", consts["c"], ("c", "c_0"), False, "constant")
    add("planck-constant", consts["h"], ("h_P", "planck"), False, "constant")
    add("elementary-charge", consts["e"], ("e_charge",), False, "constant")
    add("boltzmann-constant", consts["k"], ("k_B", "boltzmann"), False, "constant")
    add("avogadro-constant", consts["N_A"], ("N_A",), False, "constant")
    add("luminous-efficacy", consts["K_cd"], ("K_cd",), False, "constant")

    julian_year = add("julian-year", _q("365.25", day), ("julian_year", "a_j"), False, "astronomical")
    add(
        "light-year",
        dnorm(consts["c"] * julian_year, metre.dim),
        ("light_year", "ly"),
        False,
        "astronomical",
    )
    au = add(
        "astronomical-unit",
        _q(149597870700, metre),
        ("astronomical_unit", "au", "ua"),
        False,
        "astronomical",
    )
    add("parsec", _q(scalar(648000, -1), au), ("pc",), True, "astronomical")

    yard = add("yard", _q("0.9144", metre), ("yd",), False, "imperial-in-si")
    add("mile", _q(1760, yard), ("mi",), False, "imperial-in-si")
    foot = add("foot", _q("1/3", yard), ("ft", "feet"), False, "imperial-in-si")
    add("inch", _q("1/12", foot), ("in",), False, "imperial-in-si")
    pound = add(
        "pound",
        _q("0.4535937", kilogram),
        ("lb",),
        False,
        "imperial-in-si",
        note="0.4535937 kg as printed in the source; the international pound is 0.45359237 kg",
    )
    add("stone", _q(14, pound), ("st",), False, "imperial-in-si")
    add("ounce", _q("1/16", pound), ("oz",), False, "imperial-in-si")
    pint = add("pint", _q("0.56826125", litre), ("pt",), False, "imperial-in-si")
    add("gallon", _q(8, pint), ("gal",), False, "imperial-in-si")

    return UnitTable("SI", entries), MappingProxyType(consts)


def si_registry() -> UnitTable:
    return _build()[0]


def constants() -> Mapping[str, Quantity]:
    """The seven defining constants keyed by their usual symbols."""
    return _build()[1]


def celsius(t: ScalarLike) -> Quantity:
    """``t`` degrees Celsius as a thermodynamic temperature in kelvin."""
    t = ExactScalar.of(t)
    if t.piexp != 0:
        raise PiClosureError("Celsius temperatures must be rational")
    return scale_q(s_add(t, scalar("273.15")), si_registry().quantity("kelvin"))


def foundational_check() -> list[tuple[str, bool]]:
    """Recover second, metre and kilogram from the defining constants."""
    reg = si_registry()
    c = constants()
    second, metre, kilogram = (reg.quantity(n) for n in ("second", "metre", "kilogram"))
    one = q_one("SI")
    s_def = q_div(scale_q(9192631770, one), c["Delta_nu_Cs"])
    m_def = q_div(c["c"], scale_q(299792458, one)) * second
    kg_def = q_div(c["h"], scale_q("6.62607015e-34", one)) * metre**-2 * second
    return [
        ("second", q_equiv(second, s_def)),
        ("metre", q_equiv(metre, m_def)),
        ("kilogram", q_equiv(kilogram, kg_def)),
    ]

