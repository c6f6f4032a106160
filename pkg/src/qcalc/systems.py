"""Unit systems and the conversion schemas between them.

A :class:`ConversionSchema` holds one positive rational scale factor per base
quantity.  Converting a quantity multiplies its magnitude by the product of
each factor raised to the matching dimension exponent; the dimension itself
never changes.  Systems that carry a schema into the SI are *metrifiable*,
and any two metrifiable systems can be bridged through the SI with
:func:`qmc`.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .dimension import NDIM, BaseQuantity
from .errors import NonMetrifiableError, SchemaError, SystemMismatchError, UnknownSystemError
from .quantity import (
    Quantity,
    bunit,
    register_system_id,
    scale_q,
)
from .scalar import ExactScalar
from .si import UnitEntry, UnitTable, si_registry

__all__ = [
    "ConversionSchema",
    "SystemEntry",
    "SystemRegistry",
    "REGISTRY",
    "schema_id",
    "schema_compose",
    "schema_invert",
    "qconv",
    "metrify",
    "qmc",
    "builtin_systems",
    "get_system",
    "register_system",
    "load_schemas",
]


def _factor(x) -> Fraction:
    s = ExactScalar.of(x)
    if s.piexp != 0:
        raise SchemaError("conversion factors must be rational")
    return s.coeff


@dataclass(frozen=True)
class ConversionSchema:
    source: str
    target: str
    factors: tuple[Fraction, ...]

    def __post_init__(self):
        fs = tuple(_factor(f) for f in self.factors)
        if len(fs) != NDIM:
            raise SchemaError(f"a conversion schema needs {NDIM} factors, got {len(fs)}")
        for q, f in zip(BaseQuantity, fs):
            if f <= 0:
                raise SchemaError(f"conversion factor for {q.name} must be positive, got {f}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_map(cls, source: str, target: str, factors: Mapping[BaseQuantity, object]):
        """Build from a partial ``{BaseQuantity: factor}``; missing factors are 1."""
        fs = [Fraction(1)] * NDIM
        for q, f in factors.items():
            fs[q.value] = _factor(f)
        return cls(source, target, tuple(fs))

    def factor(self, q: BaseQuantity) -> Fraction:
        return self.factors[q.value]

    def scale(self, dim) -> Fraction:
        """Overall magnitude factor for a quantity of dimension ``dim``."""
        out = Fraction(1)
        for f, k in zip(self.factors, dim):
            if k:
                out *= f**k
        return out

    def __matmul__(self, other: ConversionSchema) -> ConversionSchema:
        return schema_compose(self, other)


def schema_id(sys: str) -> ConversionSchema:
    return ConversionSchema(sys, sys, (Fraction(1),) * NDIM)


def schema_compose(c2: ConversionSchema, c1: ConversionSchema) -> ConversionSchema:
    """``c2 after c1``: convert with ``c1`` first, then ``c2``."""
    if c1.target != c2.source:
        raise SchemaError(
            f"cannot compose {c1.source}->{c1.target} with {c2.source}->{c2.target}"
        )
    return ConversionSchema(
        c1.source, c2.target, tuple(a * b for a, b in zip(c2.factors, c1.factors))
    )


def schema_invert(c: ConversionSchema) -> ConversionSchema:
    return ConversionSchema(c.target, c.source, tuple(1 / f for f in c.factors))


def qconv(c: ConversionSchema, x: Quantity) -> Quantity:
    if x.system != c.source:
        raise SystemMismatchError(
            f"schema converts from {c.source}, but the quantity is in {x.system}"
        )
    scaled = scale_q(ExactScalar(c.scale(x.dim)), x)
    return Quantity(scaled.mag, scaled.dim, c.target)


@dataclass(frozen=True)
class SystemEntry:
    id: str
    metrification: ConversionSchema | None
    units: UnitTable = field(repr=False)

    def __post_init__(self):
        m = self.metrification
        if m is not None and (m.source != self.id or m.target != "SI"):
            raise SchemaError(f"metrification of {self.id} must be a {self.id}->SI schema")
        if self.units.system != self.id:
            raise ValueError("unit table belongs to a different system")

    @property
    def metrifiable(self) -> bool:
        return self.metrification is not None


class SystemRegistry:
    """Append-only registry; readers get an immutable snapshot."""

    def __init__(self):
        self._lock = threading.Lock()
        self._systems: Mapping[str, SystemEntry] = MappingProxyType({})

    def register(self, entry: SystemEntry, replace: bool = False) -> SystemEntry:
        with self._lock:
            current = self._systems
            if entry.id in current and not replace:
                if current[entry.id] == entry:
                    return current[entry.id]
                raise SchemaError(f"unit system {entry.id!r} is already registered")
            register_system_id(entry.id)
            updated = dict(current)
            updated[entry.id] = entry
            self._systems = MappingProxyType(updated)
        return entry

    def snapshot(self) -> Mapping[str, SystemEntry]:
        return self._systems

    def get(self, sys: str) -> SystemEntry:
        try:
            return self._systems[sys]
        except KeyError:
            raise UnknownSystemError(f"unknown unit system {sys!r}") from None

    def __contains__(self, sys: str) -> bool:
        return sys in self._systems


REGISTRY = SystemRegistry()


def get_system(sys: str) -> SystemEntry:
    return REGISTRY.get(sys)


def _metrification(sys: str) -> ConversionSchema:
    entry = REGISTRY.get(sys)
    if entry.metrification is None:
        raise NonMetrifiableError(f"unit system {sys!r} has no conversion schema into the SI")
    return entry.metrification


def metrify(x: Quantity) -> Quantity:
    return qconv(_metrification(x.system), x)


def qmc(x: Quantity, to: str) -> Quantity:
    """Convert between two metrifiable systems by way of the SI."""
    bridge = schema_compose(schema_invert(_metrification(to)), _metrification(x.system))
    return qconv(bridge, x)


def register_system(
    sys: str,
    metrification: ConversionSchema | Mapping[BaseQuantity, object] | None,
    units: Iterable[UnitEntry] = (),
    base_units: Mapping[BaseQuantity, Sequence[str]] | None = None,
) -> SystemEntry:
    """Register a new unit system.

    ``base_units`` maps base quantities to ``(name, *aliases)`` and creates a
    coherent base unit for each.  Factors must all be positive.
    """
    if sys in REGISTRY:
        raise SchemaError(f"unit system {sys!r} is already registered")
    if isinstance(metrification, Mapping):
        metrification = ConversionSchema.from_map(sys, "SI", metrification)
    if metrification is not None and (metrification.source, metrification.target) != (sys, "SI"):
        raise SchemaError(
            f"metrification of {sys!r} must map {sys} -> SI, "
            f"got {metrification.source} -> {metrification.target}"
        )
    register_system_id(sys)
    entries = []
    for q, names in (base_units or {}).items():
        name, *aliases = names
        entries.append(UnitEntry(name, bunit(q, sys), tuple(aliases), True, "base"))
    entries.extend(units)
    return REGISTRY.register(SystemEntry(sys, metrification, UnitTable(sys, entries)))


def _bis_units() -> list[UnitEntry]:
    yard = bunit(BaseQuantity.Length, "BIS")
    pound = bunit(BaseQuantity.Mass, "BIS")
    second = bunit(BaseQuantity.Time, "BIS")
    foot = scale_q("1/3", yard)
    inch = scale_q("1/12", foot)
    gallon = scale_q("277.421", inch**3)
    return [
        UnitEntry("yard", yard, ("yd",), False, "base"),
        UnitEntry("pound", pound, ("lb",), False, "base"),
        UnitEntry("second", second, ("s", "sec"), False, "base"),
        UnitEntry("foot", foot, ("ft", "feet"), False, "derived"),
        UnitEntry("inch", inch, ("in",), False, "derived"),
        UnitEntry("mile", scale_q(1760, yard), ("mi",), False, "derived"),
        UnitEntry("ounce", scale_q("1/16", pound), ("oz",), False, "derived"),
        UnitEntry("stone", scale_q(14, pound), ("st",), False, "derived"),
        UnitEntry("gallon", gallon, ("gal",), False, "derived"),
        UnitEntry("pint", scale_q("1/8", gallon), ("pt",), False, "derived"),
    ]


def _usc_units() -> list[UnitEntry]:
    yard = bunit(BaseQuantity.Length, "USC")
    pound = bunit(BaseQuantity.Mass, "USC")
    second = bunit(BaseQuantity.Time, "USC")
    foot = scale_q("1/3", yard)
    inch = scale_q("1/12", foot)
    gallon = scale_q(231, inch**3)
    return [
        UnitEntry("yard", yard, ("yd",), False, "base"),
        UnitEntry("pound", pound, ("lb",), False, "base"),
        UnitEntry("second", second, ("s", "sec"), False, "base"),
        UnitEntry("foot", foot, ("ft", "feet"), False, "derived"),
        UnitEntry("inch", inch, ("in",), False, "derived"),
        UnitEntry("mile", scale_q(1760, yard), ("mi",), False, "derived"),
        UnitEntry("ounce", scale_q("1/16", pound), ("oz",), False, "derived"),
        UnitEntry("gallon", gallon, ("gal",), False, "derived"),
        UnitEntry("pint", scale_q("1/8", gallon), ("pt",), False, "derived"),
    ]


def _cgs_units() -> list[UnitEntry]:
    centimetre = bunit(BaseQuantity.Length, "CGS")
    gram = bunit(BaseQuantity.Mass, "CGS")
    second = bunit(BaseQuantity.Time, "CGS")
    dyne = gram * centimetre * second**-2
    return [
        UnitEntry("centimetre", centimetre, ("centimeter", "cm"), False, "base"),
        UnitEntry("gram", gram, ("g",), True, "base"),
        UnitEntry("second", second, ("s", "sec"), True, "base"),
        UnitEntry("metre", scale_q(100, centimetre), ("meter", "m"), True, "derived"),
        UnitEntry("dyne", dyne, ("dyn",), True, "derived"),
        UnitEntry("erg", dyne * centimetre, (), True, "derived"),
        UnitEntry("gal", centimetre * second**-2, ("Gal", "galileo"), True, "derived"),
    ]


_builtin_lock = threading.Lock()
_builtin_done = False


def builtin_systems() -> Mapping[str, SystemEntry]:
    """Register SI, BIS, USC and CGS (idempotent) and return the registry snapshot."""
    global _builtin_done
    with _builtin_lock:
        if not _builtin_done:
            for sys in ("BIS", "USC", "CGS"):
                register_system_id(sys)
            L, M = BaseQuantity.Length, BaseQuantity.Mass
            REGISTRY.register(SystemEntry("SI", schema_id("SI"), si_registry()))
            REGISTRY.register(
                SystemEntry(
                    "BIS",
                    ConversionSchema.from_map("BIS", "SI", {L: "0.9143993", M: "0.453592338"}),
                    UnitTable("BIS", _bis_units()),
                )
            )
            REGISTRY.register(
                SystemEntry(
                    "USC",
                    ConversionSchema.from_map("USC", "SI", {L: "0.9144018", M: "0.45359237"}),
                    UnitTable("USC", _usc_units()),
                )
            )
            REGISTRY.register(
                SystemEntry(
                    "CGS",
                    ConversionSchema.from_map("CGS", "SI", {L: "1/100", M: "1/1000"}),
                    UnitTable("CGS", _cgs_units()),
                )
            )
            _builtin_done = True
    return REGISTRY.snapshot()


def _schema_record(rec: Mapping) -> ConversionSchema:
    try:
        source, target, factors = rec["source"], rec["target"], rec["factors"]
    except KeyError as exc:
        raise SchemaError(f"schema record is missing {exc.args[0]!r}") from None
    if isinstance(factors, Mapping):
        fs = [Fraction(1)] * NDIM
        for key, val in factors.items():
            try:
                q = BaseQuantity[key]
            except KeyError:
                raise SchemaError(f"unknown base quantity {key!r}") from None
            fs[q.value] = _factor(str(val) if not isinstance(val, str) else val)
        factors = fs
    else:
        factors = [_factor(str(f) if not isinstance(f, str) else f) for f in factors]
    return ConversionSchema(str(source), str(target), tuple(factors))


def load_schemas(path: str | Path) -> list[SystemEntry]:
    """Register systems described in a JSON schema file.

    The file holds a list of records (or ``{"schemas": [...]}``), each with
    ``source``, ``target`` and seven ``factors`` given as ``"num/den"`` or
    exact decimal strings.  A record whose target is not the SI is chained
    through the target's own metrification.  Optional ``base_units`` maps
    base-quantity names to a unit name or list of spellings.
    """
    builtin_systems()
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, Mapping):
        data = data.get("schemas", [])
    out = []
    for rec in data:
        schema = _schema_record(rec)
        if schema.target != "SI":
            schema = schema_compose(_metrification(schema.target), schema)
        base_units = {}
        for key, names in (rec.get("base_units") or {}).items():
            names = [names] if isinstance(names, str) else list(names)
            base_units[BaseQuantity[key]] = names
        out.append(register_system(schema.source, schema, base_units=base_units))
    return out


# builtin systems are always available once this module is imported
builtin_systems()
