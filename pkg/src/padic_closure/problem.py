"""Problem files: UTF-8 JSON with ``schema_version`` 1.

Two shapes are accepted.  A closure problem has ``group``, ``p`` and
``generators``; a Leopoldt problem has ``field``, ``units`` and ``primes``.
Rationals are strings "a/b" (plain integers are also accepted).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .closure import (
    AdditiveLine,
    EllipticCurve,
    GroupSpec,
    MultiplicativeLine,
    NumberFieldTorus,
    coordinate_to_json,
)
from .elliptic import RationalPoint
from .errors import ParseError
from .primes import is_prime

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"-?\d+(/\d+)?")


@dataclass(frozen=True)
class ClosureProblem:
    spec: GroupSpec
    generators: tuple
    p: int
    precision: int | None = None
    box: int | None = None
    name: str = ""
    expect: dict | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": self.spec.to_json(),
            "p": self.p,
            "generators": [
                [coordinate_to_json(c, x) for c, x in zip(self.spec.components, g)]
                for g in self.generators
            ],
        }


@dataclass(frozen=True)
class LeopoldtProblem:
    f: tuple[int, ...]
    units: tuple[tuple[int, ...], ...]
    primes: tuple[int, ...]
    precision: int | None = None
    name: str = ""
    expect: dict | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": {"f": list(self.f)},
            "units": [list(u) for u in self.units],
            "primes": list(self.primes),
        }


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        num, _, den = value.strip().partition("/")
        if den and int(den) == 0:
            raise ParseError("zero denominator", where)
        return Fraction(int(num), int(den or 1))
    raise ParseError(f"expected a rational like \"a/b\", got {value!r}", where)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", where)
    return value


def _positive(value, where: str) -> int:
    n = _integer(value, where)
    if n < 1:
        raise ParseError(f"expected a positive integer, got {n}", where)
    return n


def _prime(value, where: str) -> int:
    p = _integer(value, where)
    if p < 2 or not is_prime(p):
        raise ParseError(f"{p} is not prime", where)
    return p


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", where)
    return value


def _int_poly(value, where: str) -> tuple[int, ...]:
    coeffs = _list(value, where)
    if len(coeffs) < 2:
        raise ParseError("polynomial needs degree >= 1", where)
    return tuple(_integer(c, f"{where}[{i}]") for i, c in enumerate(coeffs))


def _component(obj, where: str):
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("component must be an object with a \"type\"", where)
    kind = obj["type"]
    if kind == "additive":
        return AdditiveLine()
    if kind == "multiplicative":
        return MultiplicativeLine()
    if kind == "number_field_torus":
        if "f" not in obj:
            raise ParseError("missing \"f\"", where)
        f = _int_poly(obj["f"], f"{where}.f")
        if f[-1] != 1:
            raise ParseError("f must be monic (ascending coefficients, last = 1)", f"{where}.f")
        return NumberFieldTorus(f)
    if kind == "elliptic_curve":
        for key in ("a", "b"):
            if key not in obj:
                raise ParseError(f"missing \"{key}\"", where)
        return EllipticCurve(parse_rational(obj["a"], f"{where}.a"), parse_rational(obj["b"], f"{where}.b"))
    raise ParseError(f"unknown component type {kind!r}", f"{where}.type")


def _coordinate(comp, value, where: str):
    if isinstance(comp, AdditiveLine):
        return parse_rational(value, where)
    if isinstance(comp, MultiplicativeLine):
        q = parse_rational(value, where)
        if q == 0:
            raise ParseError("G_m coordinate must be nonzero", where)
        return q
    if isinstance(comp, NumberFieldTorus):
        coeffs = _list(value, where)
        if not coeffs:
            raise ParseError("empty coefficient list", where)
        return tuple(parse_rational(c, f"{where}[{i}]") for i, c in enumerate(coeffs))
    if value == "O":
        return RationalPoint()
    pair = _list(value, where)
    if len(pair) != 2:
        raise ParseError("a point is [x, y] or \"O\"", where)
    return RationalPoint(parse_rational(pair[0], f"{where}[0]"), parse_rational(pair[1], f"{where}[1]"))


def _common(data: dict):
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})", "schema_version")
    precision = _positive(data["precision"], "precision") if "precision" in data else None
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("expected a string", "name")
    expect = data.get("expect")
    if expect is not None and not isinstance(expect, dict):
        raise ParseError("expected an object", "expect")
    return precision, name, expect


def parse_closure(data: dict) -> ClosureProblem:
    precision, name, expect = _common(data)
    for key in ("group", "p", "generators"):
        if key not in data:
            raise ParseError(f"missing required field \"{key}\"", key)
    comps = [_component(c, f"group[{i}]") for i, c in enumerate(_list(data["group"], "group"))]
    if not comps:
        raise ParseError("group needs at least one component", "group")
    spec = GroupSpec(tuple(comps))
    p = _prime(data["p"], "p")
    box = _positive(data["box"], "box") if "box" in data else None
    gens = []
    for j, g in enumerate(_list(data["generators"], "generators")):
        g = _list(g, f"generators[{j}]")
        if len(g) != len(comps):
            raise ParseError(f"expected {len(comps)} coordinates, got {len(g)}", f"generators[{j}]")
        gens.append(tuple(_coordinate(c, x, f"generators[{j}][{i}]") for i, (c, x) in enumerate(zip(comps, g))))
    return ClosureProblem(spec, tuple(gens), p, precision, box, name, expect)


def parse_leopoldt(data: dict) -> LeopoldtProblem:
    precision, name, expect = _common(data)
    for key in ("field", "units", "primes"):
        if key not in data:
            raise ParseError(f"missing required field \"{key}\"", key)
    field = data["field"]
    if not isinstance(field, dict) or "f" not in field:
        raise ParseError("expected {\"f\": [...]}", "field")
    f = _int_poly(field["f"], "field.f")
    units = []
    for j, u in enumerate(_list(data["units"], "units")):
        coeffs = _list(u, f"units[{j}]")
        if not coeffs:
            raise ParseError("empty coefficient list", f"units[{j}]")
        units.append(tuple(_integer(c, f"units[{j}][{i}]") for i, c in enumerate(coeffs)))
    primes = tuple(_prime(q, f"primes[{i}]") for i, q in enumerate(_list(data["primes"], "primes")))
    if not primes:
        raise ParseError("need at least one prime", "primes")
    return LeopoldtProblem(f, tuple(units), primes, precision, name, expect)


def parse_problem(text: str) -> ClosureProblem | LeopoldtProblem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", "line 1")
    if "field" in data:
        return parse_leopoldt(data)
    return parse_closure(data)


def load_problem(path: str | Path) -> ClosureProblem | LeopoldtProblem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", str(path)) from None
    return parse_problem(text)
