"""JSON conversion with exact rationals as ``{"num": str, "den": str}``."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

from .exactlin import RatMatrix
from .params import QuadraticSurd


def rat_json(x: Fraction) -> dict[str, str]:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_json(obj)
    if isinstance(obj, QuadraticSurd):
        return {"rational": rat_json(obj.a), "sqrt_coeff": rat_json(obj.b), "radicand": obj.d}
    if isinstance(obj, RatMatrix):
        return [[rat_json(x) for x in row] for row in obj.rows]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def fmt(x: Any) -> str:
    """Human-readable ``p/q`` form for rationals."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(fmt(y) for y in x) + ")"
    return str(x)
