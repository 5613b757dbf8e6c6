"""Parsing of the JSON problem description.

    {"d": 2, "w": "0", "alpha": [1, 1], "beta": [1, 1, 0],
     "lambda": ["1/6", "-1"], "chi": [["-4/7", "20736/637"], ["10368", "-1704/7"]]}

A rank-two family member may be given instead, or in addition:

    {"family": {"class": 1, "t": "1/6", "x": "1"}}

Every problem is reported with the path of the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InputError
from .families import Family2D
from .linalg import Matrix
from .multiplier import MultiplierData
from .series import parse_rational


@dataclass(frozen=True)
class Problem:
    multiplier: MultiplierData
    Lambda: tuple[Fraction, ...] | None = None
    chi: Matrix | None = None
    family: Family2D | None = None


def _rational(value: Any, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except InputError:
        raise InputError(f"{where}: expected a rational like \"p/q\", got {value!r}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _list(value: Any, where: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(value)}")
    return value


def parse_family(data: Any) -> Family2D:
    if not isinstance(data, dict):
        raise InputError("family: expected an object")
    for key in ("class", "t"):
        if key not in data:
            raise InputError(f"family.{key}: missing")
    return Family2D(
        _int(data["class"], "family.class"),
        _rational(data["t"], "family.t"),
        _rational(data.get("x", "1"), "family.x"),
    )


def parse_problem(data: Any) -> Problem:
    if not isinstance(data, dict):
        raise InputError("input: expected a JSON object")
    family = parse_family(data["family"]) if "family" in data else None
    if family is not None and "d" not in data:
        return Problem(family.multiplier, family.Lambda, family.chi, family)
    for key in ("d", "w", "alpha", "beta"):
        if key not in data:
            raise InputError(f"{key}: missing")
    d = _int(data["d"], "d")
    if d < 1:
        raise InputError("d: must be positive")
    w = _rational(data["w"], "w")
    alpha = [_int(a, f"alpha[{k}]") for k, a in enumerate(_list(data["alpha"], "alpha", 2))]
    beta = [_int(b, f"beta[{k}]") for k, b in enumerate(_list(data["beta"], "beta", 3))]
    lam = None
    if "lambda" in data:
        lam = tuple(
            _rational(x, f"lambda[{k}]") for k, x in enumerate(_list(data["lambda"], "lambda", d))
        )
    chi = None
    if "chi" in data:
        rows = _list(data["chi"], "chi", d)
        chi = tuple(
            tuple(_rational(x, f"chi[{i}][{j}]") for j, x in enumerate(_list(row, f"chi[{i}]", d)))
            for i, row in enumerate(rows)
        )
    multiplier = MultiplierData(d, w, tuple(alpha), tuple(beta), lam)
    return Problem(multiplier, lam, chi, family)


def load_problem(path: str | Path) -> Problem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    return parse_problem(data)
