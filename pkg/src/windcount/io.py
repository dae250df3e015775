"""Coefficient files, region JSON and canonical JSON output."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .contour import ContourError, region_from_json
from .polynomial import Polynomial


class InputError(ValueError):
    """Malformed user input; the message names the offending field."""


def parse_coefficients(text: str, source: str = "poly") -> Polynomial:
    """Parse either a JSON array of ``[re, im]`` pairs or ``re im`` lines.

    Lines are lowest degree first; ``#`` starts a comment line. A line with
    a single number is a real coefficient.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            pairs = json.loads(stripped)
            coeffs = [complex(float(re), float(im)) for re, im in pairs]
        except (ValueError, TypeError) as exc:
            raise InputError(f"{source}: expected a JSON array of [re, im] pairs ({exc})") from None
    else:
        coeffs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if len(parts) == 1:
                    coeffs.append(complex(float(parts[0]), 0.0))
                elif len(parts) == 2:
                    coeffs.append(complex(float(parts[0]), float(parts[1])))
                else:
                    raise ValueError(f"{len(parts)} fields")
            except ValueError as exc:
                raise InputError(f"{source}: line {lineno}: expected 're im' ({exc})") from None
    if not coeffs:
        raise InputError(f"{source}: no coefficients")
    if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in coeffs):
        raise InputError(f"{source}: non-finite coefficient")
    p = Polynomial(coeffs)
    if p.is_zero:
        raise InputError(f"{source}: the zero polynomial has no roots to count")
    return p


def read_polynomial(path: str | Path) -> Polynomial:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"--poly: cannot read {path} ({exc.strerror})") from None
    return parse_coefficients(text, source=f"--poly {path}")


def format_coefficients(p: Polynomial) -> str:
    lines = ["# re im, lowest degree first"]
    lines += [f"{_fmt(c.real)} {_fmt(c.imag)}" for c in p.coeffs]
    return "\n".join(lines) + "\n"


def write_polynomial(p: Polynomial, path: str | Path) -> None:
    Path(path).write_text(format_coefficients(p))


def parse_region(arg: str):
    """Region from an inline JSON string or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"--region: cannot read {arg} ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--region: invalid JSON ({exc.msg})") from None
    try:
        return region_from_json(obj)
    except ContourError as exc:
        raise InputError(f"--region: {exc}") from None


def _fmt(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float cannot be serialized")
    return format(x, ".17g")


def canonical_json(obj) -> str:
    """JSON with sorted keys, no spaces and floats at 17 significant digits.

    Parsing the output and serializing again gives identical bytes.
    """
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return canonical_json([obj.real, obj.imag])
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + canonical_json(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
