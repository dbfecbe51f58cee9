"""Deterministic text serialization.

Every number printed by the package goes through fmt15, so identical
invocations produce byte-identical files regardless of platform float repr
choices.
"""

from __future__ import annotations


def fmt15(x) -> str:
    """15 significant digits, plain ASCII."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.15g}"


def fmt15_complex(z: complex) -> str:
    re, im = fmt15(z.real), fmt15(z.imag)
    sign = "+" if z.imag >= 0 else ""
    return f"{re}{sign}{im}j"


def to_json(obj, indent: int = 0) -> str:
    """JSON text with fmt15 floats.  Handles the report shapes used here."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt15(obj)
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ", ".join(to_json(x, indent + 1) for x in obj)
        if len(items) <= 70:
            return f"[{items}]"
        body = ",\n".join(inner + to_json(x, indent + 1) for x in obj)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f'{inner}"{key}": {to_json(val, indent + 1)}' for key, val in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
