"""Deterministic emission of reports and curves: JSON, CSV, SVG, atomic writes.

All numbers are serialized with 17 significant digits so doubles round-trip
exactly and identical invocations produce byte-identical files.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1


def fmt(x) -> str:
    """17-significant-digit representation of a float."""
    return format(float(x), ".17g")


def _render(obj, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad_in}{json.dumps(str(k))}: {_render(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad_in}{_render(v, indent, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps_json(obj, indent: int = 2) -> str:
    """Render a report dict to deterministic JSON text (trailing newline)."""
    return _render(obj, indent, 0) + "\n"


def write_text_atomic(path, text: str) -> None:
    """Write a file in one atomic replace; no partially written outputs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def profile_csv(theta, x, y) -> str:
    """CSV with columns theta,X,Y."""
    lines = ["theta,X,Y"]
    for t, xx, yy in zip(theta, x, y):
        lines.append(f"{fmt(t)},{fmt(xx)},{fmt(yy)}")
    return "\n".join(lines) + "\n"


def family_csv(members) -> str:
    """CSV with columns b,theta,X,Y; members are (b, theta, x, y) tuples."""
    lines = ["b,theta,X,Y"]
    for b, theta, x, y in members:
        for t, xx, yy in zip(theta, x, y):
            lines.append(f"{fmt(b)},{fmt(t)},{fmt(xx)},{fmt(yy)}")
    return "\n".join(lines) + "\n"


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _coord(x: float) -> str:
    return format(float(x), ".9g")


def profiles_svg(curves, title: str = "profile curves") -> str:
    """Overlaid closed curves with both symmetry axes, fixed viewBox from the bbox.

    curves: iterable of (label, x array, y array).  The vertical axis is
    flipped so positive Y points up.
    """
    curves = [(str(lbl), np.asarray(x, float), np.asarray(y, float)) for lbl, x, y in curves]
    if not curves:
        raise ValueError("no curves to draw")
    xs = np.concatenate([c[1] for c in curves])
    ys = np.concatenate([c[2] for c in curves])
    span = max(float(np.max(np.abs(xs))), float(np.max(np.abs(ys)))) * 1.08
    vb = f"{_coord(-span)} {_coord(-span)} {_coord(2 * span)} {_coord(2 * span)}"
    stroke_w = _coord(span / 240.0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" viewBox="{vb}">',
        f"  <title>{title}</title>",
        f'  <line x1="{_coord(-span)}" y1="0" x2="{_coord(span)}" y2="0" '
        f'stroke="#888888" stroke-width="{stroke_w}"/>',
        f'  <line x1="0" y1="{_coord(-span)}" x2="0" y2="{_coord(span)}" '
        f'stroke="#888888" stroke-width="{stroke_w}"/>',
    ]
    for i, (label, x, y) in enumerate(curves):
        color = _SVG_PALETTE[i % len(_SVG_PALETTE)]
        pts = " ".join(f"{_coord(xx)},{_coord(-yy)}" for xx, yy in zip(x, y))
        parts.append(
            f'  <polygon points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{_coord(span / 120.0)}"><title>{label}</title></polygon>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
