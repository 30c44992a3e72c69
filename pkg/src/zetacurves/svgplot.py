"""Minimal self-contained SVG figures.

Polylines keep raw data coordinates (the same repr-formatted numbers
the CSV writers emit); the world-to-screen mapping lives entirely in
the viewBox and a y-flip transform, so vertex text equals trace text
exactly.  No external assets.
"""

from .serialization import fmt_value, provenance_lines

_PALETTE = ("#1f6fb2", "#d2522d", "#3a923a", "#8458b3", "#c29b28")


def write_svg(path, polylines, title="", command="", params=None, size=760):
    """polylines: iterable of (xs, ys[, color]) tuples in data coordinates."""
    polys = []
    for i, entry in enumerate(polylines):
        xs, ys = entry[0], entry[1]
        color = entry[2] if len(entry) > 2 else _PALETTE[i % len(_PALETTE)]
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("each polyline needs matching xs/ys, length >= 2")
        polys.append((xs, ys, color))

    xmin = min(min(xs) for xs, _, _ in polys)
    xmax = max(max(xs) for xs, _, _ in polys)
    ymin = min(min(ys) for _, ys, _ in polys)
    ymax = max(max(ys) for _, ys, _ in polys)
    mx = 0.05 * (xmax - xmin or 1.0)
    my = 0.05 * (ymax - ymin or 1.0)
    x0, y0 = xmin - mx, ymin - my
    w, h = (xmax - xmin) + 2 * mx, (ymax - ymin) + 2 * my
    height = max(1, round(size * h / w))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        "<!--",
        *provenance_lines(command, params or {}),
        "-->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="{fmt_value(x0)} {fmt_value(-y0 - h)} {fmt_value(w)} {fmt_value(h)}">',
    ]
    if title:
        lines.append(f"<title>{title}</title>")
    lines.append('<g transform="scale(1,-1)" fill="none" stroke-linejoin="round">')
    for xs, ys, color in polys:
        pts = " ".join(f"{fmt_value(x)},{fmt_value(y)}" for x, y in zip(xs, ys))
        lines.append(
            f'<polyline stroke="{color}" stroke-width="1.4" '
            f'vector-effect="non-scaling-stroke" points="{pts}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
