"""Minimal hand-rolled SVG line plots (no plotting dependency).

One ``<path>`` element per series, straight axes, min/max tick labels.
Output is deterministic for identical input.
"""

import math

__all__ = ["line_plot"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")

_WIDTH = 720
_HEIGHT = 480
_MARGIN = 60


def _transform(value, lo, hi, out_lo, out_hi, log):
    if log:
        value = math.log10(value)
        lo = math.log10(lo)
        hi = math.log10(hi)
    if hi == lo:
        return 0.5 * (out_lo + out_hi)
    frac = (value - lo) / (hi - lo)
    return out_lo + frac * (out_hi - out_lo)


def _finite_positive(values, log):
    out = []
    for v in values:
        if not math.isfinite(v):
            continue
        if log and v <= 0.0:
            continue
        out.append(v)
    return out


def line_plot(series, xlabel="", ylabel="", log_x=False, log_y=False, title=""):
    """Render ``series`` = [(name, xs, ys), ...] to an SVG document string.

    Non-finite points (and non-positive ones on log axes) are dropped from
    the polyline but leave the rest of the series intact.
    """
    xs_all = []
    ys_all = []
    for _name, xs, ys in series:
        pairs = [
            (x, y)
            for x, y in zip(xs, ys)
            if math.isfinite(x) and math.isfinite(y) and not (log_x and x <= 0) and not (log_y and y <= 0)
        ]
        xs_all.extend(p[0] for p in pairs)
        ys_all.extend(p[1] for p in pairs)
    if not xs_all:
        xs_all = [0.0, 1.0]
        ys_all = [0.0, 1.0]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if x_lo == x_hi:
        x_hi = x_lo + (abs(x_lo) or 1.0) * 1e-6
    if y_lo == y_hi:
        y_hi = y_lo + (abs(y_lo) or 1.0) * 1e-6

    left, right = _MARGIN, _WIDTH - _MARGIN // 2
    top, bottom = _MARGIN // 2, _HEIGHT - _MARGIN

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">' % (_WIDTH, _HEIGHT),
        '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (_WIDTH, _HEIGHT),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>' % (left, bottom, right, bottom),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>' % (left, top, left, bottom),
    ]
    if title:
        parts.append(
            '<text x="%d" y="%d" text-anchor="middle" font-size="14">%s</text>'
            % ((left + right) // 2, top - 6, title)
        )
    parts.append(
        '<text x="%d" y="%d" text-anchor="middle" font-size="12">%s%s</text>'
        % ((left + right) // 2, _HEIGHT - 14, xlabel, " (log)" if log_x else "")
    )
    parts.append(
        '<text x="16" y="%d" text-anchor="middle" font-size="12" transform="rotate(-90 16 %d)">%s%s</text>'
        % ((top + bottom) // 2, (top + bottom) // 2, ylabel, " (log)" if log_y else "")
    )
    parts.append(
        '<text x="%d" y="%d" font-size="10" text-anchor="start">%.6g</text>' % (left, bottom + 14, x_lo)
    )
    parts.append(
        '<text x="%d" y="%d" font-size="10" text-anchor="end">%.6g</text>' % (right, bottom + 14, x_hi)
    )
    parts.append(
        '<text x="%d" y="%d" font-size="10" text-anchor="end">%.6g</text>' % (left - 4, bottom, y_lo)
    )
    parts.append(
        '<text x="%d" y="%d" font-size="10" text-anchor="end">%.6g</text>' % (left - 4, top + 10, y_hi)
    )

    for idx, (name, xs, ys) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        coords = []
        for x, y in zip(xs, ys):
            if not (math.isfinite(x) and math.isfinite(y)):
                continue
            if (log_x and x <= 0) or (log_y and y <= 0):
                continue
            px = _transform(x, x_lo, x_hi, left, right, log_x)
            py = _transform(y, y_lo, y_hi, bottom, top, log_y)
            coords.append((px, py))
        if not coords:
            continue
        d = "M " + " L ".join("%.2f %.2f" % (px, py) for px, py in coords)
        parts.append(
            '<path d="%s" fill="none" stroke="%s" stroke-width="1.5"><title>%s</title></path>'
            % (d, color, name)
        )
        lx, ly = coords[-1]
        parts.append(
            '<text x="%.2f" y="%.2f" font-size="10" fill="%s">%s</text>'
            % (min(lx + 4, right - 30), ly - 4, color, name)
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
