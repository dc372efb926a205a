"""Self-contained SVG chart emission (no plotting dependency).

Three chart kinds are understood:

* ``rates``          - `task,beta,p,alpha,source` CSV from `theory rates`;
                       one line per (source, p) plus the dotted alpha = -1
                       minimax line and the dashed alpha = 0 line.
* ``risk_vs_p``      - sweep CSV (schema v1); summary mean risk vs p with a
                       +-1 standard-error band.
* ``bias_variance``  - sweep CSV; mean risk, bias^2 and variance vs p.

A gnuplot-compatible ``.dat`` with the plotted columns is written beside
every SVG.
"""

from __future__ import annotations

import csv
import os

from ..errors import SchemaError

__all__ = ["emit_plot"]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"]

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 30, 55


class _Canvas:
    def __init__(self, xlim, ylim, title, xlabel, ylabel):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 <= self.y0:
            self.y1 = self.y0 + 1.0
        self.parts = []
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel

    def px(self, x):
        return _ML + (x - self.x0) / (self.x1 - self.x0) * (_W - _ML - _MR)

    def py(self, y):
        return _H - _MB - (y - self.y0) / (self.y1 - self.y0) * (_H - _MT - _MB)

    def polyline(self, xs, ys, color, width=1.8, dash=None):
        pts = " ".join(f"{self.px(x):.2f},{self.py(y):.2f}" for x, y in zip(xs, ys))
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{d} points="{pts}"/>')

    def band(self, xs, lo, hi, color):
        fwd = [f"{self.px(x):.2f},{self.py(v):.2f}" for x, v in zip(xs, hi)]
        back = [f"{self.px(x):.2f},{self.py(v):.2f}" for x, v in zip(reversed(xs), reversed(lo))]
        self.parts.append(f'<polygon fill="{color}" fill-opacity="0.18" stroke="none" '
                          f'points="{" ".join(fwd + back)}"/>')

    def marker(self, x, y, color):
        self.parts.append(f'<circle cx="{self.px(x):.2f}" cy="{self.py(y):.2f}" r="3" fill="{color}"/>')

    def errorbar(self, x, y, err, color):
        xp = self.px(x)
        self.parts.append(f'<line x1="{xp:.2f}" y1="{self.py(y - err):.2f}" '
                          f'x2="{xp:.2f}" y2="{self.py(y + err):.2f}" stroke="{color}" stroke-width="1.2"/>')

    def hline(self, y, color="#444", dash="4,3", width=1.2):
        self.parts.append(f'<line x1="{_ML}" y1="{self.py(y):.2f}" x2="{_W - _MR}" y2="{self.py(y):.2f}" '
                          f'stroke="{color}" stroke-width="{width}" stroke-dasharray="{dash}"/>')

    def legend(self, entries):
        y = _MT + 6
        for label, color, dash in entries:
            d = f' stroke-dasharray="{dash}"' if dash else ""
            self.parts.append(f'<line x1="{_W - _MR - 150}" y1="{y}" x2="{_W - _MR - 120}" y2="{y}" '
                              f'stroke="{color}" stroke-width="2"{d}/>')
            self.parts.append(f'<text x="{_W - _MR - 114}" y="{y + 4}" font-size="11">{_esc(label)}</text>')
            y += 16

    def _ticks(self, lo, hi, count=5):
        span = hi - lo
        step = 10 ** int(f"{span / count:e}".split("e")[1].replace("+", ""))
        for mult in (5, 2, 1, 0.5, 0.2):
            if span / (step * mult) >= count - 1:
                step *= mult
                break
        first = step * round(lo / step)
        ticks = []
        t = first
        while t <= hi + 1e-12 * max(1, abs(hi)):
            if t >= lo - 1e-12 * max(1, abs(lo)):
                ticks.append(round(t, 12))
            t += step
        return ticks or [lo, hi]

    def render(self):
        axes = []
        axes.append(f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" height="{_H - _MT - _MB}" '
                    f'fill="none" stroke="#222"/>')
        for t in self._ticks(self.x0, self.x1):
            xp = self.px(t)
            axes.append(f'<line x1="{xp:.2f}" y1="{_H - _MB}" x2="{xp:.2f}" y2="{_H - _MB + 5}" stroke="#222"/>')
            axes.append(f'<text x="{xp:.2f}" y="{_H - _MB + 18}" font-size="11" text-anchor="middle">{t:g}</text>')
        for t in self._ticks(self.y0, self.y1):
            yp = self.py(t)
            axes.append(f'<line x1="{_ML - 5}" y1="{yp:.2f}" x2="{_ML}" y2="{yp:.2f}" stroke="#222"/>')
            axes.append(f'<text x="{_ML - 8}" y="{yp + 4:.2f}" font-size="11" text-anchor="end">{t:g}</text>')
        axes.append(f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 12}" font-size="13" text-anchor="middle">{_esc(self.xlabel)}</text>')
        axes.append(f'<text x="16" y="{(_MT + _H - _MB) / 2}" font-size="13" text-anchor="middle" '
                    f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2})">{_esc(self.ylabel)}</text>')
        axes.append(f'<text x="{(_ML + _W - _MR) / 2}" y="20" font-size="14" text-anchor="middle">{_esc(self.title)}</text>')
        body = "\n".join(axes + self.parts)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
                f'viewBox="0 0 {_W} {_H}" font-family="sans-serif">\n{body}\n</svg>\n')


def _esc(s):
    return str(s).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _read_csv(path):
    with open(path, newline="") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            fh.seek(0)
        reader = csv.DictReader(fh)
        rows = [dict(r) for r in reader]
    if not rows:
        raise SchemaError(f"no data rows in {path}")
    return rows


def _f(row, key):
    v = row.get(key, "")
    return float(v) if v not in ("", None) else None


def _dat_path(out_path):
    stem, _ = os.path.splitext(out_path)
    return stem + ".dat"


def _write_dat(path, header, rows):
    with open(path, "w") as fh:
        fh.write("# " + " ".join(header) + "\n")
        for row in rows:
            fh.write(" ".join("nan" if v is None else repr(float(v)) for v in row) + "\n")


def emit_plot(result_csv: str, kind: str, out_path: str) -> str:
    """Render `result_csv` as `kind` into a self-contained SVG at out_path."""
    rows = _read_csv(result_csv)
    if kind == "rates":
        svg, dat = _plot_rates(rows)
    elif kind == "risk_vs_p":
        svg, dat = _plot_risk_vs_p(rows)
    elif kind == "bias_variance":
        svg, dat = _plot_bias_variance(rows)
    else:
        raise SchemaError(f"unknown plot kind {kind!r}")
    with open(out_path, "w") as fh:
        fh.write(svg)
    _write_dat(_dat_path(out_path), *dat)
    return out_path


def _plot_rates(rows):
    need = {"task", "beta", "p", "alpha", "source"}
    if not need.issubset(rows[0]):
        raise SchemaError(f"rates CSV must have columns {sorted(need)}")
    series = {}
    for row in rows:
        if row["source"] in ("minimax", "uniform_lower"):
            continue
        key = (row["source"], row["p"])
        series.setdefault(key, []).append((float(row["beta"]), float(row["alpha"])))
    if not series:
        raise SchemaError("no rate curves to plot")
    alphas = [a for pts in series.values() for _, a in pts]
    betas = [b for pts in series.values() for b, _ in pts]
    cv = _Canvas((min(betas), max(betas)), (min(min(alphas), -1.05), 0.05),
                 "risk decay exponent vs dimension regime", "beta (d = n^beta)", "alpha")
    cv.hline(-1.0, dash="2,4")   # minimax reference
    cv.hline(0.0, dash="6,4")    # non-vanishing reference
    legend = [("alpha = -1 (minimax)", "#444", "2,4"), ("alpha = 0", "#444", "6,4")]
    dat_rows = []
    for i, (key, pts) in enumerate(sorted(series.items())):
        pts.sort()
        color = _PALETTE[i % len(_PALETTE)]
        cv.polyline([b for b, _ in pts], [a for _, a in pts], color)
        label = f"{key[0]} p={key[1]}"
        legend.append((label, color, None))
        for b, a in pts:
            dat_rows.append((i, b, a))
    cv.legend(legend[:10])
    return cv.render(), (["series", "beta", "alpha"], dat_rows)


def _summary_rows(rows):
    out = [r for r in rows if r.get("kind") == "summary" and r.get("mean_risk") not in ("", None)]
    if not out:
        raise SchemaError("sweep CSV has no summary rows with mean_risk")
    out.sort(key=lambda r: float(r["p"]))
    return out


def _plot_risk_vs_p(rows):
    srows = _summary_rows(rows)
    ps = [float(r["p"]) for r in srows]
    means = [float(r["mean_risk"]) for r in srows]
    errs = [_f(r, "stderr_risk") or 0.0 for r in srows]
    lo = [m - e for m, e in zip(means, errs)]
    hi = [m + e for m, e in zip(means, errs)]
    cv = _Canvas((min(ps) - 0.03, max(ps) + 0.03),
                 (min(lo) - 0.05 * (max(hi) - min(lo) + 1e-9), max(hi) + 0.05 * (max(hi) - min(lo) + 1e-9)),
                 "mean risk vs inductive-bias strength", "p", "mean risk")
    color = _PALETTE[0]
    if len(ps) > 1:
        cv.band(ps, lo, hi, color)
        cv.polyline(ps, means, color)
    for x, y, e in zip(ps, means, errs):
        cv.marker(x, y, color)
        cv.errorbar(x, y, e, color)
    cv.legend([("mean +- stderr", color, None)])
    return cv.render(), (["p", "mean_risk", "stderr_risk"], list(zip(ps, means, errs)))


def _plot_bias_variance(rows):
    srows = _summary_rows(rows)
    srows = [r for r in srows if r.get("bias_sq") not in ("", None)]
    if not srows:
        raise SchemaError("sweep CSV has no bias/variance summary values")
    ps = [float(r["p"]) for r in srows]
    means = [float(r["mean_risk"]) for r in srows]
    bias = [float(r["bias_sq"]) for r in srows]
    var = [float(r["variance"]) for r in srows]
    top = max(means + bias + var)
    cv = _Canvas((min(ps) - 0.03, max(ps) + 0.03), (0.0, top * 1.05 + 1e-9),
                 "bias-variance split of the mean risk", "p", "value")
    for i, (name, ys) in enumerate([("risk", means), ("bias^2", bias), ("variance", var)]):
        color = _PALETTE[i]
        if len(ps) > 1:
            cv.polyline(ps, ys, color)
        for x, y in zip(ps, ys):
            cv.marker(x, y, color)
    cv.legend([("risk", _PALETTE[0], None), ("bias^2", _PALETTE[1], None),
               ("variance", _PALETTE[2], None)])
    return cv.render(), (["p", "mean_risk", "bias_sq", "variance"],
                         list(zip(ps, means, bias, var)))
