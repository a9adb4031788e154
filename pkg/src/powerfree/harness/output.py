"""CSV, JSON and figure emission for sweep rows."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Dict, List, Sequence

from ..errors import PowerFreeError
from ..exact import INF, format_occupancy
from .sweep import ExperimentRow

CSV_HEADER = ("rho", "k", "x", "exact", "asymptotic_log", "asymptotic", "ratio", "beta", "status")


class OutputError(PowerFreeError, OSError):
    pass


def _num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return repr(float(v))  # shortest round-trip


def _row_fields(row: ExperimentRow) -> List[str]:
    asym = _num(row.asymptotic)
    if row.asymptotic is None and row.asymptotic_log is not None:
        asym = "overflow"
    return [
        _num(row.rho),
        format_occupancy(row.k),
        _num(row.x),
        _num(row.exact),
        _num(row.asymptotic_log),
        asym,
        _num(row.ratio),
        _num(row.beta),
        row.status,
    ]


def rows_to_csv(rows: Sequence[ExperimentRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_row_fields(row))
    return buf.getvalue()


def _write(path, text):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def emit_csv(rows: Sequence[ExperimentRow], path) -> None:
    if not rows:
        raise ValueError("no rows to write")
    _write(path, rows_to_csv(rows))


def rows_to_json(rows: Sequence[ExperimentRow]) -> str:
    payload = []
    for row in rows:
        rec = dict(zip(CSV_HEADER, _row_fields(row)))
        for key in ("rho", "x", "asymptotic_log", "ratio", "beta"):
            rec[key] = getattr(row, key)
        rec["exact"] = row.exact
        rec["k"] = "inf" if row.k == INF else int(row.k)
        if row.asymptotic is not None:
            rec["asymptotic"] = row.asymptotic
        elif rec["asymptotic"] != "overflow":
            rec["asymptotic"] = None
        payload.append(rec)
    return json.dumps(payload, indent=2) + "\n"


def emit_json(rows: Sequence[ExperimentRow], path) -> None:
    if not rows:
        raise ValueError("no rows to write")
    _write(path, rows_to_json(rows))


def _series(rows) -> Dict[tuple, List[ExperimentRow]]:
    out: Dict[tuple, List[ExperimentRow]] = {}
    for row in rows:
        out.setdefault((row.rho, row.k), []).append(row)
    return out


_MARKERS = {0.5: "s", 1.0: "^", 2.0: "o"}
_STYLES = {0.5: ":", 1.0: "--", 2.0: "-"}


def emit_plot(rows: Sequence[ExperimentRow], path) -> List[Path]:
    """Write the comparison panels as SVG files next to ``path``.

    Produces ``<stem>_counts.svg`` (exact points against asymptotic curves,
    log scale), ``<stem>_ratio.svg`` and, when the rows hold several finite
    occupancy bounds at a common x, ``<stem>_kdep.svg``.
    """
    if not rows:
        raise ValueError("no rows to plot")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed metadata keeps the SVG output reproducible
    matplotlib.rcParams["svg.hashsalt"] = "powerfree"
    meta = {"Date": None}

    path = Path(path)
    stem = path.with_suffix("")
    written = []
    good = [r for r in rows if r.status == "ok"]
    series = _series(r for r in good if r.k in (2, INF))

    def save(fig, suffix):
        target = Path(f"{stem}_{suffix}.svg")
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(target, format="svg", metadata=meta)
        except OSError as exc:
            raise OutputError(f"cannot write {target}: {exc}") from exc
        finally:
            plt.close(fig)
        written.append(target)

    if series:
        fig, ax = plt.subplots(figsize=(5, 4))
        for (rho, k), pts in sorted(series.items()):
            colour = "black" if k == INF else "gray"
            xs = [p.x for p in pts]
            ax.plot(xs, [math.exp(p.asymptotic_log) for p in pts],
                    _STYLES.get(rho, "-"), color=colour)
            ax.plot(xs, [p.exact for p in pts], _MARKERS.get(rho, "o"), color=colour,
                    mfc=colour if k == INF else "none",
                    label=f"rho={rho:g}, k={format_occupancy(k)}")
        ax.set_yscale("log")
        ax.set_xlabel("x")
        ax.set_ylabel("N_k(x)")
        ax.legend(fontsize=7)
        save(fig, "counts")

        fig, ax = plt.subplots(figsize=(5, 4))
        for (rho, k), pts in sorted(series.items()):
            colour = "black" if k == INF else "gray"
            ax.plot([p.x for p in pts], [p.ratio for p in pts], _STYLES.get(rho, "-"),
                    marker=_MARKERS.get(rho, "o"), color=colour,
                    mfc=colour if k == INF else "none",
                    label=f"rho={rho:g}, k={format_occupancy(k)}")
        ax.axhline(1.0, color="0.7", lw=0.8)
        ax.set_xlabel("x")
        ax.set_ylabel("asymptotic / exact")
        ax.legend(fontsize=7)
        save(fig, "ratio")

    by_x: Dict[float, List[ExperimentRow]] = {}
    for r in good:
        if r.k != INF:
            by_x.setdefault(r.x, []).append(r)
    kdep = {x: rs for x, rs in by_x.items() if len({r.k for r in rs}) > 2}
    if kdep:
        x = max(kdep)
        fig, ax = plt.subplots(figsize=(5, 4))
        per_rho: Dict[float, List[ExperimentRow]] = {}
        for r in sorted(kdep[x], key=lambda r: (r.rho, r.k)):
            per_rho.setdefault(r.rho, []).append(r)
        for rho, pts in per_rho.items():
            ax.plot([p.k for p in pts], [p.exact for p in pts], _MARKERS.get(rho, "o"),
                    color="black", label=f"rho={rho:g}")
        ax.set_yscale("log")
        ax.set_xlabel("k")
        ax.set_ylabel(f"N_k({x:g})")
        ax.legend(fontsize=7)
        save(fig, "kdep")
    return written
