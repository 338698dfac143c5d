"""Delimited output for simulation runs, plus optional decay figures.

The CSV layout is fixed: header ``k,norm,flag`` where flag is "exact"
when the norm was computed in rational arithmetic (an infinite norm
counts, the divergence is a symbolic fact) and "approx" when a float
step entered.  Values are written as shortest round-trip floats so any
plotting tool can consume the column; exact readers should rerun the
analysis through the library instead of parsing CSV.
"""

from __future__ import annotations

import csv
from typing import IO, Iterable, Sequence

from .acontinuity import SimRow
from .scalars import Scalar

CSV_HEADER = ("k", "norm", "flag")


def norm_text(value: Scalar) -> tuple[str, str]:
    flag = "exact" if value.is_exact or value.is_inf else "approx"
    return repr(value.as_float()), flag


def write_rows(rows: Iterable[SimRow], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        value, flag = norm_text(row.norm)
        writer.writerow((row.k, value, flag))


def csv_text(rows: Iterable[SimRow]) -> str:
    import io

    buffer = io.StringIO()
    write_rows(rows, buffer)
    return buffer.getvalue()


def render_decay_figure(rows: Sequence[SimRow], path: str, label: str) -> None:
    """Draw norm against k on log axes and write the file at path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = []
    values = []
    for row in rows:
        v = row.norm.as_float()
        if 0 < v < float("inf"):
            ks.append(row.k)
            values.append(v)
    fig, ax = plt.subplots(figsize=(6, 4))
    if ks:
        ax.loglog(ks, values, marker="o", linewidth=1)
    else:
        ax.text(0.5, 0.5, "no finite positive values", ha="center", va="center")
    ax.set_xlabel("k")
    ax.set_ylabel("norm of the restricted tail")
    ax.set_title(label)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
