"""Parameter-plane region maps: grid classification, adjacency extraction,
CSV serialization.

The uniform map resolves the macro structure (fold boundary, Hopf curve, the
repelling-cycle band near the double-zero point).  The two-cycle wedge and
the thin stable-cycle band are orders of magnitude thinner than a 200x200
cell, so they are documented via zoom insets computed with the full census
classifier (fast=False).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import dynamics
from .core import Params
from .errors import GSKitError


def thread_budget(explicit: int | None = None) -> int:
    if explicit is not None and explicit > 0:
        return explicit
    env = os.environ.get("GSKIT_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def _classify_cell(args):
    k, F, fast = args
    if k <= 0 or F <= 0:
        return "outside"
    try:
        if fast:
            lab = dynamics.probe_region(Params(k, F))
        else:
            lab = dynamics.classify_region(
                Params(k, F),
                dynamics.IntegratorSettings(rel_tol=1e-10, abs_tol=1e-13),
                census_kwargs={"n_scan": 120})
        return lab.id
    except GSKitError:
        return "x"
    except Exception:
        return "x"


def _classify_column(args):
    j, k, F_values, fast = args
    return j, [_classify_cell((k, F, fast)) for F in F_values]


def region_map(k_range: tuple, F_range: tuple, nk: int, nF: int, *,
               fast: bool = True, threads: int | None = None) -> tuple:
    """Labels[iF][jk] over the grid, plus metadata.

    Row index runs over F (ascending), column index over k (ascending).
    Columns are classified independently; with threads > 1 they run in a
    process pool and are reassembled by index, so output is deterministic.
    """
    ks = np.linspace(k_range[0], k_range[1], nk)
    Fs = np.linspace(F_range[0], F_range[1], nF)
    jobs = [(j, float(k), [float(F) for F in Fs], fast) for j, k in enumerate(ks)]
    nthreads = min(thread_budget(threads), nk)
    columns = {}
    if nthreads > 1:
        with ProcessPoolExecutor(max_workers=nthreads) as pool:
            for j, col in pool.map(_classify_column, jobs, chunksize=4):
                columns[j] = col
    else:
        for job in jobs:
            j, col = _classify_column(job)
            columns[j] = col
    labels = [[columns[j][i] for j in range(nk)] for i in range(nF)]
    meta = {"schema": 1, "k_values": [float(k) for k in ks],
            "F_values": [float(F) for F in Fs], "fast": fast}
    return labels, meta


def adjacency(labels: list, *, min_pairs: int = 2) -> set:
    """Set of frozenset label pairs that share at least min_pairs cell edges."""
    counts = {}
    nF = len(labels)
    nk = len(labels[0]) if nF else 0
    for i in range(nF):
        for j in range(nk):
            a = labels[i][j]
            for di, dj in ((0, 1), (1, 0)):
                ii, jj = i + di, j + dj
                if ii < nF and jj < nk:
                    b = labels[ii][jj]
                    if a != b:
                        key = frozenset((a, b))
                        counts[key] = counts.get(key, 0) + 1
    return {k for k, n in counts.items() if n >= min_pairs}


def map_to_csv(labels: list, meta: dict) -> str:
    lines = ["k,F,label"]
    for i, F in enumerate(meta["F_values"]):
        for j, k in enumerate(meta["k_values"]):
            lines.append(f"{k!r},{F!r},{labels[i][j]}")
    return "\n".join(lines) + "\n"
