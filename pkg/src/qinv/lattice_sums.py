"""Signed quadratic lattice sums

    sum_{alpha in points} sum_s sign_s q^{c|alpha|^2 + (alpha, L_s) + k_s}

evaluated exactly on a common exponent grid through the accumulation kernel.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .lattice import WeightVector
from .qseries import INF, QSeries


def signed_quadratic_sum(
    points: np.ndarray,
    r: int,
    c,
    linears: Sequence[WeightVector],
    consts: Sequence,
    signs: Sequence[int],
    T=INF,
) -> QSeries:
    """``points`` holds scaled coordinates r*alpha (one row per point)."""
    c = Fraction(c)
    consts = [Fraction(k) for k in consts]
    pts = np.asarray(points, dtype=np.int64).reshape(-1, r)
    if len(pts) == 0 or not linears:
        return QSeries.zero(T)

    # exponent = c|P|^2/r^2 + (P, L)/r + k   with P = r*alpha
    den = (c / (r * r)).denominator
    for L in linears:
        for x in L.coords:
            den = math.lcm(den, (x / r).denominator)
    for k in consts:
        den = math.lcm(den, k.denominator)
    if T != INF:
        den = math.lcm(den, Fraction(T).denominator)
    M = den
    qn = int(c * M / (r * r))
    lins = [[int(x * M / r) for x in L.coords] for L in linears]
    cs = [int(k * M) for k in consts]

    # qn|P|^2 + P.L >= -|L|^2/(4 qn)
    emin = min(
        math.floor(Fraction(k) - Fraction(sum(x * x for x in L), 4 * qn))
        for L, k in zip(lins, cs)
    )
    if T != INF:
        stop = int(Fraction(T) * M)
        if stop <= emin:
            return QSeries.zero(T)
    else:
        p2 = int((pts * pts).sum(axis=1).max())
        stop = max(
            qn * p2 + math.isqrt(p2 * sum(x * x for x in L)) + 1 + k
            for L, k in zip(lins, cs)
        ) + 1
    counts = kernels.accumulate(
        pts,
        qn,
        np.asarray(lins, dtype=np.int64),
        np.asarray(cs, dtype=np.int64),
        np.asarray(list(signs), dtype=np.int64),
        emin,
        stop - emin,
    )
    nz = np.nonzero(counts)[0]
    terms = {emin + int(i): int(counts[i]) for i in nz}
    return QSeries._raw(M, terms, Fraction(T) if T != INF else INF)


def scaled_points(weights: Sequence[WeightVector]) -> np.ndarray:
    if not weights:
        return np.zeros((0, 2), dtype=np.int64)
    return np.asarray([w.scaled() for w in weights], dtype=np.int64)
