"""Batched evaluation of the two-argument sum and product recursions.

For a batch of pairs ``(x, y)`` the recursion only ever visits prefix pairs
``(x[:i], y[:j])``, so it fills a grid indexed by ``(i, j)`` for all pairs at
once.  Values are stored as int64 numerators over a common ``2**K``.  Each
cell collects exactly the option values of the generic engine and takes the
simplest dyadic strictly between the largest left and smallest right value.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .core import SignSequence, from_dyadic, surreal
from .dyadic import Dyadic

__all__ = ["grid_eval", "simplest_between_scaled"]

_NEG = np.iinfo(np.int64).min
_POS = np.iinfo(np.int64).max


def simplest_between_scaled(lo, has_lo, hi, has_hi, K: int) -> np.ndarray:
    """Vectorised simplest dyadic in ``(lo, hi)``; inputs are numerators over ``2**K``.

    A missing bound is flagged by ``has_lo`` / ``has_hi``.  Rows where the open
    interval holds no multiple of ``2**-K`` are not detected; callers size
    ``K`` so that this cannot happen.
    """
    S = np.int64(1) << np.int64(K)
    out = np.zeros(lo.shape, dtype=np.int64)
    # integer phase
    pos = has_lo & (lo >= 0)
    neg = ~pos & has_hi & (hi <= 0)
    cand = np.zeros_like(out)
    cand[pos] = (lo[pos] // S + 1) * S
    cand[neg] = -((-hi[neg]) // S + 1) * S
    ok = (~has_hi | (cand < hi)) & (~has_lo | (cand > lo))
    out[ok] = cand[ok]
    todo = ~ok
    # both bounds exist here and no integer fits; shrink the step
    for e in range(1, K + 1):
        if not todo.any():
            break
        step = S >> np.int64(e)
        c = (lo[todo] // step + 1) * step
        fit = c < hi[todo]
        idx = np.flatnonzero(todo)[fit]
        out[idx] = c[fit]
        todo[idx] = False
    if todo.any():
        raise ArithmeticError("grid resolution too coarse")
    return out


def _encode(seqs: Sequence[SignSequence], A: int, K: int):
    """Signs (+1/-1, padded with +1) and prefix values over ``2**K``."""
    n = len(seqs)
    signs = np.ones((n, A), dtype=np.int8)
    vals = np.zeros((n, A + 1), dtype=np.int64)
    for p, s in enumerate(seqs):
        for i, c in enumerate(s.signs):
            if c == "-":
                signs[p, i] = -1
        for i in range(A + 1):
            v = s.prefix(min(i, len(s))).value
            vals[p, i] = v.numerator << (K - v.exponent)
    return signs, vals


def grid_eval(kind: str, pairs: Sequence[Tuple]) -> List[SignSequence]:
    """Evaluate ``sum2`` or ``prod2`` on many pairs with the option recursion."""
    if kind not in ("sum2", "prod2"):
        raise ValueError(f"grid evaluation supports sum2 and prod2, not {kind!r}")
    if not pairs:
        return []
    xs = [surreal(p[0]) for p in pairs]
    ys = [surreal(p[1]) for p in pairs]
    A = max(1, max(len(x) for x in xs))
    B = max(1, max(len(y) for y in ys))
    K = A + B + 2
    if K > 40 or (kind == "prod2" and (A + 1) * (B + 1) > 1 << 20):
        raise ValueError("pairs too long for int64 grid evaluation")
    sx, _ = _encode(xs, A, K)
    sy, _ = _encode(ys, B, K)
    P = len(pairs)
    G = np.zeros((P, A + 1, B + 1), dtype=np.int64)
    for i in range(A + 1):
        for j in range(B + 1):
            if i == 0 and j == 0:
                continue
            if kind == "sum2":
                cols = G[:, :i, j]
                rows = G[:, i, :j]
                vals = np.concatenate([cols, rows], axis=1)
                left = np.concatenate([sx[:, :i] > 0, sy[:, :j] > 0], axis=1)
            else:
                if i == 0 or j == 0:
                    continue  # no options; value 0
                vals = (G[:, :i, j][:, :, None] + G[:, i, :j][:, None, :] - G[:, :i, :j]).reshape(P, -1)
                left = (sx[:, :i, None] == sy[:, None, :j]).reshape(P, -1)
            right = ~left
            has_lo = left.any(axis=1)
            has_hi = right.any(axis=1)
            lo = np.where(left, vals, _NEG).max(axis=1)
            hi = np.where(right, vals, _POS).min(axis=1)
            G[:, i, j] = simplest_between_scaled(lo, has_lo, hi, has_hi, K)
    out = []
    for p in range(P):
        num = int(G[p, len(xs[p]), len(ys[p])])
        out.append(from_dyadic(Dyadic(num, K)))
    return out
