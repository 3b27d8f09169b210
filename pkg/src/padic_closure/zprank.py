"""Certified lower bounds for the Z_p-rank of a matrix of p-adic scalars."""
from __future__ import annotations

from dataclasses import dataclass, field

from .padic import PadicScalar


@dataclass(frozen=True)
class Pivot:
    row: int
    col: int
    val: int
    abs: int

    def to_json(self) -> dict:
        return {"row": self.row, "col": self.col, "val": self.val, "abs": self.abs}


@dataclass(frozen=True)
class RankReport:
    """rank_lo pivots whose product is, up to sign, a provably nonzero minor."""

    rank_lo: int
    certificate: tuple[Pivot, ...] = field(default=())
    precision_used: int | None = None

    def to_json(self) -> dict:
        return {
            "rank_lo": self.rank_lo,
            "certificate": [pv.to_json() for pv in self.certificate],
            "precision_used": self.precision_used,
        }


def zp_rank_lower(matrix: list[list[PadicScalar]], precision_used: int | None = None) -> RankReport:
    """Gaussian elimination with full pivoting on provably nonzero entries.

    Each step takes an entry of least valuation among those with val < abs,
    so every recorded pivot is nonzero in Z_p and the pivots multiply to a
    nonzero minor of the input.  Elimination stops when nothing provably
    nonzero is left; the count is then a rigorous lower bound on the rank.
    """
    a = [list(row) for row in matrix]
    rows = list(range(len(a)))
    cols = list(range(len(a[0]) if a else 0))
    pivots: list[Pivot] = []
    while rows and cols:
        best = None
        for i in rows:
            for j in cols:
                x = a[i][j]
                if x.is_nonzero and (best is None or x.val < best[0]):
                    best = (x.val, i, j)
        if best is None:
            break
        _, r, c = best
        piv = a[r][c]
        pivots.append(Pivot(r, c, piv.val, piv.prec))
        rows.remove(r)
        cols.remove(c)
        for i in rows:
            if a[i][c].is_exact_zero:
                continue
            factor = a[i][c] / piv
            for j in cols:
                if not a[r][j].is_exact_zero:
                    a[i][j] = a[i][j] - factor * a[r][j]
    return RankReport(len(pivots), tuple(pivots), precision_used)
