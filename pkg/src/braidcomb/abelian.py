"""Exact integer linear algebra: Smith normal form, abelianizations, and
finitely generated abelian group values.

Everything here runs on Python's arbitrary-precision integers by design —
Smith reduction can blow up intermediate entries far past machine range even
for modest matrices, and these computations back correctness claims, not
benchmarks.  smith_normal_form re-multiplies its transforms against the
input before returning, so a wrong answer cannot escape silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import InvalidArgumentError, MissingImageError
from .words import GeneratorSymbol, Word, exponent_sum

__all__ = [
    "IntMatrix",
    "SmithForm",
    "FGAbelianGroup",
    "smith_normal_form",
    "relation_matrix",
    "h1",
    "hom_on_h1",
    "cokernel",
    "has_torsion",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InvalidArgumentError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidArgumentError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(row) != cols for row in data):
            raise InvalidArgumentError("ragged rows")
        return cls(rows, cols, tuple(int(x) for row in data for x in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if r == c else 0 for r in range(n) for c in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, r: int, c: int) -> int:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[int, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(r, c) for c in range(self.cols) for r in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidArgumentError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for r in range(self.rows):
            row = self.row(r)
            for c in range(other.cols):
                out.append(sum(row[k] * other.entry(k, c) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d (positive, each dividing the next) together with
    unimodular transforms U, V satisfying U @ M @ V = diag(d)."""

    d: tuple[int, ...]
    rank: int
    U: IntMatrix
    V: IntMatrix

    def __post_init__(self) -> None:
        if self.rank != len(self.d):
            raise InvalidArgumentError("rank must equal the number of invariant factors")
        for a, b in zip(self.d, self.d[1:]):
            if a <= 0 or b % a != 0:
                raise InvalidArgumentError(f"broken divisibility chain {self.d}")
        if self.d and self.d[-1] <= 0:
            raise InvalidArgumentError(f"invariant factors must be positive: {self.d}")

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.U.rows, self.V.cols
        entries = [0] * (rows * cols)
        for i, val in enumerate(self.d):
            entries[i * cols + i] = val
        return IntMatrix(rows, cols, tuple(entries))


@dataclass(frozen=True)
class FGAbelianGroup:
    """A finitely generated abelian group Z^free_rank + sum of Z/d_i, with
    the torsion factors in canonical divisibility order."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise InvalidArgumentError("free rank must be non-negative")
        for a in self.torsion:
            if a <= 1:
                raise InvalidArgumentError(f"torsion factors must exceed 1: {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvalidArgumentError(f"torsion not in divisibility order: {self.torsion}")

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        """Direct sum, re-canonicalized into a single divisibility chain."""
        merged = self.torsion + other.torsion
        if not merged:
            return FGAbelianGroup(self.free_rank + other.free_rank)
        diag = IntMatrix(
            len(merged),
            len(merged),
            tuple(
                merged[r] if r == c else 0
                for r in range(len(merged))
                for c in range(len(merged))
            ),
        )
        chain = tuple(x for x in smith_normal_form(diag).d if x > 1)
        return FGAbelianGroup(self.free_rank + other.free_rank, chain)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def has_torsion(g: FGAbelianGroup) -> bool:
    return bool(g.torsion)


# --- Smith normal form -------------------------------------------------------


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Diagonalize m over Z with tracked unimodular row/column transforms.

    Pivoting picks the smallest nonzero entry by absolute value, which keeps
    coefficient growth tolerable at the matrix sizes that arise here.  The
    result is verified by multiplying U @ m @ V back together before
    returning.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_sub(i: int, j: int, q: int) -> None:  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i: int, j: int, q: int) -> None:  # col i -= q * col j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_add(i: int, j: int) -> None:  # row i += row j
        row_sub(i, j, -1)

    # At each step t: move the smallest nonzero entry to (t,t), clear its row
    # and column by euclidean steps (swapping any smaller remainder into the
    # pivot seat), and finally insist the pivot divide the whole remaining
    # submatrix — folding an offending row into row t otherwise, which shrinks
    # the pivot on the next pass.  Pivots therefore divide all later pivots,
    # so the diagonal comes out already in divisibility order.
    t = 0
    while True:
        pivot = None
        for r in range(t, rows):
            for c in range(t, cols):
                val = a[r][c]
                if val and (pivot is None or abs(val) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (r, c)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            moved = False
            for r in range(t + 1, rows):
                if a[r][t]:
                    row_sub(r, t, a[r][t] // a[t][t])
                    if a[r][t]:  # the euclidean remainder becomes the pivot
                        swap_rows(t, r)
                        moved = True
            for c in range(t + 1, cols):
                if a[t][c]:
                    col_sub(c, t, a[t][c] // a[t][t])
                    if a[t][c]:
                        swap_cols(t, c)
                        moved = True
            if moved:
                continue
            offender = next(
                (
                    r
                    for r in range(t + 1, rows)
                    for c in range(t + 1, cols)
                    if a[r][c] % a[t][t] != 0
                ),
                None,
            )
            if offender is None:
                break
            row_add(t, offender)
        t += 1
    rank = t

    for i in range(rank):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    form = SmithForm(
        d=tuple(a[i][i] for i in range(rank)),
        rank=rank,
        U=IntMatrix.from_rows(u) if rows else IntMatrix(0, 0, ()),
        V=IntMatrix.from_rows(v) if cols else IntMatrix(0, 0, ()),
    )
    check = form.U @ m @ form.V if rows and cols else IntMatrix.zeros(rows, cols)
    if check != form.diagonal_matrix():
        raise AssertionError("smith reduction failed its multiply-back verification")
    return form


# --- presentations to matrices ------------------------------------------------


def relation_matrix(p) -> IntMatrix:
    """Abelianized relator matrix: one row per relator, one column per
    generator (in the presentation's generator order)."""
    gens = p.generators
    entries = tuple(
        exponent_sum(relator, g) for relator in p.relators for g in gens
    )
    return IntMatrix(len(p.relators), len(gens), entries)


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """Z^rows modulo the column space of m."""
    if m.rows == 0:
        return FGAbelianGroup(0)
    if m.cols == 0:
        return FGAbelianGroup(m.rows)
    form = smith_normal_form(m)
    torsion = tuple(d for d in form.d if d > 1)
    return FGAbelianGroup(m.rows - form.rank, torsion)


def h1(p) -> FGAbelianGroup:
    """First homology (abelianization) of a presented group."""
    return cokernel(relation_matrix(p).transpose())


def hom_on_h1(
    images: Mapping[GeneratorSymbol, Word], source, target
) -> IntMatrix:
    """Matrix of the induced map H1(source) -> H1(target) on generator
    classes: one column per source generator, one row per target generator.
    """
    target_gens = tuple(target.generators)
    known = set(target_gens)
    columns = []
    for g in source.generators:
        try:
            image = images[g]
        except KeyError:
            raise MissingImageError(g) from None
        for sym in image.symbols():
            if sym not in known:
                raise MissingImageError(sym)
        columns.append([exponent_sum(image, t) for t in target_gens])
    entries = tuple(
        columns[c][r] for r in range(len(target_gens)) for c in range(len(columns))
    )
    return IntMatrix(len(target_gens), len(source.generators), entries)
