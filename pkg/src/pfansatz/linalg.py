"""Exact linear algebra over Q and over rational-function fields.

Rational systems are solved fraction-free: rows are scaled to integers, the
elimination uses cross-multiplication updates with per-row content removal,
and pivots are chosen by minimal bit size to slow coefficient growth.  When
gmpy2 is importable its integers are used inside the kernel (identical
results, faster big-number arithmetic); the fallback is plain int.

Systems whose entries are polynomials or rational functions go through a
generic field elimination instead (entries must support +, -, *, /).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence

from .poly import Polynomial, RationalFunction, domain_one_like, domain_zero_like, is_zero_entry

try:  # optional fast integer kernel
    from gmpy2 import mpz as _mpz
    from gmpy2 import gcd as _gcd
except ImportError:  # pragma: no cover - environment without gmpy2
    _mpz = int
    _gcd = gcd


class ExactMatrix:
    """Immutable dense matrix; entries are Fractions, Polynomials, or
    RationalFunctions (0-indexed storage)."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("ExactMatrix is immutable")

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries))) if self.rows else ExactMatrix(())

    def column_submatrix(self, cols: Sequence[int]) -> "ExactMatrix":
        """Select the given columns (0-indexed), keeping their order."""
        return ExactMatrix(tuple(tuple(r[c] for c in cols) for r in self.entries))

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose()
        out = []
        for r in self.entries:
            out.append(tuple(sum(a * b for a, b in zip(r, c)) for c in ot.entries))
        return ExactMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class LinearSolution:
    vector: tuple
    unique: bool


def _coerce_rows(matrix) -> list:
    if isinstance(matrix, ExactMatrix):
        return [list(r) for r in matrix.entries]
    return [list(r) for r in matrix]


def _all_rational(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for r in rows for x in r)


# ---------------------------------------------------------------------------
# integer fraction-free kernel


def _int_rows(rows: list) -> list:
    """Scale each row by the lcm of denominators; strip the gcd.  Equations are
    homogeneous in this scaling, so solutions are unchanged."""
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        mult = 1
        for x in fr:
            mult = lcm(mult, x.denominator)
        ints = [int(x * mult) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        out.append([_mpz(x) for x in ints])
    return out


def _strip_content(row: list) -> list:
    g = _mpz(0)
    for x in row:
        if x:
            g = _gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(rows: list, ncols: int) -> list:
    """In-place fraction-free row echelon; returns [(row_index, pivot_col)].

    Pivot choice: among candidate rows, the nonzero entry of minimal bit size.
    """
    pivots = []
    r = 0
    for col in range(ncols):
        best = -1
        best_bits = None
        for i in range(r, len(rows)):
            v = rows[i][col]
            if v:
                bits = abs(v).bit_length()
                if best_bits is None or bits < best_bits:
                    best, best_bits = i, bits
                    if bits <= 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            q = rows[i][col]
            if q:
                ri, rr = rows[i], rows[r]
                rows[i] = _strip_content([p * a - q * b for a, b in zip(ri, rr)])
        pivots.append((r, col))
        r += 1
    return pivots


def _back_substitute(rows, pivots, ncols, assign) -> list:
    """Solve the echelon system given values `assign` for the free columns."""
    x = [None] * ncols
    for col, val in assign.items():
        x[col] = Fraction(val)
    for r, col in reversed(pivots):
        total = Fraction(0)
        for c in range(col + 1, ncols):
            if rows[r][c] and x[c]:
                total += Fraction(int(rows[r][c])) * x[c]
            elif rows[r][c] and x[c] is None:
                raise AssertionError("unassigned trailing column")
        x[col] = -total / Fraction(int(rows[r][col]))
    return x


def _normalize_vector(vec: Sequence[Fraction]) -> tuple:
    """Scale to integer entries with content 1 and first nonzero entry positive."""
    mult = 1
    for x in vec:
        mult = lcm(mult, Fraction(x).denominator)
    ints = [int(Fraction(x) * mult) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(Fraction(x) for x in ints)


# ---------------------------------------------------------------------------
# generic field kernel (polynomial / rational-function entries)


def _field_echelon(rows: list, ncols: int) -> list:
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = -1
        for i in range(r, len(rows)):
            if not is_zero_entry(rows[i][col]):
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            q = rows[i][col]
            if not is_zero_entry(q):
                factor = q / p if not isinstance(q, Polynomial) else RationalFunction.lift(q) / RationalFunction.lift(p)
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    return pivots


def _field_back_substitute(rows, pivots, ncols, assign, zero, one):
    x = [None] * ncols
    for col, val in assign.items():
        x[col] = val
    for r, col in reversed(pivots):
        total = zero
        for c in range(col + 1, ncols):
            if not is_zero_entry(rows[r][c]):
                total = total + rows[r][c] * x[c]
        x[col] = (zero - total) / rows[r][col]
    return x


def _lift_field(rows):
    """Promote Polynomial entries to RationalFunction so division works."""
    if any(isinstance(x, Polynomial) for r in rows for x in r):
        return [[RationalFunction.lift(x) if not isinstance(x, RationalFunction) else x for x in r] for r in rows]
    return rows


# ---------------------------------------------------------------------------
# public operations


def solve_linear(matrix, rhs) -> Optional[LinearSolution]:
    """Exact solution of A x = b, or None if inconsistent.

    Free unknowns (if any) are set to 0 in the returned vector and
    `unique=False`.
    """
    rows = _coerce_rows(matrix)
    rhs = list(rhs)
    if len(rhs) != len(rows):
        raise ValueError(f"rhs length {len(rhs)} != {len(rows)} rows")
    if not rows:
        return LinearSolution((), True)
    n = len(rows[0])
    aug = [r + [rhs[i]] for i, r in enumerate(rows)]
    if _all_rational(aug):
        work = _int_rows(aug)
        pivots = _int_echelon(work, n + 1)
        if any(col == n for _, col in pivots):
            return None
        assign = {c: Fraction(0) for c in range(n) if c not in {col for _, col in pivots}}
        assign[n] = Fraction(-1)  # A x - b = 0 form
        x = _back_substitute(work, pivots, n + 1, assign)
        return LinearSolution(tuple(x[:n]), unique=len(pivots) == n)
    work = _lift_field(aug)
    pivots = _field_echelon(work, n + 1)
    if any(col == n for _, col in pivots):
        return None
    sample = work[0][0]
    zero, one = domain_zero_like(sample), domain_one_like(sample)
    assign = {c: zero for c in range(n) if c not in {col for _, col in pivots}}
    assign[n] = zero - one
    x = _field_back_substitute(work, pivots, n + 1, assign, zero, one)
    return LinearSolution(tuple(x[:n]), unique=len(pivots) == n)


def nullspace(matrix) -> List[tuple]:
    """Basis of the right kernel; each vector has integer entries with content 1
    and first nonzero entry positive.  Rational entries only."""
    rows = _coerce_rows(matrix)
    if not rows:
        return []
    n = len(rows[0])
    if not _all_rational(rows):
        raise ValueError("nullspace supports rational entries only")
    work = _int_rows(rows)
    pivots = _int_echelon(work, n)
    pivot_cols = {col for _, col in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        assign = {c: Fraction(0) for c in range(n) if c not in pivot_cols}
        assign[free] = Fraction(1)
        x = _back_substitute(work, pivots, n, assign)
        basis.append(_normalize_vector(x))
    return basis


def matrix_rank(matrix) -> int:
    rows = _coerce_rows(matrix)
    if not rows:
        return 0
    if _all_rational(rows):
        work = _int_rows(rows)
        return len(_int_echelon(work, len(rows[0])))
    work = _lift_field(rows)
    return len(_field_echelon(work, len(rows[0])))


def determinant(matrix):
    """Exact determinant: Bareiss elimination for rational entries,
    memoized cofactor expansion for polynomial entries."""
    rows = _coerce_rows(matrix)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if _all_rational(rows):
        return _det_bareiss(rows)
    return _det_cofactor(rows)


def _det_bareiss(rows) -> Fraction:
    n = len(rows)
    scale = Fraction(1)
    m = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        mult = 1
        for x in fr:
            mult = lcm(mult, x.denominator)
        scale *= mult
        m.append([_mpz(int(x * mult)) for x in fr])
    sign = 1
    prev = _mpz(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), -1)
            if swap < 0:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = _mpz(0)
        prev = pivot
    return sign * Fraction(int(m[n - 1][n - 1])) / scale


def _det_cofactor(rows):
    n = len(rows)
    zero = domain_zero_like(rows[0][0])
    memo = {}

    def minor(row: int, cols: tuple):
        if row == n:
            return domain_one_like(rows[0][0])
        key = cols
        if key in memo:
            return memo[key]
        total = zero
        sign = 1
        for idx, c in enumerate(cols):
            a = rows[row][c]
            if not is_zero_entry(a):
                sub = minor(row + 1, cols[:idx] + cols[idx + 1 :])
                term = a * sub
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))
