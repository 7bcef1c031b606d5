"""Skew-symmetric matrices and three independent Pfaffian algorithms.

Conventions: indices are 1-based to match the combinatorial formulas; the
Pfaffian of the empty matrix is 1 and of any odd-dimensional matrix is 0.
Entries may be Fractions, Polynomials, or RationalFunctions.

The three routes are deliberately independent:
  * pf_naive      - signed sum over perfect matchings (definition; dim <= 14),
  * pf_eliminate  - skew elimination with 2x2 pivots and exact division,
  * pf_laplace    - expansion along the last row/column via sub-Pfaffians.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .linalg import LinearSolution, solve_linear
from .poly import (
    Polynomial,
    RationalFunction,
    domain_one_like,
    domain_zero_like,
    entry_text,
    is_zero_entry,
    parse_entry,
)
from .sequences import MatrixFamily

Entry = Union[Fraction, Polynomial, RationalFunction]

NAIVE_DIMENSION_LIMIT = 14


class SingularCofactorSystem(ValueError):
    """The normalized cofactor system has no unique solution at this dimension
    (the normalizing sub-Pfaffian vanishes), so the ansatz is inapplicable here."""

    def __init__(self, dim: int, detail: str = ""):
        self.dim = dim
        msg = f"cofactor system singular at dim={dim}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class SkewMatrix:
    """Even-dimensional skew-symmetric matrix stored by its strict upper triangle."""

    __slots__ = ("dim", "upper", "_zero")

    def __init__(self, dim: int, upper: dict, zero: Entry = Fraction(0)):
        if dim < 0 or dim % 2:
            raise ValueError(f"dimension must be even and non-negative, got {dim}")
        clean = {}
        for (i, j), v in upper.items():
            if not (1 <= i < j <= dim):
                raise ValueError(f"bad upper index ({i}, {j}) for dim {dim}")
            if not is_zero_entry(v):
                clean[(i, j)] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "upper", clean)
        object.__setattr__(self, "_zero", zero)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("SkewMatrix is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_function(cls, dim: int, fn, zero: Entry = Fraction(0)) -> "SkewMatrix":
        upper = {(i, j): fn(i, j) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)}
        return cls(dim, upper, zero)

    @classmethod
    def from_family(cls, family: MatrixFamily, dim: int) -> "SkewMatrix":
        return cls.from_function(dim, family.entry, family.zero())

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Entry]]) -> "SkewMatrix":
        dim = len(rows)
        zero = domain_zero_like(rows[0][0]) if dim else Fraction(0)
        for i in range(dim):
            if len(rows[i]) != dim:
                raise ValueError("ragged matrix")
            if not is_zero_entry(rows[i][i]):
                raise ValueError(f"nonzero diagonal at {i + 1}")
            for j in range(i + 1, dim):
                lhs = rows[i][j]
                rhs = rows[j][i]
                if not is_zero_entry(lhs + rhs):
                    raise ValueError(f"not skew-symmetric at ({i + 1}, {j + 1})")
        upper = {(i + 1, j + 1): rows[i][j] for i in range(dim) for j in range(i + 1, dim)}
        return cls(dim, upper, zero)

    # -- access -----------------------------------------------------------

    def entry(self, i: int, j: int) -> Entry:
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"index ({i}, {j}) out of range for dim {self.dim}")
        if i == j:
            return self._zero
        if i < j:
            return self.upper.get((i, j), self._zero)
        v = self.upper.get((j, i))
        return -v if v is not None else self._zero

    def zero(self) -> Entry:
        return self._zero

    def dense(self) -> list:
        return [[self.entry(i, j) for j in range(1, self.dim + 1)] for i in range(1, self.dim + 1)]

    def submatrix_removing(self, removed: Iterable[int]) -> "SkewMatrix":
        """Remove the listed rows and the same-numbered columns."""
        removed = set(removed)
        if any(not 1 <= r <= self.dim for r in removed):
            raise IndexError(f"removal indices {sorted(removed)} out of range")
        keep = [k for k in range(1, self.dim + 1) if k not in removed]
        upper = {}
        for a in range(len(keep)):
            for b in range(a + 1, len(keep)):
                v = self.entry(keep[a], keep[b])
                if not is_zero_entry(v):
                    upper[(a + 1, b + 1)] = v
        return SkewMatrix(len(keep), upper, self._zero)

    def permuted(self, pi: Sequence[int]) -> "SkewMatrix":
        """Conjugate by the permutation pi (1-based images): new (i,j) entry is
        a(pi[i-1], pi[j-1])."""
        if sorted(pi) != list(range(1, self.dim + 1)):
            raise ValueError(f"not a permutation of 1..{self.dim}: {pi}")
        upper = {}
        for i in range(1, self.dim + 1):
            for j in range(i + 1, self.dim + 1):
                v = self.entry(pi[i - 1], pi[j - 1])
                if not is_zero_entry(v):
                    upper[(i, j)] = v
        return SkewMatrix(self.dim, upper, self._zero)

    def __eq__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        keys = set(self.upper) | set(other.upper)
        return all(self.entry(*k) == other.entry(*k) for k in keys)

    __hash__ = None

    def __repr__(self):
        return f"SkewMatrix(dim={self.dim}, nonzero={len(self.upper)})"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        triples = [[i, j, entry_text(v)] for (i, j), v in sorted(self.upper.items())]
        return {"dim": self.dim, "upper": triples}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "SkewMatrix":
        try:
            dim = int(data["dim"])
            triples = data["upper"]
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed matrix object: {e}") from None
        upper = {}
        symbolic = False
        for item in triples:
            if len(item) != 3:
                raise ValueError(f"malformed upper triple: {item!r}")
            i, j, text = int(item[0]), int(item[1]), str(item[2])
            if (i, j) in upper:
                raise ValueError(f"duplicate entry ({i}, {j})")
            v = parse_entry(text)
            if isinstance(v, Polynomial):
                symbolic = True
            upper[(i, j)] = v
        zero = Polynomial.zero(("x",)) if symbolic else Fraction(0)
        return cls(dim, upper, zero)

    @classmethod
    def from_json(cls, text: str) -> "SkewMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"malformed matrix JSON: {e}") from None
        return cls.from_json_dict(data)


# ---------------------------------------------------------------------------
# perfect matchings


@dataclass(frozen=True)
class PerfectMatching:
    """Pairs (i, j) with i < j, listed with increasing first elements, covering
    1..2n exactly once."""

    pairs: Tuple[Tuple[int, int], ...]

    def sign(self) -> int:
        flat = [k for pair in self.pairs for k in pair]
        inversions = sum(
            1 for a in range(len(flat)) for b in range(a + 1, len(flat)) if flat[a] > flat[b]
        )
        return -1 if inversions % 2 else 1

    @staticmethod
    def enumerate(dim: int):
        """Yield all perfect matchings of {1..dim} in canonical order."""
        if dim % 2:
            return

        def rec(items):
            if not items:
                yield ()
                return
            first = items[0]
            for t in range(1, len(items)):
                partner = items[t]
                rest = items[1:t] + items[t + 1 :]
                for sub in rec(rest):
                    yield ((first, partner),) + sub

        for pairs in rec(tuple(range(1, dim + 1))):
            yield PerfectMatching(pairs)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sending position k to seq[k] (any distinct ints)."""
    inversions = sum(
        1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b]
    )
    return -1 if inversions % 2 else 1


# ---------------------------------------------------------------------------
# Pfaffian algorithms


def pf_naive(A: SkewMatrix, limit: int = NAIVE_DIMENSION_LIMIT) -> Entry:
    """Signed sum over perfect matchings; the (2n-1)!! growth is guarded."""
    if A.dim > limit:
        raise ValueError(
            f"pf_naive dimension guard: dim {A.dim} exceeds limit {limit}"
        )
    one = domain_one_like(A.zero())
    if A.dim == 0:
        return one
    total = A.zero()
    for matching in PerfectMatching.enumerate(A.dim):
        term = one
        ok = True
        for i, j in matching.pairs:
            v = A.entry(i, j)
            if is_zero_entry(v):
                ok = False
                break
            term = term * v
        if ok:
            total = total + (term if matching.sign() > 0 else -term)
    return total


def pf_eliminate(A: SkewMatrix) -> Entry:
    """Skew elimination: repeatedly factor out the pivot a(1,2) and update the
    trailing block by the rank-2 correction, multiplying up the pivots.

    Polynomial matrices are lifted to rational functions for the internal
    divisions and converted back exactly at the end.
    """
    lifted = any(isinstance(v, Polynomial) for v in A.upper.values())
    m = A.dim
    if m == 0:
        return domain_one_like(A.zero())
    M = A.dense()
    if lifted:
        M = [[RationalFunction.lift(v) for v in row] for row in M]
    zero = M[0][1] - M[0][1]
    one = domain_one_like(zero)
    sign = 1
    pf = one
    for k in range(0, m, 2):
        piv = next((j for j in range(k + 1, m) if not is_zero_entry(M[k][j])), -1)
        if piv < 0:
            # row k is zero on the active block: the matrix is singular
            return A.zero() if not lifted else domain_zero_like(A.zero())
        if piv != k + 1:
            for row in M:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            M[k + 1], M[piv] = M[piv], M[k + 1]
            sign = -sign
        a = M[k][k + 1]
        pf = pf * a
        for i in range(k + 2, m):
            ci = M[k][i]
            di = M[k + 1][i]
            if is_zero_entry(ci) and is_zero_entry(di):
                continue
            for j in range(i + 1, m):
                delta = (ci * M[k + 1][j] - M[k][j] * di) / a
                if not is_zero_entry(delta):
                    M[i][j] = M[i][j] - delta
                    M[j][i] = zero - M[i][j]
    if sign < 0:
        pf = zero - pf
    if lifted:
        return pf.as_polynomial()
    return pf


def pf_laplace(A: SkewMatrix) -> Entry:
    """Expansion along the last column: Pf A = sum_k (-1)^(k-1) a(k, 2n) Pf A(k, 2n).

    Sub-Pfaffians are memoized on the surviving index set, so the cost is one
    term per (subset, element) pair rather than a double factorial.
    """
    one = domain_one_like(A.zero())
    memo = {(): one}

    def rec(indices: tuple) -> Entry:
        if indices in memo:
            return memo[indices]
        last = indices[-1]
        total = A.zero()
        sign = 1
        for pos in range(len(indices) - 1):
            k = indices[pos]
            v = A.entry(k, last)
            if not is_zero_entry(v):
                rest = indices[:pos] + indices[pos + 1 : -1]
                term = v * rec(rest)
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[indices] = total
        return total

    return rec(tuple(range(1, A.dim + 1)))


def pf_minor(A: SkewMatrix, removed: Iterable[int]) -> Entry:
    """Pfaffian of the submatrix with the listed rows/columns removed."""
    return pf_eliminate(A.submatrix_removing(removed))


def gamma(A: SkewMatrix, i: int, j: int) -> Entry:
    """Signed sub-Pfaffian cofactor: zero on the diagonal, and for i != j the
    Pfaffian of A with rows/columns {i, j} removed, weighted by (-1)^(j-i-1)
    for i < j and antisymmetrized for i > j."""
    if i == j:
        return A.zero()
    if i < j:
        v = pf_minor(A, (i, j))
        return v if (j - i - 1) % 2 == 0 else -v
    v = gamma(A, j, i)
    return -v


def cofactor_vector(A: SkewMatrix) -> List[Entry]:
    """The normalized last-column cofactor vector c of length dim-1.

    Defined by the linear system: sum_i c_i a(i, j) = 0 for every j < dim,
    with the normalization c_{dim-1} = 1.  Raises SingularCofactorSystem when
    that system has no unique solution (equivalently, the normalizing
    sub-Pfaffian vanishes).
    """
    m = A.dim
    if m < 2:
        raise ValueError("cofactor vector needs dim >= 2")
    zero = A.zero()
    one = domain_one_like(zero)
    rows = []
    rhs = []
    for j in range(1, m):
        rows.append([A.entry(i, j) for i in range(1, m)])
        rhs.append(zero)
    rows.append([one if i == m - 1 else zero for i in range(1, m)])
    rhs.append(one)
    sol = solve_linear(rows, rhs)
    if sol is None or not sol.unique:
        raise SingularCofactorSystem(m, "no unique normalized solution")
    return list(sol.vector)


def cofactor_vector_via_minors(A: SkewMatrix) -> List[Entry]:
    """Independent route: c_i = gamma(i, dim) / gamma(dim-1, dim)."""
    m = A.dim
    denom = gamma(A, m - 1, m)
    if is_zero_entry(denom):
        raise SingularCofactorSystem(m, "normalizing sub-Pfaffian is zero")
    out = []
    for i in range(1, m):
        num = gamma(A, i, m)
        if isinstance(num, Polynomial) or isinstance(denom, Polynomial):
            out.append((RationalFunction.lift(num) / RationalFunction.lift(denom)))
        else:
            out.append(num / denom)
    return out
