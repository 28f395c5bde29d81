"""Exact rational dense linear algebra.

Matrices are lists of rows of Fractions.  Everything here is tolerance-free:
a pivot is zero exactly when it equals Fraction(0), so ranks, kernels and
positive-semidefiniteness certificates are decidable.

Two workhorses:

* solve_consistent: Gauss-Jordan solve of A X = B with free variables pinned
  to 0.  The pivot choice (first row with a nonzero entry, scanning top-down)
  is deterministic, which makes every downstream matrix reproducible
  byte-for-byte.  Returns None when the system is inconsistent.

* ldlt_psd: symmetric congruence reduction with diagonal pivoting.  For a
  symmetric matrix it either certifies positive semidefiniteness (returning
  the exact rank) or produces a witness vector x with x^T A x < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]
Vector = List[Fraction]

ZERO = Fraction(0)


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[Fraction(1) if i == j else ZERO for j in range(n)] for i in range(n)]


def copy(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(row) for row in a]


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if a and b:
        assert len(a[0]) == len(b), "inner dimensions disagree"
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [_dot(row, v) for row in a]


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s) -> Matrix:
    s = Fraction(s)
    return [[s * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def is_zero_matrix(a) -> bool:
    return all(x == 0 for row in a for x in row)


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def is_diagonal(a) -> bool:
    return all(x == 0 for i, row in enumerate(a) for j, x in enumerate(row) if i != j)


def rref(a: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def solve_consistent(
    a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]
) -> Optional[Matrix]:
    """Solve A X = B exactly; free variables are set to 0.

    Returns the unique such X when the system is consistent, else None.
    B may have any number of columns; shapes are rows(A) x cols(B).
    """
    rows = len(a)
    assert rows > 0, "solve_consistent needs at least one equation row"
    n = len(a[0])
    k = len(b[0]) if b and b[0] is not None else 0
    if len(b) != rows:
        raise AssertionError("right-hand side row count disagrees with A")
    if n == 0:
        # no unknowns: consistent iff B vanishes
        return [] if all(x == 0 for row in b for x in row) else None
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    reduced, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    x = zeros(n, k)
    for r, c in enumerate(pivots):
        x[c] = reduced[r][n:]
    return x


def solve_vector(a, v: Sequence[Fraction]) -> Optional[Vector]:
    x = solve_consistent(a, [[value] for value in v])
    if x is None:
        return None
    return [row[0] for row in x]


def kernel_basis(a: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """A basis of the null space {x : A x = 0}, deterministic order."""
    if not a or not a[0]:
        return []
    n = len(a[0])
    reduced, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * n
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class PSDReport:
    """Outcome of the exact LDL^T positivity test."""

    psd: bool
    rank: int
    pivots: tuple
    witness: Optional[tuple]  # x with x^T A x < 0 when psd is False

    def witness_value(self, a) -> Optional[Fraction]:
        if self.witness is None:
            return None
        return _dot(self.witness, mat_vec(a, list(self.witness)))


def ldlt_psd(a: Sequence[Sequence[Fraction]]) -> PSDReport:
    """Certify PSD-ness of a symmetric matrix by congruence reduction.

    Maintains M = C^T A C; at the end M is diagonal with the pivots on it,
    so a negative pivot at slot i yields the witness C e_i exactly.  When all
    remaining diagonal entries are zero but some off-diagonal s = M[i][j] is
    not, C(e_i -+ e_j) is a witness since its quadratic value is -+2s.
    """
    n = len(a)
    assert is_symmetric(a), "ldlt_psd expects a symmetric matrix"
    m = copy(a)
    c = identity(n)
    remaining = list(range(n))
    pivots: list[Fraction] = []
    negative_at: Optional[int] = None

    while remaining:
        k = next((i for i in remaining if m[i][i] != 0), None)
        if k is None:
            # all remaining diagonal entries vanish
            for i in remaining:
                for j in remaining:
                    if i < j and m[i][j] != 0:
                        s = m[i][j]
                        sign = Fraction(-1) if s > 0 else Fraction(1)
                        witness = [
                            c[r][i] + sign * c[r][j] for r in range(n)
                        ]
                        return PSDReport(
                            psd=False,
                            rank=len(pivots),
                            pivots=tuple(pivots),
                            witness=tuple(witness),
                        )
            break  # remaining block is entirely zero: done
        pivot = m[k][k]
        if pivot < 0:
            witness = [c[r][k] for r in range(n)]
            return PSDReport(
                psd=False, rank=len(pivots), pivots=tuple(pivots), witness=tuple(witness)
            )
        pivots.append(pivot)
        remaining.remove(k)
        for i in remaining:
            if m[i][k] != 0:
                f = m[i][k] / pivot
                # column then row update keeps M symmetric; update C alongside
                for r in range(n):
                    m[r][i] -= f * m[r][k]
                for r in range(n):
                    m[i][r] -= f * m[k][r]
                for r in range(n):
                    c[r][i] -= f * c[r][k]

    return PSDReport(psd=True, rank=len(pivots), pivots=tuple(pivots), witness=None)


def to_string_matrix(a) -> list[list[str]]:
    """Render every entry as an exact "p/q" string (for JSON emission)."""
    return [[str(x) for x in row] for row in a]


def from_string_matrix(rows: Sequence[Sequence[str]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]
