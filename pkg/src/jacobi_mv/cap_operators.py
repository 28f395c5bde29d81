"""Creation, preservation and annihilation operators between degree levels.

Multiplication by the coordinate x_j maps P_n into the degrees <= n+1.
Decomposing x_j*p through the graded orthogonal basis splits it into

* creation a+_{j|n}: P_n -> P_{n+1} (the degree-(n+1) component),
* preservation a0_{j|n}: P_n -> P_n (the degree-n component),
* annihilation a-_{j|n}: P_n -> P_{n-1} (the degree-(n-1) component);

components at any other degree must vanish, and this is asserted rather
than assumed (InternalConsistencyError otherwise).  At the top level the
degree-(n+1) component cannot be represented, so preservation and
annihilation are obtained from the pairing instead: their images match
x_j*p against every basis vector of the target level, with degenerate
Gram systems solved with free variables set to zero.  An inconsistent
system there certifies that the moments are not positive semidefinite.

Matrices are written in the level bases of the decomposition, columns
indexed by the source level; coordinates j are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import _linalg
from ._linalg import Matrix
from .errors import (
    InsufficientMomentsError,
    InternalConsistencyError,
    InvalidIndexError,
    NotAStateError,
)
from .orthodecomp import Decomposition
from .polyring import Polynomial


class CAPSystem:
    """All three operator families for one decomposition, as matrices."""

    def __init__(
        self,
        decomposition: Decomposition,
        plus: Dict[Tuple[int, int], Matrix],
        zero: Dict[Tuple[int, int], Optional[Matrix]],
        minus: Dict[Tuple[int, int], Matrix],
    ):
        self.decomposition = decomposition
        self.d = decomposition.d
        self.max_degree = decomposition.max_degree
        self._plus = plus
        self._zero = zero
        self._minus = minus

    def _check(self, j: int, n: int, top: int) -> None:
        if not 1 <= j <= self.d:
            raise InvalidIndexError(f"coordinate {j} outside 1..{self.d}")
        if not 0 <= n <= top:
            raise InvalidIndexError(f"level {n} outside 0..{top}")

    def plus_matrix(self, j: int, n: int) -> Matrix:
        """Creation a+_{j|n}, shape classes(n+1) x classes(n); needs n < max."""
        self._check(j, n, self.max_degree - 1)
        return _linalg.copy(self._plus[(j, n)])

    def zero_matrix(self, j: int, n: int) -> Matrix:
        """Preservation a0_{j|n}, square of size classes(n)."""
        self._check(j, n, self.max_degree)
        stored = self._zero[(j, n)]
        if stored is None:
            raise InsufficientMomentsError(
                f"preservation at top level {n} needs moments of degree "
                f"{2 * n + 1}, beyond the available table"
            )
        return _linalg.copy(stored)

    def minus_matrix(self, j: int, n: int) -> Matrix:
        """Annihilation a-_{j|n}, shape classes(n-1) x classes(n); empty at n=0."""
        self._check(j, n, self.max_degree)
        return _linalg.copy(self._minus[(j, n)])

    # ------------------------------------------------------- polynomial forms
    def _matvec_poly(self, matrix: Matrix, coords: List[Fraction], target_level: int) -> Polynomial:
        out = Polynomial.zero(self.d)
        if not matrix:
            return out
        image = _linalg.mat_vec(matrix, coords)
        for c, b in zip(image, self.decomposition.level(target_level).polynomials):
            if c:
                out = out + b.scale(c)
        return out

    def creation(self, j: int, p: Polynomial) -> Polynomial:
        """a+_j applied levelwise to p; p may not touch the top level."""
        coords = self.decomposition.coordinates(p)
        out = Polynomial.zero(self.d)
        for n, c in enumerate(coords):
            if any(c):
                if n >= self.max_degree:
                    raise InvalidIndexError(
                        f"creation from level {n} leaves the computed range"
                    )
                out = out + self._matvec_poly(self._plus[(j, n)], c, n + 1)
        return out

    def preservation(self, j: int, p: Polynomial) -> Polynomial:
        coords = self.decomposition.coordinates(p)
        out = Polynomial.zero(self.d)
        for n, c in enumerate(coords):
            if any(c):
                out = out + self._matvec_poly(self.zero_matrix(j, n), c, n)
        return out

    def annihilation(self, j: int, p: Polynomial) -> Polynomial:
        coords = self.decomposition.coordinates(p)
        out = Polynomial.zero(self.d)
        for n, c in enumerate(coords):
            if n >= 1 and any(c):
                out = out + self._matvec_poly(self._minus[(j, n)], c, n - 1)
        return out


def _column(rows: List[List[Fraction]], k: int) -> List[Fraction]:
    return [row[k] for row in rows]


def build(decomposition: Decomposition) -> CAPSystem:
    """Compute all operator matrices for the given decomposition.

    Below the top level the three blocks are read off the direct-sum
    decomposition of x_j*p, which needs no moments beyond those already
    inside the basis; components outside degrees n-1..n+1 are checked to
    vanish.  Preservation at the top level needs moments one degree beyond
    what the decomposition itself used; with a finite moment table it is
    left unset and raises only if accessed.
    """
    phi = decomposition.functional
    d = decomposition.d
    top = decomposition.max_degree
    plus: Dict[Tuple[int, int], Matrix] = {}
    zero: Dict[Tuple[int, int], Optional[Matrix]] = {}
    minus: Dict[Tuple[int, int], Matrix] = {}
    for n in range(top + 1):
        lv = decomposition.level(n)
        size = len(lv)
        for j in range(1, d + 1):
            images = [b.mul_by_variable(j) for b in lv.polynomials]
            if n < top:
                up = len(decomposition.level(n + 1))
                down = len(decomposition.level(n - 1)) if n >= 1 else 0
                p_block = [[Fraction(0)] * size for _ in range(up)]
                z_block = [[Fraction(0)] * size for _ in range(size)]
                m_block = [[Fraction(0)] * size for _ in range(down)]
                for k, img in enumerate(images):
                    coords = decomposition.coordinates(img)
                    for m, c in enumerate(coords):
                        if m == n + 1:
                            for i, value in enumerate(c):
                                p_block[i][k] = value
                        elif m == n:
                            for i, value in enumerate(c):
                                z_block[i][k] = value
                        elif m == n - 1:
                            for i, value in enumerate(c):
                                m_block[i][k] = value
                        elif any(c):
                            raise InternalConsistencyError(
                                f"x_{j} * (basis vector {k} of degree {n}) has "
                                f"a nonzero component at degree {m}; the "
                                "three-term degree structure is violated"
                            )
                plus[(j, n)] = p_block
                zero[(j, n)] = z_block
                minus[(j, n)] = m_block if n >= 1 else []
                continue
            # top level: the degree-(n+1) component is not representable, so
            # preservation and annihilation come from the pairing
            try:
                pairings = [
                    [phi.inner_product(b, img) for img in images]
                    for b in lv.polynomials
                ]
            except InsufficientMomentsError:
                zero[(j, n)] = None
            else:
                z = _linalg.solve_consistent(lv.gram_matrix(), pairings)
                if z is None:
                    raise NotAStateError(
                        f"preservation system at level {n}, coordinate {j} is "
                        "inconsistent; no positive functional has these moments"
                    )
                zero[(j, n)] = z
            if n == 0:
                minus[(j, n)] = []
                continue
            prev = decomposition.level(n - 1)
            pairings_down = [
                [phi.inner_product(b, img) for img in images]
                for b in prev.polynomials
            ]
            m = _linalg.solve_consistent(prev.gram_matrix(), pairings_down)
            if m is None:
                raise NotAStateError(
                    f"annihilation system at level {n}, coordinate {j} is "
                    "inconsistent; no positive functional has these moments"
                )
            minus[(j, n)] = m
    return CAPSystem(decomposition, plus, zero, minus)


# --------------------------------------------------------------------------
# verification reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuantumDecompositionEntry:
    j: int
    n: int
    index: int
    residual: Polynomial
    residual_norm_sq: Fraction

    @property
    def exact(self) -> bool:
        return self.residual.is_zero()

    @property
    def null(self) -> bool:
        return self.residual_norm_sq == 0


@dataclass(frozen=True)
class QuantumDecompositionReport:
    ok: bool
    entries: Tuple[QuantumDecompositionEntry, ...]

    def witnesses(self) -> Tuple[QuantumDecompositionEntry, ...]:
        return tuple(e for e in self.entries if not e.exact)


def verify_quantum_decomposition(system: CAPSystem) -> QuantumDecompositionReport:
    """Check x_j*b = (a+ + a0 + a-) b, exactly, on every basis vector.

    Recomputes each side independently of how the matrices were built.
    Levels below the top are covered (creation out of the top level is not
    representable).  Failures are reported with the residual polynomial as
    witness, never raised.
    """
    decomp = system.decomposition
    phi = decomp.functional
    entries = []
    for n in range(decomp.max_degree):
        lv = decomp.level(n)
        for j in range(1, system.d + 1):
            for k, b in enumerate(lv.polynomials):
                image = b.mul_by_variable(j)
                model = (
                    system.creation(j, b)
                    + system.preservation(j, b)
                    + system.annihilation(j, b)
                )
                residual = image - model
                norm_sq = phi.inner_product(residual, residual)
                entries.append(
                    QuantumDecompositionEntry(j, n, k, residual, norm_sq)
                )
    ok = all(e.exact for e in entries)
    return QuantumDecompositionReport(ok, tuple(entries))


@dataclass(frozen=True)
class AdjointReport:
    ok: bool
    failures: Tuple[str, ...]


def verify_adjoints(system: CAPSystem) -> AdjointReport:
    """Check the Gram-weighted operator identities, exactly.

    * adjointness: Gram_{n+1} plus_{j|n} = transpose(minus_{j|n+1}) Gram_n,
    * self-adjointness: Gram_n zero_{j|n} symmetric,
    * creation commutativity: plus_{j|n+1} plus_{k|n} = plus_{k|n+1} plus_{j|n}.
    """
    decomp = system.decomposition
    failures = []
    for n in range(decomp.max_degree):
        g_hi = decomp.level(n + 1).gram_matrix()
        g_lo = decomp.level(n).gram_matrix()
        for j in range(1, system.d + 1):
            p = system.plus_matrix(j, n)
            m = system.minus_matrix(j, n + 1)
            lhs = _linalg.mat_mul(g_hi, p)
            rhs = _linalg.mat_mul(_linalg.transpose(m), g_lo)
            if not _linalg.mat_eq(lhs, rhs):
                failures.append(
                    f"creation/annihilation adjoint pair fails at level {n}, "
                    f"coordinate {j}"
                )
    for n in range(decomp.max_degree + 1):
        g = decomp.level(n).gram_matrix()
        for j in range(1, system.d + 1):
            stored = system._zero[(j, n)]
            if stored is None:
                continue
            gz = _linalg.mat_mul(g, stored)
            if not _linalg.mat_eq(gz, _linalg.transpose(gz)):
                failures.append(
                    f"preservation not self-adjoint at level {n}, coordinate {j}"
                )
    for n in range(decomp.max_degree - 1):
        for j in range(1, system.d + 1):
            for k in range(j + 1, system.d + 1):
                jk = _linalg.mat_mul(system.plus_matrix(j, n + 1), system.plus_matrix(k, n))
                kj = _linalg.mat_mul(system.plus_matrix(k, n + 1), system.plus_matrix(j, n))
                if not _linalg.mat_eq(jk, kj):
                    failures.append(
                        f"creation operators {j} and {k} fail to commute out of "
                        f"level {n}"
                    )
    return AdjointReport(not failures, tuple(failures))
