"""Graded orthogonal decomposition of polynomials against a moment functional.

For a moment functional phi, the polynomials up to a degree bound split as
P_0 + P_1 + ... + P_N where P_0 contains the constants and P_n is the
phi-orthogonal complement of the lower degrees inside degree <= n.  The
decomposition is computed degree by degree: the basis vector attached to a
degree-n monomial x^beta is

    b_beta = x^beta - (projection onto P_0 + ... + P_{n-1})

so every b_beta is monic with leading monomial x^beta.  The pairing
phi(p*q) may be degenerate; projections then solve the (singular) Gram
systems with free variables set to zero.  An inconsistent projection
system certifies that the moment data is not positive semidefinite, which
raises NotAStateError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from . import _linalg
from ._linalg import Matrix
from .errors import (
    DimensionMismatchError,
    InvalidIndexError,
    NotAStateError,
    UnsupportedParameterError,
)
from .moments import MomentFunctional
from .multiindex import MultiIndex
from .polyring import Polynomial, monomials_of_degree


@dataclass(frozen=True)
class Level:
    """Degree slice P_n: basis polynomials indexed by degree-n monomials.

    rank is the exact rank of the Gram matrix; null_mask marks basis
    vectors of zero norm (they span the degenerate directions).
    """

    n: int
    monomials: Tuple[MultiIndex, ...]
    polynomials: Tuple[Polynomial, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    rank: int
    null_mask: Tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def gram_matrix(self) -> Matrix:
        return [list(row) for row in self.gram]

    def leading_matrix(self) -> Matrix:
        """Column k holds the degree-n monomial coefficients of polynomial k."""
        return [
            [poly.coefficient(mono) for poly in self.polynomials]
            for mono in self.monomials
        ]


class Decomposition:
    """The levels P_0..P_N together with coordinate bookkeeping."""

    def __init__(self, functional: MomentFunctional, levels: Sequence[Level]):
        self.functional = functional
        self.levels = list(levels)
        self.d = functional.d
        self.max_degree = len(self.levels) - 1

    def level(self, n: int) -> Level:
        if not 0 <= n <= self.max_degree:
            raise InvalidIndexError(
                f"level {n} outside computed range 0..{self.max_degree}"
            )
        return self.levels[n]

    def coordinates(self, p: Polynomial) -> List[List[Fraction]]:
        """Coefficient vector of p in each level basis, top degree first solved.

        The level bases are graded (degree-n slice invertible), so peeling
        the top slice and recursing is exact and needs no inner products.
        """
        if p.d != self.d:
            raise DimensionMismatchError(
                f"polynomial dimension {p.d} != decomposition dimension {self.d}"
            )
        coords: List[List[Fraction]] = [
            [Fraction(0)] * len(lv) for lv in self.levels
        ]
        r = p
        while not r.is_zero():
            n = r.degree()
            if n > self.max_degree:
                raise InvalidIndexError(
                    f"polynomial degree {n} exceeds decomposition degree "
                    f"{self.max_degree}"
                )
            lv = self.levels[n]
            slice_coords = [[r.coefficient(mono)] for mono in lv.monomials]
            sol = _linalg.solve_consistent(lv.leading_matrix(), slice_coords)
            assert sol is not None, "graded level basis must span its top slice"
            c = [row[0] for row in sol]
            coords[n] = c
            for coeff, poly in zip(c, lv.polynomials):
                if coeff:
                    r = r - poly.scale(coeff)
            assert r.is_zero() or r.degree() < n, "top-slice peel must drop degree"
        return coords

    def project(self, p: Polynomial, n: int) -> Polynomial:
        """Component of p in P_n."""
        c = self.coordinates(p)[n]
        out = Polynomial.zero(self.d)
        for coeff, poly in zip(c, self.levels[n].polynomials):
            if coeff:
                out = out + poly.scale(coeff)
        return out

    def components(self, p: Polynomial) -> List[Polynomial]:
        """All components [p_0, ..., p_N]; they sum to p."""
        coords = self.coordinates(p)
        out = []
        for lv, c in zip(self.levels, coords):
            part = Polynomial.zero(self.d)
            for coeff, poly in zip(c, lv.polynomials):
                if coeff:
                    part = part + poly.scale(coeff)
            out.append(part)
        return out

    def rescale(self, scales: Sequence[Sequence]) -> "Decomposition":
        """Same level spaces with basis vectors scaled by nonzero rationals.

        Used to check that downstream quantities do not depend on the basis
        choice inside each level.
        """
        if len(scales) != len(self.levels):
            raise DimensionMismatchError(
                f"need one scale list per level, got {len(scales)} for "
                f"{len(self.levels)} levels"
            )
        new_levels = []
        for lv, level_scales in zip(self.levels, scales):
            factors = [Fraction(s) for s in level_scales]
            if len(factors) != len(lv) or any(f == 0 for f in factors):
                raise UnsupportedParameterError(
                    f"level {lv.n} needs {len(lv)} nonzero scale factors"
                )
            polys = tuple(
                poly.scale(f) for poly, f in zip(lv.polynomials, factors)
            )
            gram = tuple(
                tuple(factors[i] * factors[j] * lv.gram[i][j] for j in range(len(lv)))
                for i in range(len(lv))
            )
            # congruence by a nonzero diagonal: rank and nullity are unchanged
            new_levels.append(
                Level(lv.n, lv.monomials, polys, gram, lv.rank, lv.null_mask)
            )
        return Decomposition(self.functional, new_levels)


def decompose(functional: MomentFunctional, max_degree: int) -> Decomposition:
    """Orthogonalize the monomials degree by degree against the functional.

    Needs moments up to degree 2*max_degree.
    """
    if max_degree < 0:
        raise InvalidIndexError(f"max_degree must be >= 0, got {max_degree}")
    d = functional.d
    levels: List[Level] = []
    for n in range(max_degree + 1):
        monos = monomials_of_degree(d, n)
        polys: List[Polynomial] = []
        for beta in monos:
            p = Polynomial.monomial(d, beta)
            for lv in levels:
                rhs = [[functional.inner_product(b, p)] for b in lv.polynomials]
                sol = _linalg.solve_consistent(lv.gram_matrix(), rhs)
                if sol is None:
                    raise NotAStateError(
                        f"projection of x^{tuple(beta)} onto degree {lv.n} is "
                        "inconsistent; the moments are not positive semidefinite"
                    )
                for coeff, b in zip((row[0] for row in sol), lv.polynomials):
                    if coeff:
                        p = p - b.scale(coeff)
            polys.append(p)
        gram = tuple(
            tuple(functional.inner_product(polys[i], polys[j]) for j in range(len(polys)))
            for i in range(len(polys))
        )
        report = _linalg.ldlt_psd([list(row) for row in gram])
        if not report.psd:
            raise NotAStateError(
                f"degree-{n} Gram matrix has a negative direction "
                f"(witness vector {report.witness}); the moments are not a "
                "moment sequence of a positive measure"
            )
        null_mask = tuple(gram[i][i] == 0 for i in range(len(polys)))
        levels.append(
            Level(n, tuple(monos), tuple(polys), gram, report.rank, null_mask)
        )
    return Decomposition(functional, levels)


def project(decomposition: Decomposition, p: Polynomial, n: int) -> Polynomial:
    return decomposition.project(p, n)


# --------------------------------------------------------------------------
# floating point variant (diagnostic only; the exact path is authoritative)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FloatLevel:
    n: int
    monomials: Tuple[MultiIndex, ...]
    gram: "object"  # numpy ndarray
    rank: int


class FloatDecomposition:
    def __init__(self, d: int, levels: Sequence[FloatLevel], rel_tol: float):
        self.d = d
        self.levels = list(levels)
        self.max_degree = len(self.levels) - 1
        self.rel_tol = rel_tol

    def level(self, n: int) -> FloatLevel:
        return self.levels[n]

    def rank_profile(self) -> List[int]:
        return [lv.rank for lv in self.levels]


def decompose_float(
    d: int,
    moment: Callable[[MultiIndex], float],
    max_degree: int,
    rel_tol: float = 1e-10,
) -> FloatDecomposition:
    """Floating point level Grams via Schur complements of the moment matrix.

    ``moment`` maps a multi-index to a float.  Level ranks come from SVD
    with threshold rel_tol relative to the scale of the moment matrix.
    """
    import numpy as np

    if max_degree < 0:
        raise InvalidIndexError(f"max_degree must be >= 0, got {max_degree}")
    slices = [monomials_of_degree(d, n) for n in range(max_degree + 1)]
    lower: List[MultiIndex] = []
    moment_cache = {}

    def m(beta: MultiIndex) -> float:
        if beta not in moment_cache:
            moment_cache[beta] = float(moment(beta))
        return moment_cache[beta]

    def pairing(rows, cols):
        return np.array(
            [
                [m(tuple(a + b for a, b in zip(r, c))) for c in cols]
                for r in rows
            ],
            dtype=float,
        )

    levels: List[FloatLevel] = []
    scale = max(1.0, abs(m(tuple([0] * d))))
    for n in range(max_degree + 1):
        monos = slices[n]
        a_nn = pairing(monos, monos)
        if lower:
            a_ll = pairing(lower, lower)
            a_ln = pairing(lower, monos)
            sol, *_ = np.linalg.lstsq(a_ll, a_ln, rcond=None)
            gram = a_nn - a_ln.T @ sol
            scale = max(scale, float(np.linalg.norm(a_ll, 2)))
        else:
            gram = a_nn
        gram = (gram + gram.T) / 2.0
        sv = np.linalg.svd(gram, compute_uv=False) if gram.size else np.array([])
        rank = int((sv > rel_tol * scale).sum())
        levels.append(FloatLevel(n, tuple(monos), gram, rank))
        lower.extend(monos)
    return FloatDecomposition(d, levels, rel_tol)
