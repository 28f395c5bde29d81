"""Moment functionals on R^d with exact rational moments.

A moment functional is determined by its moment map beta -> phi(x^beta).
Five providers are implemented:

* gaussian_functional(d): product of normalized one-dimensional
  exp(-x^2) weights, phi(1) = 1.
* gamma_functional(alphas): product of normalized x^alpha exp(-x)
  weights on (0, inf), one alpha per coordinate.
* beta_functional(a, b): product of normalized (1-x)^a (1+x)^b weights
  on [-1, 1], one (a_j, b_j) pair per coordinate.
* atomic_functional(atoms): finitely many point masses.
* table_functional(d, max_degree, moments): explicit finite table.

The classical providers are normalized so that phi(1) = 1; the mass of
the unnormalized classical weight is available separately through
mass_factor() as an exact GammaProduct.  Atomic and table functionals
have no associated classical weight, so mass_factor() raises
NoMassFactorError for them.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    InsufficientMomentsError,
    InvalidDimensionError,
    NoMassFactorError,
    UnsupportedParameterError,
)
from .multiindex import MultiIndex, degree
from .polyring import Polynomial
from .symbolic import GammaProduct


def _exact(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise UnsupportedParameterError(
            f"{what} must be exact (int, Fraction or 'p/q' string), got float {value!r}"
        )
    try:
        return Fraction(value)
    except (ValueError, TypeError) as exc:
        raise UnsupportedParameterError(f"bad {what}: {value!r}") from exc


class MomentFunctional:
    """Base class: linear functional on polynomials given by its moments."""

    def __init__(self, d: int, max_degree: Optional[int] = None):
        if d < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
        self.d = d
        self.max_degree = max_degree

    def moment(self, beta: MultiIndex) -> Fraction:
        raise NotImplementedError

    def moment_float(self, beta: MultiIndex) -> float:
        return float(self.moment(beta))

    def _check_beta(self, beta: MultiIndex) -> None:
        if len(beta) != self.d:
            raise DimensionMismatchError(
                f"multi-index length {len(beta)} != dimension {self.d}"
            )
        if any(b < 0 for b in beta):
            raise InsufficientMomentsError(f"negative exponent in {beta}")
        if self.max_degree is not None and degree(beta) > self.max_degree:
            raise InsufficientMomentsError(
                f"moment of degree {degree(beta)} requested but only degrees "
                f"<= {self.max_degree} are available"
            )

    def apply(self, p: Polynomial) -> Fraction:
        if p.d != self.d:
            raise DimensionMismatchError(
                f"polynomial dimension {p.d} != functional dimension {self.d}"
            )
        total = Fraction(0)
        for beta, c in p.terms.items():
            total += c * self.moment(beta)
        return total

    def inner_product(self, p: Polynomial, q: Polynomial) -> Fraction:
        """phi(p*q), the (possibly degenerate) pre-Hilbert pairing."""
        return self.apply(p * q)

    def mass_factor(self) -> GammaProduct:
        raise NoMassFactorError(
            f"{type(self).__name__} has no classical weight, so no mass factor"
        )


# --------------------------------------------------------------------------
# product functionals: moment(beta) = prod_j m_j(beta_j)
# --------------------------------------------------------------------------


class _Sequence1D:
    """Memoized one-dimensional moment sequence with m_0 = 1."""

    def __init__(self):
        self._cache: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def value(self, k: int) -> Fraction:
        if k < len(self._cache):
            return self._cache[k]
        with self._lock:
            while len(self._cache) <= k:
                self._cache.append(self._next(len(self._cache)))
            return self._cache[k]

    def _next(self, k: int) -> Fraction:
        raise NotImplementedError


class _GaussianSeq(_Sequence1D):
    # m_{2t} = m_{2t-2} * (2t-1)/2 for exp(-x^2)/sqrt(pi); odd moments vanish
    def _next(self, k: int) -> Fraction:
        if k % 2 == 1:
            return Fraction(0)
        return self._cache[k - 2] * Fraction(k - 1, 2)


class _GammaSeq(_Sequence1D):
    # m_k = m_{k-1} * (alpha + k) for x^alpha exp(-x) / Gamma(alpha+1)
    def __init__(self, alpha: Fraction):
        if alpha <= -1:
            raise UnsupportedParameterError(f"gamma parameter must be > -1, got {alpha}")
        super().__init__()
        self.alpha = alpha

    def _next(self, k: int) -> Fraction:
        return self._cache[k - 1] * (self.alpha + k)


class _BetaSeq(_Sequence1D):
    # integrate d/dx[(1-x)^(a+1) (1+x)^(b+1) x^(k-1)] over [-1, 1]:
    # m_k = ((b-a) m_{k-1} + (k-1) m_{k-2}) / (a+b+k+1)
    def __init__(self, a: Fraction, b: Fraction):
        if a <= -1 or b <= -1:
            raise UnsupportedParameterError(
                f"beta parameters must be > -1, got a={a}, b={b}"
            )
        super().__init__()
        self.a = a
        self.b = b

    def _next(self, k: int) -> Fraction:
        out = (self.b - self.a) * self._cache[k - 1]
        if k >= 2:
            out += (k - 1) * self._cache[k - 2]
        return out / (self.a + self.b + k + 1)


class ProductFunctional(MomentFunctional):
    """Coordinates are independent; moment(beta) factors over coordinates."""

    def __init__(self, sequences: Sequence[_Sequence1D]):
        super().__init__(len(sequences))
        self._sequences = list(sequences)

    def moment(self, beta: MultiIndex) -> Fraction:
        self._check_beta(beta)
        out = Fraction(1)
        for seq, k in zip(self._sequences, beta):
            out *= seq.value(k)
            if out == 0:
                return out
        return out


class GaussianFunctional(ProductFunctional):
    def __init__(self, d: int):
        if d < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
        super().__init__([_GaussianSeq() for _ in range(d)])

    def mass_factor(self) -> GammaProduct:
        # integral of exp(-|x|^2) over R^d
        return GammaProduct.pi_power(Fraction(self.d, 2))


class GammaFunctional(ProductFunctional):
    def __init__(self, alphas: Sequence):
        self.alphas = [_exact(a, "gamma parameter") for a in alphas]
        super().__init__([_GammaSeq(a) for a in self.alphas])

    def mass_factor(self) -> GammaProduct:
        # prod_j integral of x^alpha_j exp(-x) over (0, inf)
        out = GammaProduct.from_rational(1)
        for a in self.alphas:
            out = out * GammaProduct.gamma(a + 1)
        return out


class BetaFunctional(ProductFunctional):
    def __init__(self, a: Sequence, b: Sequence):
        self.a = [_exact(v, "beta parameter a") for v in a]
        self.b = [_exact(v, "beta parameter b") for v in b]
        if len(self.a) != len(self.b):
            raise DimensionMismatchError(
                f"parameter lists have lengths {len(self.a)} and {len(self.b)}"
            )
        super().__init__([_BetaSeq(x, y) for x, y in zip(self.a, self.b)])

    def mass_factor(self) -> GammaProduct:
        # prod_j integral of (1-x)^a_j (1+x)^b_j over [-1, 1]
        out = GammaProduct.from_rational(1)
        for a, b in zip(self.a, self.b):
            out = out * GammaProduct.two_power(a + b + 1)
            out = out * GammaProduct.gamma(a + 1) * GammaProduct.gamma(b + 1)
            out = out / GammaProduct.gamma(a + b + 2)
        return out


# --------------------------------------------------------------------------
# finitely-atomic and table functionals
# --------------------------------------------------------------------------


class AtomicFunctional(MomentFunctional):
    """phi(p) = sum_i w_i p(x_i): a convex combination of point evaluations.

    Weights must be positive rationals summing to 1 and the points pairwise
    distinct, so that phi is a normalized state with exactly these atoms.
    """

    def __init__(self, atoms: Sequence[Tuple[Sequence, object]], d: Optional[int] = None):
        atoms = list(atoms)
        if not atoms:
            raise UnsupportedParameterError("need at least one atom")
        if d is None:
            d = len(atoms[0][0])
        super().__init__(d)
        self.atoms: List[Tuple[Tuple[Fraction, ...], Fraction]] = []
        for point, weight in atoms:
            pt = tuple(_exact(c, "atom coordinate") for c in point)
            if len(pt) != self.d:
                raise DimensionMismatchError(
                    f"atom {pt} has {len(pt)} coordinates, expected {self.d}"
                )
            w = _exact(weight, "atom weight")
            if w <= 0:
                raise UnsupportedParameterError(f"atom weights must be positive, got {w}")
            self.atoms.append((pt, w))
        if sum(w for _, w in self.atoms) != 1:
            raise UnsupportedParameterError("atom weights must sum to 1")
        points = [pt for pt, _ in self.atoms]
        if len(set(points)) != len(points):
            raise UnsupportedParameterError("atom points must be pairwise distinct")

    def moment(self, beta: MultiIndex) -> Fraction:
        self._check_beta(beta)
        total = Fraction(0)
        for point, weight in self.atoms:
            term = weight
            for c, k in zip(point, beta):
                if k:
                    if c == 0:
                        term = Fraction(0)
                        break
                    term *= c**k
            total += term
        return total

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "atoms": [
                {"x": [str(c) for c in point], "w": str(weight)}
                for point, weight in self.atoms
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "AtomicFunctional":
        atoms = [(entry["x"], entry["w"]) for entry in doc["atoms"]]
        return cls(atoms, d=doc.get("d"))


class TableFunctional(MomentFunctional):
    """Explicit finite moment table; absent entries raise on access."""

    def __init__(self, d: int, max_degree: int, moments: Dict):
        if max_degree < 0:
            raise UnsupportedParameterError(f"max_degree must be >= 0, got {max_degree}")
        super().__init__(d, max_degree=max_degree)
        self._table: Dict[MultiIndex, Fraction] = {}
        for beta, value in moments.items():
            beta = tuple(int(b) for b in beta)
            if len(beta) != d or any(b < 0 for b in beta):
                raise DimensionMismatchError(f"bad multi-index {beta} for dimension {d}")
            if degree(beta) > max_degree:
                raise UnsupportedParameterError(
                    f"table entry {beta} exceeds max_degree {max_degree}"
                )
            self._table[beta] = _exact(value, f"moment[{beta}]")

    def moment(self, beta: MultiIndex) -> Fraction:
        self._check_beta(beta)
        beta = tuple(beta)
        if beta not in self._table:
            raise InsufficientMomentsError(f"moment {beta} is not in the table")
        return self._table[beta]

    def to_json_dict(self) -> dict:
        entries = sorted(self._table.items(), key=lambda kv: (degree(kv[0]), kv[0]))
        return {
            "d": self.d,
            "max_degree": self.max_degree,
            "moments": [
                {"beta": list(beta), "value": str(value)} for beta, value in entries
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "TableFunctional":
        moments = {tuple(e["beta"]): e["value"] for e in doc["moments"]}
        return cls(int(doc["d"]), int(doc["max_degree"]), moments)


# --------------------------------------------------------------------------
# factories
# --------------------------------------------------------------------------


def gaussian_functional(d: int) -> GaussianFunctional:
    return GaussianFunctional(d)


def gamma_functional(alphas: Sequence) -> GammaFunctional:
    return GammaFunctional(alphas)


def beta_functional(a: Sequence, b: Sequence) -> BetaFunctional:
    return BetaFunctional(a, b)


def atomic_functional(atoms, d: Optional[int] = None) -> AtomicFunctional:
    return AtomicFunctional(atoms, d=d)


def table_functional(d: int, max_degree: int, moments: Dict) -> TableFunctional:
    return TableFunctional(d, max_degree, moments)


def functional_from_json(doc: dict) -> MomentFunctional:
    """Dispatch on the document shape: atom list or moment table."""
    if "atoms" in doc:
        return AtomicFunctional.from_json_dict(doc)
    if "moments" in doc:
        return TableFunctional.from_json_dict(doc)
    raise UnsupportedParameterError(
        "functional document needs an 'atoms' or 'moments' field"
    )
