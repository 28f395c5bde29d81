"""Exact products of Gamma values, powers of two and powers of pi.

Total masses of the classical weights (and the norms they induce) are
numbers of the form

    rational * 2^(p/q) * pi^(r/2) * prod Gamma(z_k)^(m_k)

with rational z_k.  GammaProduct stores this structurally and keeps a
canonical form so equality is decidable:

* Gamma arguments are reduced with Gamma(z+1) = z Gamma(z) until the
  argument lies in (0, 1]; Gamma(1) disappears and Gamma(1/2) is folded
  into pi^(1/2).
* the integer part of the exponent of 2 is folded into the rational.

Canonical forms built from these operations are equal exactly when the
numbers agree; no reflection/duplication identities are applied, and none
are needed because all comparisons divide like cores by like cores.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Mapping

from .errors import UnsupportedParameterError


def _fr(value) -> Fraction:
    if isinstance(value, float):
        raise UnsupportedParameterError(
            f"irrational/float value {value!r}; supply an exact rational"
        )
    return Fraction(value)


class GammaProduct:
    """Immutable canonical product rational * 2^a * pi^b * prod Gamma(core)^m."""

    __slots__ = ("rational", "two_pow", "pi_pow", "gammas")

    def __init__(self, rational=1, two_pow=0, pi_pow=0, gammas: Mapping | None = None):
        rat = _fr(rational)
        two = _fr(two_pow)
        pi = _fr(pi_pow)
        cores: Dict[Fraction, int] = {}
        if gammas:
            for arg, mult in gammas.items():
                arg = _fr(arg)
                mult = int(mult)
                if mult == 0:
                    continue
                if arg <= 0:
                    raise UnsupportedParameterError(
                        f"Gamma argument {arg} is not positive"
                    )
                # reduce with Gamma(z+1) = z Gamma(z) until the core is in (0, 1]
                while arg > 1:
                    arg -= 1
                    if mult > 0:
                        for _ in range(mult):
                            rat *= arg
                    else:
                        for _ in range(-mult):
                            rat /= arg
                if arg == 1:
                    continue
                if arg == Fraction(1, 2):
                    pi += Fraction(mult, 2)
                    continue
                cores[arg] = cores.get(arg, 0) + mult
                if cores[arg] == 0:
                    del cores[arg]
        if rat == 0:
            two, pi, cores = Fraction(0), Fraction(0), {}
        else:
            shift = math.floor(two)
            if shift:
                rat *= Fraction(2) ** shift
                two -= shift
        object.__setattr__(self, "rational", rat)
        object.__setattr__(self, "two_pow", two)
        object.__setattr__(self, "pi_pow", pi)
        object.__setattr__(self, "gammas", tuple(sorted(cores.items())))

    def __setattr__(self, name, value):
        raise AttributeError("GammaProduct is immutable")

    # --------------------------------------------------------------- factory
    @classmethod
    def from_rational(cls, value) -> "GammaProduct":
        return cls(rational=value)

    @classmethod
    def gamma(cls, arg) -> "GammaProduct":
        return cls(gammas={_fr(arg): 1})

    @classmethod
    def pi_power(cls, exponent) -> "GammaProduct":
        return cls(pi_pow=exponent)

    @classmethod
    def two_power(cls, exponent) -> "GammaProduct":
        return cls(two_pow=exponent)

    # ------------------------------------------------------------ arithmetic
    def _combine(self, other: "GammaProduct", sign: int) -> "GammaProduct":
        if not isinstance(other, GammaProduct):
            other = GammaProduct.from_rational(other)
        if sign < 0 and other.rational == 0:
            raise ZeroDivisionError("division by zero GammaProduct")
        rat = self.rational * other.rational if sign > 0 else self.rational / other.rational
        cores = dict(self.gammas)
        for arg, mult in other.gammas:
            cores[arg] = cores.get(arg, 0) + sign * mult
        return GammaProduct(
            rational=rat,
            two_pow=self.two_pow + sign * other.two_pow,
            pi_pow=self.pi_pow + sign * other.pi_pow,
            gammas=cores,
        )

    def __mul__(self, other) -> "GammaProduct":
        return self._combine(other if isinstance(other, GammaProduct) else GammaProduct.from_rational(other), +1)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GammaProduct":
        return self._combine(other if isinstance(other, GammaProduct) else GammaProduct.from_rational(other), -1)

    def __rtruediv__(self, other) -> "GammaProduct":
        return GammaProduct.from_rational(other) / self

    def __pow__(self, exponent: int) -> "GammaProduct":
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        out = GammaProduct.from_rational(1)
        base = self
        if exponent < 0:
            base = GammaProduct.from_rational(1) / self
            exponent = -exponent
        for _ in range(exponent):
            out = out * base
        return out

    # ------------------------------------------------------------ inspection
    def is_rational(self) -> bool:
        return self.two_pow == 0 and self.pi_pow == 0 and not self.gammas

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.rational

    def rational_part(self) -> Fraction:
        return self.rational

    def irrational_part(self) -> "GammaProduct":
        """The factor left after dividing out the rational part."""
        if self.rational == 0:
            return GammaProduct.from_rational(1)
        return GammaProduct(
            rational=1, two_pow=self.two_pow, pi_pow=self.pi_pow, gammas=dict(self.gammas)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaProduct):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and self.rational == other
            return NotImplemented
        return (
            self.rational == other.rational
            and self.two_pow == other.two_pow
            and self.pi_pow == other.pi_pow
            and self.gammas == other.gammas
        )

    def __hash__(self):
        return hash((self.rational, self.two_pow, self.pi_pow, self.gammas))

    def __float__(self) -> float:
        out = float(self.rational)
        out *= 2.0 ** float(self.two_pow)
        out *= math.pi ** float(self.pi_pow)
        for arg, mult in self.gammas:
            out *= math.gamma(float(arg)) ** mult
        return out

    # ---------------------------------------------------------- serialization
    def compact_str(self) -> str:
        """Short human form, e.g. "pi^(1)" or "1/2*2^(1/2)*gamma(1/4)^2"."""
        pieces = []
        if self.rational != 1 or (
            self.two_pow == 0 and self.pi_pow == 0 and not self.gammas
        ):
            pieces.append(str(self.rational))
        if self.two_pow != 0:
            pieces.append(f"2^({self.two_pow})")
        if self.pi_pow != 0:
            pieces.append(f"pi^({self.pi_pow})")
        for arg, mult in self.gammas:
            pieces.append(f"gamma({arg})" + (f"^{mult}" if mult != 1 else ""))
        return "*".join(pieces)

    def __repr__(self) -> str:
        return f"GammaProduct({self.compact_str()})"

    def to_json_dict(self) -> dict:
        return {
            "rational": str(self.rational),
            "two_pow": str(self.two_pow),
            "pi_pow": str(self.pi_pow),
            "gamma": [[str(arg), mult] for arg, mult in self.gammas],
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "GammaProduct":
        return cls(
            rational=Fraction(doc["rational"]),
            two_pow=Fraction(doc.get("two_pow", 0)),
            pi_pow=Fraction(doc.get("pi_pow", 0)),
            gammas={Fraction(arg): mult for arg, mult in doc.get("gamma", [])},
        )


ONE = GammaProduct.from_rational(1)
