"""Sparse multivariate polynomials over the rationals.

A polynomial in the scaling variables d1..dn is a map from exponent
tuples to nonzero Fraction coefficients. Instances are treated as
immutable; every operation returns a new polynomial.

The canonical text form lists terms in graded-lexicographic order,
highest first, and always spells the coefficient:
``1*d1^2 - 4*d1*d2 + 25*d2^2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


def _coerce_coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


def _canonical_key(exponents: tuple[int, ...]) -> tuple:
    return (sum(exponents), exponents)


class SparsePolynomial:
    """Polynomial with Fraction coefficients in a fixed number of variables."""

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Mapping[tuple[int, ...], Fraction | int] | None = None):
        if n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        self.n_vars = n_vars
        cleaned: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exponents, coeff in terms.items():
                exps = tuple(int(e) for e in exponents)
                if len(exps) != n_vars:
                    raise ValueError(f"exponent tuple {exps} does not have {n_vars} entries")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                value = _coerce_coeff(coeff)
                if value:
                    cleaned[exps] = value
        self._terms = cleaned

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n_vars: int) -> "SparsePolynomial":
        return cls(n_vars)

    @classmethod
    def constant(cls, n_vars: int, value) -> "SparsePolynomial":
        return cls(n_vars, {tuple([0] * n_vars): value})

    @classmethod
    def variable(cls, n_vars: int, index: int) -> "SparsePolynomial":
        """The variable d<index>, 1-based."""
        if not 1 <= index <= n_vars:
            raise ValueError(f"variable index must be in 1..{n_vars}, got {index}")
        exps = [0] * n_vars
        exps[index - 1] = 1
        return cls(n_vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, n_vars: int, exponents: Sequence[int], coefficient) -> "SparsePolynomial":
        return cls(n_vars, {tuple(exponents): coefficient})

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        """Terms in canonical (graded-lexicographic, highest-first) order."""
        return tuple(sorted(self._terms.items(), key=lambda kv: _canonical_key(kv[0]), reverse=True))

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def total_degree(self) -> int:
        """Highest total degree among the terms; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """Whether all terms share one total degree (vacuously true when zero)."""
        degrees = {sum(e) for e in self._terms}
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees == {degree}

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.n_vars:
            raise ValueError(f"expected {self.n_vars} coordinates, got {len(point)}")
        coords = [_coerce_coeff(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            value = coeff
            for x, e in zip(coords, exps):
                if e:
                    value *= x ** e
            total += value
        return total

    # -- arithmetic ----------------------------------------------------------

    def _require_same_vars(self, other: "SparsePolynomial") -> None:
        if self.n_vars != other.n_vars:
            raise ValueError(f"variable count mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePolynomial.constant(self.n_vars, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._require_same_vars(other)
        merged = dict(self._terms)
        for exps, coeff in other._terms.items():
            merged[exps] = merged.get(exps, Fraction(0)) + coeff
        return SparsePolynomial(self.n_vars, merged)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SparsePolynomial) else -_coerce_coeff(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = _coerce_coeff(other)
            return SparsePolynomial(self.n_vars, {e: c * factor for e, c in self._terms.items()})
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._require_same_vars(other)
        product: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return SparsePolynomial(self.n_vars, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = SparsePolynomial.constant(self.n_vars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    # -- rendering ------------------------------------------------------------

    def _render(self, natural: bool, var_prefix: str) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.terms():
            mono = "*".join(
                f"{var_prefix}{i}" if p == 1 else f"{var_prefix}{i}^{p}"
                for i, p in enumerate(exps, start=1)
                if p
            )
            magnitude = str(abs(coeff))
            if not mono:
                body = magnitude
            elif natural and abs(coeff) == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    def to_text(self, var_prefix: str = "d") -> str:
        """Canonical text form with explicit coefficients."""
        return self._render(natural=False, var_prefix=var_prefix)

    def to_natural_text(self, var_prefix: str = "d") -> str:
        """Human form that omits unit coefficients, e.g. ``d1 - 2*d2``."""
        return self._render(natural=True, var_prefix=var_prefix)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"<SparsePolynomial {self.to_text()}>"

    # -- structured form -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [
                {"exponents": list(exps), "coefficient": str(coeff)}
                for exps, coeff in self.terms()
            ],
        }

    @classmethod
    def from_dict(cls, document: dict) -> "SparsePolynomial":
        terms = {
            tuple(item["exponents"]): Fraction(item["coefficient"])
            for item in document["terms"]
        }
        return cls(document["n_vars"], terms)
