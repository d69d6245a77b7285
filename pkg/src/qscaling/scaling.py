"""Analysis of (D*A)^2 over all positive diagonal scalings D.

For an n x n rational matrix A and diagonal indeterminates d1..dn, the
order-j principal-minor sums of (D*A)^2 are polynomials p_j(d1..dn),
homogeneous of degree 2j. "(D*A)^2 is a Q-matrix for every positive D"
is exactly "every p_j is positive on the open positive orthant".

That positivity question is handled honestly: cheap certificates prove
it where they apply (nonnegative coefficients; the two-variable
homogeneous quadratic, which is decided completely), exact sampling
refutes it, and anything else is reported inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product

from .matrices import (
    DimensionGuardError,
    IndexSet,
    RationalMatrix,
    _coerce_rational,
    _det_rows,
    check_enumeration_dim,
    index_sets,
    minor,
    render_rational,
)
from .polynomial import SparsePolynomial

#: symbolic expansion refuses dimensions above this bound by default; the
#: polynomials p_j carry up to C(n,j)^2 monomials of degree 2j.
DEFAULT_SYMBOLIC_GUARD = 6


def check_symbolic_dim(n: int, max_dim: int | None = None) -> None:
    limit = DEFAULT_SYMBOLIC_GUARD if max_dim is None else max_dim
    if n > limit:
        raise DimensionGuardError(
            f"dimension {n} exceeds the symbolic-expansion bound {limit}; "
            "pass a larger max_dim to override"
        )


@dataclass(frozen=True)
class DiagonalScaling:
    """A strictly positive diagonal matrix, kept as its diagonal vector."""

    diagonal: tuple[Fraction, ...]

    def __post_init__(self):
        diag = tuple(_coerce_rational(d) for d in self.diagonal)
        if not diag:
            raise ValueError("a diagonal scaling needs at least one entry")
        if any(d <= 0 for d in diag):
            raise ValueError(f"diagonal entries must be strictly positive, got {diag}")
        object.__setattr__(self, "diagonal", diag)

    @property
    def n(self) -> int:
        return len(self.diagonal)

    def as_matrix(self) -> RationalMatrix:
        return RationalMatrix.diagonal(self.diagonal)

    def apply_left(self, matrix: RationalMatrix) -> RationalMatrix:
        """D*A, i.e. row i of A scaled by the i-th diagonal entry."""
        return matrix.scale_rows(self.diagonal)

    def to_dict(self) -> dict:
        return {"diagonal": [render_rational(d) for d in self.diagonal]}


@dataclass(frozen=True)
class EpsilonScaling:
    """The degenerate-direction scaling: 1 on ``alpha``, epsilon elsewhere."""

    n: int
    alpha: IndexSet
    epsilon: Fraction

    def __post_init__(self):
        eps = _coerce_rational(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if eps <= 0:
            raise ValueError(f"epsilon must be strictly positive, got {eps}")
        if self.alpha.members and self.alpha.members[-1] > self.n:
            raise ValueError(f"alpha {self.alpha} does not fit in dimension {self.n}")

    def to_scaling(self) -> DiagonalScaling:
        inside = set(self.alpha.members)
        one = Fraction(1)
        return DiagonalScaling(tuple(one if i in inside else self.epsilon for i in range(1, self.n + 1)))


def d_epsilon(n: int, alpha: IndexSet, epsilon) -> DiagonalScaling:
    """Diagonal scaling with entry 1 on ``alpha`` and ``epsilon`` outside it."""
    return EpsilonScaling(n, alpha, epsilon).to_scaling()


# ---------------------------------------------------------------------------
# Symbolic invariants

PolyMatrix = tuple[tuple[SparsePolynomial, ...], ...]


def scaled_matrix_symbolic(matrix: RationalMatrix) -> PolyMatrix:
    """D*A with the diagonal of D left as indeterminates d1..dn."""
    n = matrix.n
    out = []
    for i, row in enumerate(matrix.rows):
        exps = [0] * n
        exps[i] = 1
        out.append(tuple(SparsePolynomial(n, {tuple(exps): a}) for a in row))
    return tuple(out)


def poly_mat_mul(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    cols = tuple(zip(*right))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), SparsePolynomial.zero(row[0].n_vars)) for col in cols)
        for row in left
    )


def scaled_square_symbolic(matrix: RationalMatrix) -> PolyMatrix:
    """(D*A)^2 entrywise, as polynomials in d1..dn."""
    scaled = scaled_matrix_symbolic(matrix)
    return poly_mat_mul(scaled, scaled)


def _poly_det(entries: list[tuple[SparsePolynomial, ...]]) -> SparsePolynomial:
    """Division-free determinant via Laplace expansion over column masks."""
    k = len(entries)
    n_vars = entries[0][0].n_vars
    table: dict[int, SparsePolynomial] = {0: SparsePolynomial.constant(n_vars, 1)}
    for r in range(k):
        row = entries[r]
        new_table: dict[int, SparsePolynomial] = {}
        for mask, sub_det in table.items():
            for j in range(k):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = row[j]
                if entry.is_zero:
                    continue
                position = (mask & (bit - 1)).bit_count()
                signed = entry * sub_det if (r + position) % 2 == 0 else -(entry * sub_det)
                key = mask | bit
                acc = new_table.get(key)
                new_table[key] = signed if acc is None else acc + signed
        table = new_table
        if not table:
            return SparsePolynomial.zero(n_vars)
    return table.get((1 << k) - 1, SparsePolynomial.zero(n_vars))


def symbolic_q_invariants(matrix: RationalMatrix, max_dim: int | None = None) -> list[SparsePolynomial]:
    """The polynomials p_1..p_n: p_j sums all order-j principal minors of (D*A)^2."""
    n = matrix.n
    check_symbolic_dim(n, max_dim)
    squared = scaled_square_symbolic(matrix)
    invariants = []
    for j in range(1, n + 1):
        total = SparsePolynomial.zero(n)
        for selection in combinations(range(n), j):
            sub = [tuple(squared[i][jj] for jj in selection) for i in selection]
            total = total + _poly_det(sub)
        invariants.append(total)
    return invariants


# ---------------------------------------------------------------------------
# Positivity certificates on the open positive orthant


class CertificateVerdict(Enum):
    POSITIVE_ON_ORTHANT = "positive_on_orthant"
    NOT_POSITIVE = "not_positive"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CoefficientEvidence:
    """Every coefficient is nonnegative and the listed term is positive."""

    positive_exponents: tuple[int, ...]
    positive_coefficient: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": "nonnegative_coefficients",
            "positive_exponents": list(self.positive_exponents),
            "positive_coefficient": render_rational(self.positive_coefficient),
        }


@dataclass(frozen=True)
class QuadraticEvidence:
    """a*x^2 + b*x*y + c*y^2 with a, c > 0 and b^2 < 4ac, plus its completion.

    ``completion`` is a list of (multiplier, linear form) pairs with
    positive multipliers whose weighted squares re-expand to the
    polynomial exactly.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    completion: tuple[tuple[Fraction, SparsePolynomial], ...]

    @property
    def b_squared(self) -> Fraction:
        return self.b * self.b

    @property
    def four_ac(self) -> Fraction:
        return 4 * self.a * self.c

    def expanded(self) -> SparsePolynomial:
        total = SparsePolynomial.zero(2)
        for multiplier, form in self.completion:
            total = total + form * form * multiplier
        return total

    def completion_text(self) -> str:
        parts = []
        for multiplier, form in self.completion:
            terms = form.terms()
            body = form.to_natural_text()
            if not (len(terms) == 1 and abs(terms[0][1]) == 1):
                body = f"({body})"
            body += "^2"
            if multiplier != 1:
                body = f"{multiplier}*{body}"
            parts.append(body)
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {
            "kind": "two_variable_quadratic",
            "a": render_rational(self.a),
            "b": render_rational(self.b),
            "c": render_rational(self.c),
            "b_squared": render_rational(self.b_squared),
            "four_ac": render_rational(self.four_ac),
            "completion": [
                {"multiplier": render_rational(m), "form": form.to_text()}
                for m, form in self.completion
            ],
            "completion_text": self.completion_text(),
        }


@dataclass(frozen=True)
class WitnessEvidence:
    """A strictly positive point where the polynomial is not positive."""

    point: tuple[Fraction, ...]
    value: Fraction

    def to_dict(self) -> dict:
        return {
            "kind": "witness_point",
            "point": [render_rational(x) for x in self.point],
            "value": render_rational(self.value),
        }


Evidence = CoefficientEvidence | QuadraticEvidence | WitnessEvidence


@dataclass(frozen=True)
class Certificate:
    """Positivity verdict for one polynomial, with machine-checkable evidence."""

    polynomial: SparsePolynomial
    verdict: CertificateVerdict
    evidence: Evidence | None

    def verify(self) -> bool:
        """Re-check the evidence against the stored polynomial from scratch."""
        p = self.polynomial
        if self.verdict is CertificateVerdict.INCONCLUSIVE:
            return self.evidence is None
        if self.verdict is CertificateVerdict.NOT_POSITIVE:
            if not isinstance(self.evidence, WitnessEvidence):
                return False
            e = self.evidence
            return (
                len(e.point) == p.n_vars
                and all(x > 0 for x in e.point)
                and p.evaluate(e.point) == e.value
                and e.value <= 0
            )
        if isinstance(self.evidence, CoefficientEvidence):
            if p.is_zero:
                return False
            if any(c < 0 for _, c in p.terms()):
                return False
            listed = p.coefficient(self.evidence.positive_exponents)
            return listed == self.evidence.positive_coefficient and listed > 0
        if isinstance(self.evidence, QuadraticEvidence):
            e = self.evidence
            if p.n_vars != 2 or not p.is_homogeneous(2):
                return False
            if (e.a, e.b, e.c) != (p.coefficient((2, 0)), p.coefficient((1, 1)), p.coefficient((0, 2))):
                return False
            if not (e.a > 0 and e.c > 0 and e.b_squared < e.four_ac):
                return False
            if any(m <= 0 for m, _ in e.completion):
                return False
            return e.expanded() == p
        return False

    def to_dict(self) -> dict:
        return {
            "polynomial": self.polynomial.to_text(),
            "verdict": self.verdict.value,
            "evidence": None if self.evidence is None else self.evidence.to_dict(),
        }


def _as_two_var_quadratic(p: SparsePolynomial) -> tuple[Fraction, Fraction, Fraction] | None:
    if p.n_vars != 2 or p.is_zero or not p.is_homogeneous(2):
        return None
    return p.coefficient((2, 0)), p.coefficient((1, 1)), p.coefficient((0, 2))


def _reduce_direction(point: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Scale a positive direction to coprime integer coordinates."""
    from math import gcd, lcm

    denominators = lcm(*(x.denominator for x in point))
    integers = [x.numerator * (denominators // x.denominator) for x in point]
    divisor = gcd(*integers)
    return tuple(Fraction(i // divisor) for i in integers)


def _quadratic_witness(p: SparsePolynomial, a: Fraction, b: Fraction, c: Fraction) -> WitnessEvidence:
    """Exact non-positivity witness for a failing two-variable quadratic."""
    one = Fraction(1)
    if a < 0 or c < 0:
        # walk toward the axis where the negative square term dominates
        t = one
        for _ in range(512):
            point = (one, t) if a < 0 else (t, one)
            value = p.evaluate(point)
            if value <= 0:
                return WitnessEvidence(point, value)
            t /= 2
        raise AssertionError("axis walk failed to expose a negative square coefficient")
    if a == 0:
        # p = b*x*y + c*y^2 with b < 0: push x past c/(-b)
        x = c / (-b) + 1
        return WitnessEvidence((x, one), p.evaluate((x, one)))
    if c == 0:
        y = a / (-b) + 1
        return WitnessEvidence((one, y), p.evaluate((one, y)))
    # a, c > 0, b < 0, b^2 >= 4ac: the minimum direction (-b, 2a) is positive,
    # and scaling it is free because p is homogeneous
    point = _reduce_direction((-b, 2 * a))
    return WitnessEvidence(point, p.evaluate(point))


def _grid_points(n_vars: int, budget: int):
    """Deterministic positive sample points: all-ones, epsilon patterns, a value grid."""
    one = Fraction(1)
    yield (one,) * n_vars
    emitted = 1
    if n_vars <= 10:
        epsilons = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))
        for k in range(1, n_vars):
            for inside in combinations(range(n_vars), k):
                chosen = set(inside)
                for eps in epsilons:
                    if emitted >= budget:
                        return
                    yield tuple(one if i in chosen else eps for i in range(n_vars))
                    emitted += 1
    values = (
        Fraction(1),
        Fraction(1, 2),
        Fraction(2),
        Fraction(1, 10),
        Fraction(10),
        Fraction(1, 100),
        Fraction(100),
    )
    for point in product(values, repeat=n_vars):
        if emitted >= budget:
            return
        yield point
        emitted += 1


def certify_positive_on_orthant(p: SparsePolynomial, grid_budget: int = 2000) -> Certificate:
    """Decide positivity of ``p`` on the open positive orthant where possible.

    Strategies, in fixed order: (a) all coefficients nonnegative with one
    positive; (b) the homogeneous two-variable quadratic, decided
    completely, with a weighted square completion as evidence when it
    certifies and an exact witness when it refutes; (c) a deterministic
    positive sample grid hunting for a point with p <= 0. Anything left
    over is INCONCLUSIVE, which is a legitimate outcome, not an error.
    """
    if p.is_zero:
        point = (Fraction(1),) * p.n_vars
        return Certificate(p, CertificateVerdict.NOT_POSITIVE, WitnessEvidence(point, Fraction(0)))

    terms = p.terms()
    if all(c > 0 for _, c in terms):
        exps, coeff = terms[0]
        return Certificate(
            p, CertificateVerdict.POSITIVE_ON_ORTHANT, CoefficientEvidence(exps, coeff)
        )

    quadratic = _as_two_var_quadratic(p)
    if quadratic is not None:
        a, b, c = quadratic
        if a > 0 and c > 0 and (b >= 0 or b * b < 4 * a * c):
            if b >= 0:
                # nonnegative coefficients; handled above, kept for completeness
                positive = next((e, co) for e, co in terms if co > 0)
                return Certificate(
                    p, CertificateVerdict.POSITIVE_ON_ORTHANT, CoefficientEvidence(*positive)
                )
            half = b / (2 * a)
            first_form = SparsePolynomial(2, {(1, 0): Fraction(1), (0, 1): half})
            second_form = SparsePolynomial(2, {(0, 1): Fraction(1)})
            completion = ((a, first_form), ((4 * a * c - b * b) / (4 * a), second_form))
            return Certificate(
                p, CertificateVerdict.POSITIVE_ON_ORTHANT, QuadraticEvidence(a, b, c, completion)
            )
        witness = _quadratic_witness(p, a, b, c)
        return Certificate(p, CertificateVerdict.NOT_POSITIVE, witness)

    for point in _grid_points(p.n_vars, grid_budget):
        value = p.evaluate(point)
        if value <= 0:
            return Certificate(p, CertificateVerdict.NOT_POSITIVE, WitnessEvidence(point, value))

    return Certificate(p, CertificateVerdict.INCONCLUSIVE, None)


# ---------------------------------------------------------------------------
# Sampling refutation


def _is_q_matrix_rows(rows, subset_lists) -> bool:
    for subsets in subset_lists:
        total = Fraction(0)
        for s in subsets:
            total += _det_rows(tuple(tuple(rows[i][j] for j in s) for i in s))
        if total <= 0:
            return False
    return True


def sample_refute(
    matrix: RationalMatrix,
    budget: int = 10_000,
    seed: int = 0,
    exponent_range: int = 3,
    max_dim: int | None = None,
) -> DiagonalScaling | None:
    """Hunt for a positive diagonal D such that (D*A)^2 is not a Q-matrix.

    Draws ``budget`` scalings deterministically from ``seed``. Each
    diagonal entry is an exact rational m * 10^e with the mantissa m
    drawn uniformly from {8/8, 9/8, ..., 16/8} and the exponent e
    uniformly from [-exponent_range, exponent_range]; draws are consumed
    mantissa-then-exponent, coordinate by coordinate, which is part of
    the determinism contract. Returns the first witness found, or None.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if exponent_range < 0:
        raise ValueError("exponent_range must be >= 0")
    n = matrix.n
    check_enumeration_dim(n, max_dim)
    rng = random.Random(seed)
    powers = {e: Fraction(10) ** e for e in range(-exponent_range, exponent_range + 1)}
    subset_lists = [list(combinations(range(n), k)) for k in range(1, n + 1)]
    base_rows = matrix.rows
    for _ in range(budget):
        diag = tuple(
            Fraction(rng.randint(8, 16), 8) * powers[rng.randint(-exponent_range, exponent_range)]
            for _ in range(n)
        )
        scaled = [tuple(d * a for a in row) for d, row in zip(diag, base_rows)]
        cols = tuple(zip(*scaled))
        squared = [
            tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in scaled
        ]
        if not _is_q_matrix_rows(squared, subset_lists):
            return DiagonalScaling(diag)
    return None


# ---------------------------------------------------------------------------
# The product-minor expansion behind the flawed truncation argument


@dataclass(frozen=True)
class CauchyBinetExpansion:
    """Expansion of a principal minor of A^2 into products of minors of A.

    minor(A^2, alpha, alpha) = sum over |beta|=|alpha| of
    minor(A, alpha, beta) * minor(A, beta, alpha). The beta = alpha term
    is the square of the principal minor of A, which is what one gets
    from squaring the row-truncated matrix instead of truncating the
    square; the remaining terms are exactly what that shortcut drops.
    """

    alpha: IndexSet
    terms: tuple[tuple[IndexSet, Fraction], ...]

    @property
    def total(self) -> Fraction:
        return sum((t for _, t in self.terms), Fraction(0))

    @property
    def principal_term(self) -> Fraction:
        for beta, term in self.terms:
            if beta.members == self.alpha.members:
                return term
        raise LookupError("expansion is missing its beta = alpha term")

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha.members),
            "terms": [
                {"beta": list(beta.members), "value": render_rational(term)}
                for beta, term in self.terms
            ],
            "total": render_rational(self.total),
            "principal_term": render_rational(self.principal_term),
        }


def cauchy_binet_terms(
    matrix: RationalMatrix, alpha: IndexSet, max_dim: int | None = None
) -> CauchyBinetExpansion:
    """All products minor(A, alpha, beta) * minor(A, beta, alpha) over |beta| = |alpha|."""
    n = matrix.n
    if alpha.members and alpha.members[-1] > n:
        raise ValueError(f"index {alpha.members[-1]} out of range for a {n}x{n} matrix")
    check_enumeration_dim(n, max_dim)
    terms = []
    for beta in index_sets(n, len(alpha)):
        term = minor(matrix, alpha, beta) * minor(matrix, beta, alpha)
        terms.append((beta, term))
    return CauchyBinetExpansion(alpha=alpha, terms=tuple(terms))
