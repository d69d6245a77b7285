"""Predicates for the P / P0 / P0+ / Q matrix-class hierarchy.

All comparisons are exact rational sign tests; there is no tolerance
parameter anywhere. "Q-matrix" is used in the Hershkowitz-Keller sense
(every sum of equal-order principal minors is positive), which is not
the LCP-literature notion of the same name.

Failing verdicts always come with a concrete witness that re-evaluates
to the violating sign; witnesses are the first violation in (order,
lexicographic) scan order, so reports are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .matrices import (
    IndexSet,
    RationalMatrix,
    _det_rows,
    check_enumeration_dim,
    compound,
    minor,
    render_rational,
)


@dataclass(frozen=True)
class PrincipalMinorWitness:
    """A principal minor whose sign violates the class under test."""

    index_set: IndexSet
    value: Fraction

    def reverify(self, matrix: RationalMatrix) -> bool:
        return minor(matrix, self.index_set, self.index_set) == self.value

    def to_dict(self) -> dict:
        return {
            "kind": "principal_minor",
            "index_set": list(self.index_set.members),
            "value": render_rational(self.value),
        }

    def describe(self) -> str:
        return f"principal minor at {self.index_set} is {self.value}"


@dataclass(frozen=True)
class OrderGapWitness:
    """An order with no strictly positive principal minor (P0+ failure)."""

    order: int

    def to_dict(self) -> dict:
        return {"kind": "order_gap", "order": self.order}

    def describe(self) -> str:
        return f"no positive principal minor of order {self.order}"


@dataclass(frozen=True)
class MinorSumWitness:
    """A non-positive sum of equal-order principal minors (Q failure)."""

    order: int
    value: Fraction

    def to_dict(self) -> dict:
        return {"kind": "minor_sum", "order": self.order, "value": render_rational(self.value)}

    def describe(self) -> str:
        return f"sum of order-{self.order} principal minors is {self.value}"


@dataclass(frozen=True)
class MinorPairWitness:
    """A pair of mirrored minors with positive product (anti-sign-symmetry failure)."""

    row_set: IndexSet
    col_set: IndexSet
    forward: Fraction
    backward: Fraction

    @property
    def product(self) -> Fraction:
        return self.forward * self.backward

    def reverify(self, matrix: RationalMatrix) -> bool:
        return (
            minor(matrix, self.row_set, self.col_set) == self.forward
            and minor(matrix, self.col_set, self.row_set) == self.backward
        )

    def to_dict(self) -> dict:
        return {
            "kind": "minor_pair",
            "row_set": list(self.row_set.members),
            "col_set": list(self.col_set.members),
            "forward": render_rational(self.forward),
            "backward": render_rational(self.backward),
            "product": render_rational(self.product),
        }

    def describe(self) -> str:
        return (
            f"minors at ({self.row_set}, {self.col_set}) are {self.forward} and "
            f"{self.backward}, product {self.product} > 0"
        )


Witness = PrincipalMinorWitness | OrderGapWitness | MinorSumWitness | MinorPairWitness


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Witness | None = None

    def to_dict(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


@dataclass(frozen=True)
class ClassReport:
    """Verdicts for P, P0, P0+, Q, and anti-sign symmetry, with evidence.

    ``minor_sums`` is the full vector c_1..c_n of equal-order principal
    minor sums; ``positive_minor_orders[k-1]`` says whether some order-k
    principal minor is strictly positive.
    """

    n: int
    minor_sums: tuple[Fraction, ...]
    positive_minor_orders: tuple[bool, ...]
    p: Verdict
    p0: Verdict
    p0_plus: Verdict
    q: Verdict
    anti_sign_symmetric: Verdict

    def verdicts(self) -> dict[str, Verdict]:
        return {
            "P": self.p,
            "P0": self.p0,
            "P0+": self.p0_plus,
            "Q": self.q,
            "anti_sign_symmetric": self.anti_sign_symmetric,
        }

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "minor_sums": [render_rational(c) for c in self.minor_sums],
            "positive_minor_orders": list(self.positive_minor_orders),
            "P": self.p.to_dict(),
            "P0": self.p0.to_dict(),
            "P0_plus": self.p0_plus.to_dict(),
            "Q": self.q.to_dict(),
            "anti_sign_symmetric": self.anti_sign_symmetric.to_dict(),
        }


def _principal_minors_of_order(matrix: RationalMatrix, subsets) -> list[Fraction]:
    rows = matrix.rows
    return [_det_rows(tuple(tuple(rows[i][j] for j in s) for i in s)) for s in subsets]


def _sums_by_enumeration(matrix: RationalMatrix) -> tuple[Fraction, ...]:
    n = matrix.n
    sums = []
    for k in range(1, n + 1):
        subsets = combinations(range(n), k)
        sums.append(sum(_principal_minors_of_order(matrix, subsets), Fraction(0)))
    return tuple(sums)


def _sums_by_compound_trace(matrix: RationalMatrix, max_dim: int | None = None) -> tuple[Fraction, ...]:
    return tuple(compound(matrix, k, max_dim=max_dim).trace() for k in range(1, matrix.n + 1))


def principal_minor_sums(matrix: RationalMatrix, max_dim: int | None = None) -> tuple[Fraction, ...]:
    """The vector c_1..c_n, where c_k sums all order-k principal minors.

    Computed twice, by direct subset enumeration and as the trace of each
    compound matrix, and cross-asserted before returning.
    """
    check_enumeration_dim(matrix.n, max_dim)
    direct = _sums_by_enumeration(matrix)
    via_compound = _sums_by_compound_trace(matrix, max_dim=max_dim)
    if direct != via_compound:
        raise ArithmeticError(
            f"internal inconsistency: enumeration gave {direct}, compound traces gave {via_compound}"
        )
    return direct


def classify(matrix: RationalMatrix, max_dim: int | None = None) -> ClassReport:
    """Evaluate all five class predicates in one minor-enumeration pass."""
    n = matrix.n
    check_enumeration_dim(n, max_dim)
    rows = matrix.rows

    p_witness: PrincipalMinorWitness | None = None
    p0_witness: PrincipalMinorWitness | None = None
    q_witness: MinorSumWitness | None = None
    pair_witness: MinorPairWitness | None = None
    sums: list[Fraction] = []
    has_positive: list[bool] = []

    for k in range(1, n + 1):
        subsets = list(combinations(range(n), k))
        minors = _principal_minors_of_order(matrix, subsets)

        c_k = sum(minors, Fraction(0))
        sums.append(c_k)
        has_positive.append(any(m > 0 for m in minors))
        if q_witness is None and c_k <= 0:
            q_witness = MinorSumWitness(k, c_k)

        for s, m in zip(subsets, minors):
            if m <= 0 and p_witness is None:
                p_witness = PrincipalMinorWitness(IndexSet(n, tuple(i + 1 for i in s)), m)
            if m < 0 and p0_witness is None:
                p0_witness = PrincipalMinorWitness(IndexSet(n, tuple(i + 1 for i in s)), m)

        if pair_witness is None:
            for a in range(len(subsets)):
                row_sel = subsets[a]
                for b in range(a + 1, len(subsets)):
                    col_sel = subsets[b]
                    forward = _det_rows(tuple(tuple(rows[i][j] for j in col_sel) for i in row_sel))
                    backward = _det_rows(tuple(tuple(rows[i][j] for j in row_sel) for i in col_sel))
                    if forward * backward > 0:
                        pair_witness = MinorPairWitness(
                            IndexSet(n, tuple(i + 1 for i in row_sel)),
                            IndexSet(n, tuple(i + 1 for i in col_sel)),
                            forward,
                            backward,
                        )
                        break
                if pair_witness is not None:
                    break

    p0_verdict = Verdict(p0_witness is None, p0_witness)
    if not p0_verdict.holds:
        p0_plus = Verdict(False, p0_witness)
    elif all(has_positive):
        p0_plus = Verdict(True)
    else:
        p0_plus = Verdict(False, OrderGapWitness(has_positive.index(False) + 1))

    return ClassReport(
        n=n,
        minor_sums=tuple(sums),
        positive_minor_orders=tuple(has_positive),
        p=Verdict(p_witness is None, p_witness),
        p0=p0_verdict,
        p0_plus=p0_plus,
        q=Verdict(q_witness is None, q_witness),
        anti_sign_symmetric=Verdict(pair_witness is None, pair_witness),
    )


def is_anti_sign_symmetric(matrix: RationalMatrix, max_dim: int | None = None) -> Verdict:
    """Check minor(a|b) * minor(b|a) <= 0 for all distinct equal-size a, b.

    The condition is only required for distinct index sets; a principal
    minor paired with itself is never tested.
    """
    n = matrix.n
    check_enumeration_dim(n, max_dim)
    rows = matrix.rows
    for k in range(1, n + 1):
        subsets = list(combinations(range(n), k))
        for a in range(len(subsets)):
            row_sel = subsets[a]
            for b in range(a + 1, len(subsets)):
                col_sel = subsets[b]
                forward = _det_rows(tuple(tuple(rows[i][j] for j in col_sel) for i in row_sel))
                backward = _det_rows(tuple(tuple(rows[i][j] for j in row_sel) for i in col_sel))
                if forward * backward > 0:
                    witness = MinorPairWitness(
                        IndexSet(n, tuple(i + 1 for i in row_sel)),
                        IndexSet(n, tuple(i + 1 for i in col_sel)),
                        forward,
                        backward,
                    )
                    return Verdict(False, witness)
    return Verdict(True)
