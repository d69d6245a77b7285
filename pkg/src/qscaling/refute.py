"""Testing the implication "(D*A)^2 always Q" => "A^2 is P0+".

The hypothesis side quantifies over every positive diagonal D, so it is
settled by certificates when possible and probed by sampling otherwise;
the conclusion side is a plain classification of A^2. A matrix whose
hypothesis holds while A^2 fails P0+ refutes the implication. Three
published claims are tracked: the general statement, its restriction to
2x2 matrices, and its restriction to anti-sign-symmetric matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .matrices import RationalMatrix, determinant, mat_mul, matrix_to_dict
from .matrix_classes import ClassReport, Verdict, classify, is_anti_sign_symmetric
from .polynomial import SparsePolynomial
from .scaling import (
    Certificate,
    CertificateVerdict,
    DiagonalScaling,
    WitnessEvidence,
    certify_positive_on_orthant,
    sample_refute,
    symbolic_q_invariants,
)


class Claim(Enum):
    """The implication variants a counterexample may refute."""

    GENERAL = "general"
    TWO_BY_TWO = "two_by_two"
    ANTI_SIGN_SYMMETRIC = "anti_sign_symmetric"


class VerdictKind(Enum):
    COUNTEREXAMPLE = "counterexample"
    CONSISTENT = "consistent"
    UNDETERMINED = "undetermined"


class EvidenceGrade(Enum):
    #: every invariant polynomial carries a positivity certificate
    CERTIFIED = "certified"
    #: the hypothesis rests on finite sampling only; evidence, not proof
    SAMPLING_ONLY = "sampling_only"


@dataclass(frozen=True)
class CertifiedForAll:
    certificates: tuple[Certificate, ...]

    def to_dict(self) -> dict:
        return {"status": "certified_for_all"}


@dataclass(frozen=True)
class NoCounterexampleFound:
    budget: int
    certificates: tuple[Certificate, ...]

    def to_dict(self) -> dict:
        return {"status": "no_counterexample_found", "budget": self.budget}


@dataclass(frozen=True)
class RefutedAt:
    scaling: DiagonalScaling
    certificates: tuple[Certificate, ...]

    def to_dict(self) -> dict:
        return {"status": "refuted", "scaling": self.scaling.to_dict()}


HypothesisStatus = CertifiedForAll | NoCounterexampleFound | RefutedAt


@dataclass(frozen=True)
class RefutationVerdict:
    kind: VerdictKind
    refuted_claims: tuple[Claim, ...] = ()
    evidence_grade: EvidenceGrade | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.refuted_claims:
            out["refuted_claims"] = [c.value for c in self.refuted_claims]
        if self.evidence_grade is not None:
            out["evidence_grade"] = self.evidence_grade.value
        return out


@dataclass(frozen=True)
class RefutationReport:
    """Everything verify_refutation derives for one matrix."""

    matrix: RationalMatrix
    squared: RationalMatrix
    polynomials: tuple[SparsePolynomial, ...]
    hypothesis: HypothesisStatus
    conclusion: ClassReport
    anti_sign: Verdict
    verdict: RefutationVerdict

    @property
    def certificates(self) -> tuple[Certificate, ...]:
        return self.hypothesis.certificates

    def to_dict(self) -> dict:
        return {
            "matrix": matrix_to_dict(self.matrix),
            "squared": matrix_to_dict(self.squared),
            "invariants": [
                {"order": j, "polynomial": p.to_text(), "certificate": cert.to_dict()}
                for j, (p, cert) in enumerate(zip(self.polynomials, self.certificates), start=1)
            ],
            "hypothesis": self.hypothesis.to_dict(),
            "conclusion": self.conclusion.to_dict(),
            "anti_sign_symmetric": self.anti_sign.to_dict(),
            "two_by_two": self.matrix.n == 2,
            "verdict": self.verdict.to_dict(),
        }


def derive_verdict(
    hypothesis: HypothesisStatus, conclusion: ClassReport, n: int, anti_sign: Verdict
) -> RefutationVerdict:
    """Combine the two sides into a verdict; kept separate so reports can be re-derived."""
    if isinstance(hypothesis, RefutedAt):
        # the implication is vacuous for this matrix
        return RefutationVerdict(VerdictKind.CONSISTENT)
    conclusion_holds = conclusion.p0_plus.holds
    if isinstance(hypothesis, CertifiedForAll):
        if conclusion_holds:
            return RefutationVerdict(VerdictKind.CONSISTENT)
        grade = EvidenceGrade.CERTIFIED
    else:
        if conclusion_holds:
            # hypothesis unsettled and nothing refuted either way
            return RefutationVerdict(VerdictKind.UNDETERMINED)
        grade = EvidenceGrade.SAMPLING_ONLY
    claims = [Claim.GENERAL]
    if n == 2:
        claims.append(Claim.TWO_BY_TWO)
    if anti_sign.holds:
        claims.append(Claim.ANTI_SIGN_SYMMETRIC)
    return RefutationVerdict(VerdictKind.COUNTEREXAMPLE, tuple(claims), grade)


def evaluate_hypothesis(
    matrix: RationalMatrix,
    budget: int = 10_000,
    seed: int = 0,
    exponent_range: int = 3,
    max_dim: int | None = None,
    symbolic_max_dim: int | None = None,
) -> tuple[list[SparsePolynomial], HypothesisStatus]:
    """Certify or refute "(D*A)^2 is a Q-matrix for every positive diagonal D"."""
    polys = symbolic_q_invariants(matrix, max_dim=symbolic_max_dim)
    certs = tuple(certify_positive_on_orthant(p) for p in polys)
    for cert in certs:
        if cert.verdict is CertificateVerdict.NOT_POSITIVE:
            assert isinstance(cert.evidence, WitnessEvidence)
            return list(polys), RefutedAt(DiagonalScaling(cert.evidence.point), certs)
    if all(c.verdict is CertificateVerdict.POSITIVE_ON_ORTHANT for c in certs):
        return list(polys), CertifiedForAll(certs)
    witness = sample_refute(
        matrix, budget=budget, seed=seed, exponent_range=exponent_range, max_dim=max_dim
    )
    if witness is not None:
        return list(polys), RefutedAt(witness, certs)
    return list(polys), NoCounterexampleFound(budget, certs)


def verify_refutation(
    matrix: RationalMatrix,
    budget: int = 10_000,
    seed: int = 0,
    exponent_range: int = 3,
    max_dim: int | None = None,
    symbolic_max_dim: int | None = None,
) -> RefutationReport:
    """Test whether ``matrix`` refutes the implication (see module docstring)."""
    polys, hypothesis = evaluate_hypothesis(
        matrix,
        budget=budget,
        seed=seed,
        exponent_range=exponent_range,
        max_dim=max_dim,
        symbolic_max_dim=symbolic_max_dim,
    )
    squared = mat_mul(matrix, matrix)
    conclusion = classify(squared, max_dim=max_dim)
    anti_sign = is_anti_sign_symmetric(matrix, max_dim=max_dim)
    verdict = derive_verdict(hypothesis, conclusion, matrix.n, anti_sign)
    return RefutationReport(
        matrix=matrix,
        squared=squared,
        polynomials=tuple(polys),
        hypothesis=hypothesis,
        conclusion=conclusion,
        anti_sign=anti_sign,
        verdict=verdict,
    )


_HUNT_MODES = ("all", "nonsingular", "spd")


@dataclass(frozen=True)
class HuntConfig:
    """Deterministic random search for matrices that refute the implication.

    ``entry_range`` bounds the integer entries (for mode "spd" it bounds
    the entries of the factor B in B^T B + I). Candidate draws consume
    the generator row-major, entry by entry; that order is frozen so a
    (seed, count) pair always names the same candidate stream.
    """

    dimension: int
    entry_range: int
    count: int
    budget: int = 10_000
    seed: int = 0
    mode: str = "all"
    exponent_range: int = 3

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.entry_range < 1:
            raise ValueError("entry_range must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.mode not in _HUNT_MODES:
            raise ValueError(f"mode must be one of {_HUNT_MODES}, got {self.mode!r}")

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "entry_range": self.entry_range,
            "count": self.count,
            "budget": self.budget,
            "seed": self.seed,
            "mode": self.mode,
            "exponent_range": self.exponent_range,
        }


def _draw_integer_matrix(rng: random.Random, n: int, bound: int) -> RationalMatrix:
    return RationalMatrix(
        tuple(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(n))
    )


def generate_candidates(cfg: HuntConfig):
    """Yield the candidate stream for ``cfg`` (deterministic in cfg.seed)."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.count):
        if cfg.mode == "all":
            yield _draw_integer_matrix(rng, cfg.dimension, cfg.entry_range)
        elif cfg.mode == "nonsingular":
            while True:
                candidate = _draw_integer_matrix(rng, cfg.dimension, cfg.entry_range)
                if determinant(candidate) != 0:
                    yield candidate
                    break
        else:  # spd: B^T B + I is symmetric positive definite with integer entries
            factor = _draw_integer_matrix(rng, cfg.dimension, cfg.entry_range)
            yield mat_mul(factor.transpose(), factor) + RationalMatrix.identity(cfg.dimension)


def hunt(cfg: HuntConfig, symbolic_max_dim: int | None = None) -> list[RefutationReport]:
    """Run verify_refutation over the candidate stream; keep non-consistent reports.

    Candidates are processed in stream order and each one's sampling seed
    is derived from (cfg.seed, index), so the report list is identical
    across runs with the same config.
    """
    reports = []
    for index, candidate in enumerate(generate_candidates(cfg)):
        report = verify_refutation(
            candidate,
            budget=cfg.budget,
            seed=cfg.seed * 1_000_003 + index,
            exponent_range=cfg.exponent_range,
            symbolic_max_dim=symbolic_max_dim,
        )
        if report.verdict.kind is not VerdictKind.CONSISTENT:
            reports.append(report)
    return reports
